// types.hpp — shared aliases for the cavity-array simulator
#pragma once

#include <complex>
#include <Eigen/Dense>

namespace cavsei {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

} // namespace cavsei
