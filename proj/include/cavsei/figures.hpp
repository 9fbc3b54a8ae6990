// figures.hpp — preset data-set generators behind the `reproduce` command
#pragma once

#include <string>
#include <vector>

#include "cavsei/output.hpp"
#include "cavsei/sweep.hpp"

namespace cavsei::figures {

// fig2a..fig2f, fig3, fig4abc, fig4d..fig4h
std::vector<std::string> figure_tags();

struct FigureOptions {
    int points = 0;  // grid points per axis; 0 → preset default
    int slices = 0;  // fig3 δ-slices; 0 → preset default
    int cutoff = 0;  // photon cutoff; 0 → 7
    int threads = 1;
};

struct FigureRun {
    std::string tag;
    // main table under "", auxiliary tables under a suffix ("tau", "ptilde")
    std::vector<std::pair<std::string, output::Table>> tables;
    output::Metadata metadata;
    std::string summary; // headline scalar line for stdout
    bool clean = true;   // false when any row carries an error or failed convergence
};

FigureRun run_figure(const std::string& tag, const FigureOptions& opt = {});

// specs and points the presets are built from, shared with the acceptance suite
sweep::SweepSpec fig2e_spec(int points = 121);
sweep::SweepSpec fig4d_spec(int points = 61);
sweep::SweepSpec fig4e_spec(int points = 61);
model::ModelParams fig2f_point();
model::ModelParams fig4h_point();

// 1-point sweep wrapper around fully resolved params (delta and gamma_e taken
// as given)
sweep::SweepSpec point_spec(const model::ModelParams& p,
                            std::vector<sweep::Observable> observables, int cutoff = 7);

// uniform [0, max_over_kappa/κ] grid with `points` entries
std::vector<double> tau_grid(double kappa, double max_over_kappa, int points);

} // namespace cavsei::figures
