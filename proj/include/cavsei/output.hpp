// output.hpp — CSV/JSON emission with a deterministic body and metadata comment block
#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cavsei/sweep.hpp"

namespace cavsei::output {

// generic rectangular result table; one optional error string per row
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;
    std::vector<std::string> errors; // empty or per-row
};

struct Metadata {
    std::vector<std::pair<std::string, std::string>> items;
    void add(const std::string& k, const std::string& v) { items.emplace_back(k, v); }
    void add(const std::string& k, double v);
};

// 9 significant digits; nan/inf render as their literal names
std::string format_g9(double x);

// sweep result → table: axis columns, scalar observables (each g followed by
// its log10 column), p_tilde columns when requested, then cutoff/converged/
// residual. Every value deterministic across thread counts.
Table to_table(const sweep::SweepResult& r);

Metadata sweep_metadata(const sweep::SweepResult& r, const std::string& command);

// '#'-prefixed "key = value" metadata lines, then a header row, then data rows;
// comma separator, error message (commas replaced) as the last column
void write_csv(std::ostream& os, const Table& t, const Metadata& m);

// {"metadata": {...}, "columns": [...], "rows": [[...], ...], "errors": [...]}
// with non-finite numbers as null
void write_json(std::ostream& os, const Table& t, const Metadata& m);

// "<command>_<UTC timestamp>.<ext>" default output name
std::string timestamped_filename(const std::string& command, bool json);

} // namespace cavsei::output
