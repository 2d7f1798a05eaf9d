#pragma once

#include "cpfcli/registry.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

// Parameter sweeps over one or two axes, written as CSV. Config files
// are 'key = value' lines ('#' comments); keys are either control words
// (application, sweep, start, stop, points, scale, sweep2, start2,
// stop2, points2, scale2, quantities, out, constrain, note) or parameter
// names of the chosen application. Re-running the same spec writes a
// byte-identical file: evaluation is chunk-parallel but rows are
// assembled by grid index.

namespace cpf::cli {

struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    bool log_scale = false;
};

// 'constrain = A * B = c': at each grid point A is set to c / B. Lets a
// sweep hold an energy product fixed while an axis varies.
struct ProductConstraint {
    std::string derived;
    std::string source;
    double product = 0.0;
};

struct SweepSpec {
    Application application = Application::reading;
    std::map<std::string, double> fixed;
    SweepAxis sweep;
    std::optional<SweepAxis> sweep2;
    std::optional<ProductConstraint> constraint;
    std::vector<std::string> quantities;
    std::string output_path = "sweep.csv";
    std::vector<std::string> notes; // extra '#' header lines
    std::string preset_name;        // set by figure presets
};

// Grid values of one axis; log axes are spaced uniformly in ln.
std::vector<double> axis_values(const SweepAxis& a);

SweepSpec parse_config_file(const std::string& path);

// One 'key = value' override (the --set flag); same key set as the file.
void apply_override(SweepSpec& spec, const std::string& assignment);

// Throws ConfigError on any invalid field; called by run_sweep.
void validate_spec(const SweepSpec& spec);

struct SweepSummary {
    std::string output_path;
    std::size_t rows = 0;
    std::vector<std::string> clamp_reports;
    std::vector<std::string> mc_reports;

    // "wrote fig2b.csv: 61 rows; no clamped bounds; no Monte Carlo columns"
    std::string one_line() const;
};

SweepSummary run_sweep(const SweepSpec& spec);

} // namespace cpf::cli
