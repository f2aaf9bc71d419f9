#pragma once

#include <map>
#include <string>
#include <vector>

#include "fraclab/norms.hpp"

namespace fraclab {

/// Experiment driver configuration. Every field can come from a flat
/// key=value config file and be overridden from the command line.
struct ExperimentConfig {
    std::string experiment; // matrix-limits | ball-validate | pointwise-limits
                            // | rate-study | parabolic-study
    double a = -1.0;
    double b = 1.0;
    int n = 0;                  // 0 -> per-experiment default
    std::vector<double> s_grid; // empty -> per-experiment default
    std::string rhs;            // constant | sinpix2 | piecewise | mollified
    double dt = 1e-3;
    double T = 0.5;
    std::string out = "out";
    unsigned long seed = 0;

    void validate() const;
};

/// Reads a flat UTF-8 key=value file ('#' comments, blank lines allowed).
/// Unknown keys are errors. Keys: a, b, n, s_grid, rhs, dt, T, out, seed.
ExperimentConfig load_config(const std::string& path, const std::string& experiment);

/// Parses an s-grid spec: either an explicit comma list "0.5,0.75,0.9"
/// (strictly increasing, inside (0,1)) or "log1ms:<lo>,<hi>,<count>" for
/// count values of s with 1-s log-spaced in [lo,hi], returned ascending.
std::vector<double> parse_s_grid(const std::string& text);

/// Outcome of one experiment: a verdict per checked criterion plus the
/// headline metrics. Serialization is deterministic given config + seed;
/// wall time is reported on stdout only.
struct RunSummary {
    struct Check {
        std::string name; // metric name written to summary.txt
        double value;
        bool pass;
    };
    std::string experiment;
    std::vector<Check> checks;
    double wall_seconds = 0.0;

    bool all_pass() const;
};

RunSummary run_matrix_limits(const ExperimentConfig& cfg);
RunSummary run_ball_validate(const ExperimentConfig& cfg);
RunSummary run_pointwise_limits(const ExperimentConfig& cfg);
RunSummary run_parabolic_study(const ExperimentConfig& cfg);

/// Rate study: for each s in the grid solves the fractional problem,
/// compares against the classical FE solution of the same load on the same
/// mesh, and fits the log-log slope of the H^s error against 1-s.
RunSummary run_rate_study(const ExperimentConfig& cfg, ConvergenceReport* report = nullptr);

/// Dispatches on cfg.experiment, writes <out>/<experiment>.dat, .csv and
/// appends the verdict lines to <out>/summary.txt.
RunSummary run_experiment(const ExperimentConfig& cfg);

} // namespace fraclab
