#pragma once

#include <map>
#include <string>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

// Flat experiment configuration: documented keys only, unknown keys are
// errors. The CLI flags and config files populate the same map, so a config
// file alone reproduces any run.
using ExperimentConfig = std::map<std::string, std::string>;

// Parses `key = value` lines; '#' starts a comment. Later files/flags may
// override earlier keys.
ExperimentConfig load_config_file(const std::string& path);

// Runs the experiment selected by cfg["command"] and returns the CSV payload
// (deterministic for a fixed config, byte for byte).
std::string run_experiment_to_csv(const ExperimentConfig& cfg);

// Runs and writes cfg["out"] (or stdout when absent) plus a run manifest
// `<out>.manifest` echoing the config.
void run_experiment(const ExperimentConfig& cfg);

// Reshapes an experiment CSV into (x, y, y_lo, y_hi) plot series by grouping
// rows on the x column and averaging the y column across replicas.
std::string emit_plotdata(const std::string& csv_text, const std::string& x_column,
                          const std::string& y_column);

FiniteGraph graph_from_config(const ExperimentConfig& cfg);

}  // namespace percolab
