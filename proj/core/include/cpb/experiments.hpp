#pragma once

#include <string>
#include <vector>

#include "cpb/cli_io.hpp"

namespace cpb {

struct ExperimentOutput {
  std::vector<std::string> files;  // paths written, CSV first
  ResultTable table;               // primary data table
};

/// Runs the configured experiment preset and writes
/// <experiment>_<hash>.csv/.svg under cfg.output_dir.
ExperimentOutput run_experiment(const RunConfig& cfg);

/// In-memory variants, one per preset. Used by run_experiment and directly
/// by tests.
ResultTable spectrum_table(const RunConfig& cfg);
ResultTable one_tone_table(const RunConfig& cfg);
ResultTable two_tone_table(const RunConfig& cfg);
ResultTable otto_sweep_table(const RunConfig& cfg);
ResultTable filter_table(const RunConfig& cfg);

}  // namespace cpb
