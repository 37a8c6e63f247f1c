#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "kinex/config.hpp"
#include "kinex/report.hpp"

namespace kinex {

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string contents;
};

struct ExperimentResult {
  RunReport report;
  std::vector<OutputFile> files;  // report file last
  double duration_seconds = 0.0;
};

// Validates `config`, runs the requested mode and renders every output file
// in memory. Nothing touches the filesystem except reading `config.input`.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes all files into `dir` (created if missing). Each file goes to a
// temporary name first; on any failure every file written so far is removed
// and ConfigError is thrown.
void write_outputs(const std::string& dir, const std::vector<OutputFile>& files);

// Runs tasks 0..count-1 on at most `threads` workers (0: hardware
// concurrency). Exceptions are rethrown on the calling thread, lowest task
// index first.
void run_parallel(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task);

// Whitespace-, comma- or newline-separated numbers; `#` starts a comment.
std::vector<double> parse_samples(std::string_view text);

}  // namespace kinex
