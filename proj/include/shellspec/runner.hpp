#pragma once

#include <filesystem>
#include <string>

#include "shellspec/config.hpp"

namespace shellspec {

/// Dispatches the configured task and writes its output files into
/// config.output_dir (created if missing). Writes are atomic: temp file in
/// the target directory, then rename. Throws ValidationError /
/// NumericalError; the CLI maps those to exit codes 2 / 3.
void run(const ExperimentConfig& config);

/// Atomic text write (temp + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// "%.17g" formatting used by every CSV emitter.
std::string format_double(double x);

} // namespace shellspec
