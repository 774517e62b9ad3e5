#pragma once

#include "jxfrft/config.hpp"
#include "jxfrft/table.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace jxfrft::cli {

/// Everything a command produced. tables.front() is the primary table.
struct CommandResult {
    json document;
    std::vector<io::Table> tables;
    /// Human-readable notes for stderr (e.g. calibration constants).
    std::vector<std::string> log;
};

CommandResult run_lattice(const RunConfig& cfg);
CommandResult run_transform(const RunConfig& cfg);
CommandResult run_biphoton(const RunConfig& cfg);
CommandResult run_continuum(const RunConfig& cfg);

CommandResult run(const RunConfig& cfg);

/// Paths written for a CSV result: the primary table goes to `path`, every
/// other table to "<stem>.<table>.csv" next to it.
std::vector<std::string> csv_paths(const std::string& path, const CommandResult& result);

/// Writes the result per cfg.output. Without a path, JSON (or the primary CSV
/// table) goes to `out`. Returns the files written.
std::vector<std::string> emit(const CommandResult& result, const OutputSpec& output, std::ostream& out);

/// Full CLI entry: returns the process exit code (0 ok, 2 usage/config, 3 numeric).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace jxfrft::cli
