#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "autores/experiments.hpp"
#include "autores/integrator.hpp"

namespace autores {

/// Free-form `# key=value` lines written before the header row.
using RunMetadata = std::vector<std::pair<std::string, std::string>>;

inline constexpr const char* kRunHeader = "t,re_A,im_A,re_B,im_B,abs_A,abs_B";

/// Comma-separated run table, one row per sample, 17 significant digits.
/// Samples must hold (Re A, Im A, Re B, Im B).
void write_run(const Trajectory& traj, std::ostream& out, const RunMetadata& meta = {});

/// Throws IoError carrying the path when the file cannot be written.
void emit_run(const Trajectory& traj, const std::string& path, const RunMetadata& meta = {});

/// Parses a table produced by write_run; comment lines are skipped.
/// Throws IoError on unreadable files or malformed rows.
Trajectory read_run(const std::string& path);

/// Reads an INI file with optional sections [run], [integrator] and
/// [capture]; keys absent from the file keep the values already in cfg and
/// criteria. Throws IoError when the file is unreadable or malformed.
void load_run_config(const std::string& path, RunConfig& cfg, CaptureCriteria& criteria);

}  // namespace autores
