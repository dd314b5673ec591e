#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdlab/harness.hpp"

namespace tdlab {

/// Flat INI-style configuration: [section] headers, key = value lines,
/// comments starting with '#' or ';'. Order-preserving.
struct IniFile {
  using Entry = std::pair<std::string, std::string>;
  struct Section {
    std::string name;
    std::vector<Entry> entries;
  };
  std::vector<Section> sections;

  static IniFile parse_string(const std::string& text);
  static IniFile parse_file(const std::string& path);

  const std::string* find(const std::string& section, const std::string& key) const;
};

/// Builds a RunConfig from an INI file; unknown keys are rejected.
RunConfig run_config_from_ini(const IniFile& ini);

RunConfig load_run_config(const std::string& path);

/// Applies one "section.key = value" override (used by sweeps and CLI flags).
void apply_override(RunConfig& config, const std::string& dotted_key,
                    const std::string& value);

/// Cartesian product of the [grid] section of a sweep file: each element is
/// the list of (dotted key, value) overrides for one combination.
std::vector<std::vector<std::pair<std::string, std::string>>> sweep_grid(
    const IniFile& grid);

}  // namespace tdlab
