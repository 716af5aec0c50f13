#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsecon/dynamics.hpp"
#include "tsecon/report.hpp"
#include "tsecon/scenario.hpp"
#include "tsecon/tsls.hpp"
#include "tsecon/unitroot.hpp"

namespace tsecon {

struct ManifestEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// `[pipeline]`, `[derive <series>]` or `[step <name>]` with its `key = value` lines.
struct ManifestSection {
  std::string kind;
  std::string name;
  std::vector<ManifestEntry> entries;
  int line = 0;

  const std::string* find(std::string_view key) const;
  /// Value of a required key; throws ManifestError naming the section.
  const std::string& require(std::string_view key) const;
  std::string get(std::string_view key, std::string_view fallback) const;
};

struct PipelineManifest {
  std::filesystem::path base_directory;  ///< relative dataset paths resolve against this
  std::string dataset;
  std::vector<std::string> extra;  ///< additional series files (user-supplied Benef)
  std::string output = "report";
  std::uint64_t seed = 20101231;
  std::vector<std::string> optional;
  std::vector<ManifestSection> derives;
  std::vector<ManifestSection> steps;

  const ManifestSection* step(std::string_view name) const;
  std::filesystem::path resolve(const std::string& path) const;
  /// Normalized text with resolved paths; parsing it yields the same manifest.
  std::string canonical() const;
};

PipelineManifest parse_manifest(std::string_view text, std::filesystem::path base_directory = {});
PipelineManifest load_manifest(const std::filesystem::path& path);

/// Dataset named by the manifest plus extra files and derived series.
Dataset prepare_dataset(const PipelineManifest& manifest);

// Step-spec readers, shared with the command-line subcommands.
SampleWindow parse_window(std::string_view text);
ModelSpec model_spec_from(const ManifestSection& step, bool default_constant = true);
TslsSpec tsls_spec_from(const ManifestSection& step);
ArSpec ar_spec_from(const ManifestSection& step);
CapitalScenario parse_scenario(std::string_view text, bool log_growth);

enum class StepStatus { ok, skipped, failed };

struct StepRecord {
  std::string name;
  std::string op;
  StepStatus status = StepStatus::ok;
  std::string message;
};

struct PipelineOutcome {
  ReportBundle bundle;
  std::vector<StepRecord> steps;
  int exit_code = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitManifest = 2;
inline constexpr int kExitDataset = 3;
inline constexpr int kExitStep = 4;

/// Runs every step in declaration order. Steps whose series are declared optional and
/// absent are recorded as "SKIPPED: data-unavailable"; failed steps are recorded and
/// the exit code becomes kExitStep. Throws ManifestError for unknown series, ops or keys.
PipelineOutcome run_pipeline(const PipelineManifest& manifest, const Dataset& dataset);

}  // namespace tsecon
