#pragma once

#include <filesystem>

#include "subharm/probes.hpp"

namespace subharm {

/// One entry of a suite config:
/// {"id": ..., "params": {...}, "family": {...}, "scales": [...], "seed": n}
/// with optional "group", "n" and "generators" overriding the suite's.
struct ProbeConfig {
  std::string id;
  HoermanderSystem system;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json family = nlohmann::json::object();
  std::vector<double> scales;
  std::uint64_t seed = 0;
  int line = 0;
};

struct SuiteConfig {
  std::vector<ProbeConfig> probes;
};

/// Known probe ids.
const std::vector<std::string>& probe_ids();
/// Theorem tags a complete suite must report on.
const std::vector<std::string>& theorem_tags();

/// Errors carry the 1-based line of the offending text or probe object.
SuiteConfig parse_suite(const std::string& text);
SuiteConfig load_suite(const std::filesystem::path& path);

/// Dispatches on the id; most ids yield one report, some several.
std::vector<ProbeReport> run_probe(const ProbeConfig& config);

struct SuiteResult {
  std::vector<ProbeReport> reports;
  /// Any asserted series grew or broke a limit.
  bool growth_detected() const;
  nlohmann::json to_json() const;
  std::string records_csv() const;
  /// One line per theorem tag, then one per report with its runtime.
  std::string summary() const;
};

SuiteResult run_suite(const SuiteConfig& config);

/// Writes report.json, records.csv and summary.txt.
void write_bundle(const SuiteResult& result, const std::filesystem::path& dir);

}  // namespace subharm
