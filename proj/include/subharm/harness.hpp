#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "subharm/norms.hpp"

namespace subharm {

enum class FamilyKind { random, heat, characters, dirichlet_block, single_frequency };

/// Band-limited test functions. Generation is deterministic and nested: the
/// members at a larger band restrict to the members at a smaller band wherever
/// the member exists at both.
///
/// random: `count` members with independent standard complex Gaussian entries
/// scaled by d^{-1/2}, then filtered by (1 + L_G)^{-smoothness/2}.
/// heat: heat kernels e^{-t L} for each t in `times`, L the chosen base operator.
/// characters: chi_xi for the listed classes (all classes when empty).
/// dirichlet_block: sum of d chi over each listed sharp block of the Laplacian
/// (all blocks when empty), plus the full Dirichlet kernel of the band.
/// single_frequency: one exponential e^{ik.x} (torus, entries [k...]) or one
/// matrix entry xi_ab (su2, entries [2l, a, b]); by default every torus
/// frequency, and on su2 the entries with m = l and m = 0 (or 1/2) of every spin.
struct TestFamily {
  FamilyKind kind = FamilyKind::random;
  HoermanderSystem system;
  int count = 4;
  std::uint64_t seed = 0;
  double smoothness = 0.0;
  std::vector<double> times{1.0, 0.25, 0.0625};
  BaseOperator op = BaseOperator::sublaplacian;
  std::vector<std::vector<int>> entries;
  std::vector<int> blocks;

  std::vector<FourierCoefficients> generate(double band) const;

  std::string name() const;
  nlohmann::json to_json() const;
  /// `seed` is the probe seed; the object may override it.
  static TestFamily from_json(const nlohmann::json& j, const HoermanderSystem& system, std::uint64_t seed);
};

enum class Verdict { bounded, growth_detected, inconclusive };
std::string to_string(Verdict v);

/// asserted: the inequality claims this series is bounded. guard: the reverse
/// direction of a strict-loss inequality, expected to grow. info: reported only.
enum class SeriesKind { asserted, guard, info };
std::string to_string(SeriesKind k);

struct ScaleRecord {
  double scale = 0;
  double value = 0;
  int family_size = 0;
};

/// Per-scale empirical constants of one ratio. Exact inequalities carry limits;
/// a record outside [low, high] marks the series as violated.
struct Series {
  std::string name;
  SeriesKind kind = SeriesKind::asserted;
  std::vector<ScaleRecord> records;
  double low = -std::numeric_limits<double>::infinity();
  double high = std::numeric_limits<double>::infinity();

  bool violated() const;
  /// bounded: at least three scales and the last three vary by < 25%.
  /// growth_detected: a limit is violated, or the values increase through the
  /// ladder with last/first >= 1.25. Otherwise inconclusive.
  Verdict verdict() const;
};

constexpr double kBoundedDrift = 0.25;
constexpr double kGrowthFactor = 1.25;

struct ProbeReport {
  std::string id;
  std::string tag;
  nlohmann::json params = nlohmann::json::object();
  std::string family;
  std::vector<Series> series;
  nlohmann::json extra = nlohmann::json::object();
  double runtime_seconds = 0;

  /// growth_detected when an asserted series grows or breaks a limit; bounded
  /// when every asserted series is bounded; otherwise inconclusive.
  Verdict verdict() const;
  const Series& find(const std::string& name) const;

  /// Runtime is left out so reports are byte-identical across runs.
  nlohmann::json to_json() const;
  std::string csv_rows() const;
};

std::string records_csv_header();

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace subharm
