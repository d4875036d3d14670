// Acceptance checks: one PASS/FAIL line per criterion, tolerances fixed here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "subharm/pseudodiff.hpp"
#include "subharm/suite.hpp"

using namespace subharm;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Criterion 1
constexpr int kRoundTripInputs = 50;
constexpr double kRoundTripBand = 16.0;
constexpr double kRoundTripTol = 1e-10;
constexpr double kRoundTripSeconds = 30.0;
// Criterion 2
constexpr int kOracleInputs = 20;
constexpr double kOracleBand = 12.0;
constexpr double kOracleTol = 1e-10;
// Criterion 3
constexpr int kSymbolMaxTwiceSpin = 20;
constexpr double kSymbolTol = 1e-5;
// Criterion 5
constexpr int kSandwichMaxTwiceSpin = 40;
constexpr double kSandwichMinC = 0.5;
// Criterion 6
constexpr int kEmbeddingInputs = 10;
constexpr double kMonotoneTol = 1e-12;
constexpr double kSandwichTol = 1e-10;
// Criterion 7
constexpr int kEquivalenceInputs = 50;
// Criterion 8
constexpr double kNikolskiiSlopeTol = 0.3;
constexpr double kNikolskiiSeconds = 300.0;
// Criterion 10
constexpr double kDecayTol = 0.2;
// Criterion 11
constexpr double kSuiteSeconds = 900.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

FourierCoefficients random_coefficients(const CompactGroup& g, double cutoff, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  FourierCoefficients c(g, cutoff);
  for (auto& b : c.blocks)
    for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = cplx(n(rng), n(rng));
  return c;
}

double max_diff(const FourierCoefficients& a, const FourierCoefficients& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, (a.blocks[i] - b.blocks[i]).cwiseAbs().maxCoeff());
  return m;
}

void round_trip() {
  const auto t0 = Clock::now();
  double worst_trip = 0.0, worst_parseval = 0.0;
  for (const auto& g : {CompactGroup::su2(), CompactGroup::torus(1), CompactGroup::torus(2)}) {
    const auto grid = QuadratureGrid::get(g, kRoundTripBand);
    for (int i = 0; i < kRoundTripInputs; ++i) {
      const auto c = random_coefficients(g, kRoundTripBand, 1000 + static_cast<std::uint64_t>(i));
      const auto f = inverse_transform(c, grid);
      const auto back = forward_transform(f, kRoundTripBand);
      const auto again = inverse_transform(back, grid);
      const double scale = std::max(1.0, f.samples.cwiseAbs().maxCoeff());
      worst_trip = std::max(worst_trip, (again.samples - f.samples).cwiseAbs().maxCoeff() / scale);
      worst_trip = std::max(worst_trip, max_diff(back, c));
      const double l2 = std::sqrt((grid->weights().array() * f.samples.array().abs2()).sum());
      worst_parseval = std::max(worst_parseval, std::abs(plancherel_norm(back) - l2) / l2);
    }
  }
  const double t = seconds_since(t0);
  report(1, worst_trip <= kRoundTripTol && worst_parseval <= kRoundTripTol && t < kRoundTripSeconds,
         fmt("round trip %.2e, Parseval %.2e, %.1f s (su2, torus(1), torus(2), band 16)", worst_trip, worst_parseval, t));
}

// Independent scalar Fourier series on the circle.
namespace scalar {

using Series = std::vector<cplx>;  // index k + K

double bracket(int k) { return std::sqrt(1.0 + static_cast<double>(k) * k); }

double profile(double t) {
  auto h = [](double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; };
  const double a = h(2 - std::abs(t)), b = h(std::abs(t) - 1);
  return a / (a + b);
}

double psi(int j, double mu, bool smooth) {
  if (!smooth) {
    const double lo = std::ldexp(1.0, j), hi = std::ldexp(1.0, j + 1);
    return mu >= lo * (1 - 1e-9) && mu < hi * (1 - 1e-9) ? 1.0 : 0.0;
  }
  if (j == 0) return profile(mu);
  return profile(std::ldexp(mu, -j)) - profile(std::ldexp(mu, 1 - j));
}

std::vector<cplx> synth(const Series& c, int n) {
  const int K = static_cast<int>(c.size() / 2);
  std::vector<cplx> out(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    cplx s = 0;
    for (int k = -K; k <= K; ++k) s += c[static_cast<size_t>(k + K)] * std::exp(cplx(0, 2 * pi * k * j / n));
    out[static_cast<size_t>(j)] = s;
  }
  return out;
}

Series analyze(const std::vector<cplx>& f, int K) {
  const int n = static_cast<int>(f.size());
  Series c(static_cast<size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    cplx s = 0;
    for (int j = 0; j < n; ++j) s += f[static_cast<size_t>(j)] * std::exp(cplx(0, -2 * pi * k * j / n));
    c[static_cast<size_t>(k + K)] = s / static_cast<double>(n);
  }
  return c;
}

Series multiply(const Series& c, const std::function<double(int)>& m) {
  const int K = static_cast<int>(c.size() / 2);
  Series out = c;
  for (int k = -K; k <= K; ++k) out[static_cast<size_t>(k + K)] *= m(k);
  return out;
}

double power_mean(const std::vector<double>& v, double p) {
  if (std::isinf(p)) {
    double m = 0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  double s = 0;
  for (double x : v) s += std::pow(x, p);
  return std::pow(s / static_cast<double>(v.size()), 1.0 / p);
}

double lq(const std::vector<double>& v, double q) {
  if (std::isinf(q)) {
    double m = 0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  double s = 0;
  for (double x : v) s += std::pow(x, q);
  return std::pow(s, 1.0 / q);
}

std::vector<std::vector<double>> weighted_blocks(const Series& c, double s, bool smooth, int n) {
  std::vector<std::vector<double>> out;
  for (int j = 0; j < 12; ++j) {
    const auto block = multiply(c, [&](int k) { return psi(j, bracket(k), smooth); });
    const auto f = synth(block, n);
    std::vector<double> a(f.size());
    for (size_t i = 0; i < f.size(); ++i) a[i] = std::pow(2.0, j * s) * std::abs(f[i]);
    out.push_back(std::move(a));
  }
  return out;
}

double besov(const Series& c, double s, double p, double q, bool smooth, int n) {
  std::vector<double> per_block;
  for (const auto& a : weighted_blocks(c, s, smooth, n)) per_block.push_back(power_mean(a, p));
  return lq(per_block, q);
}

double triebel(const Series& c, double s, double p, double q, bool smooth, int n) {
  const auto blocks = weighted_blocks(c, s, smooth, n);
  std::vector<double> pointwise(static_cast<size_t>(n));
  for (size_t x = 0; x < pointwise.size(); ++x) {
    std::vector<double> v;
    for (const auto& b : blocks) v.push_back(b[x]);
    pointwise[x] = lq(v, q);
  }
  return power_mean(pointwise, p);
}

}  // namespace scalar

double series_diff(const FourierCoefficients& c, const scalar::Series& o) {
  const int K = static_cast<int>(o.size() / 2);
  double m = 0;
  for (size_t i = 0; i < c.size(); ++i)
    m = std::max(m, std::abs(c.blocks[i](0, 0) - o[static_cast<size_t>(c.indices[i].k[0] + K)]));
  return m;
}

void torus_oracle() {
  const auto t1 = CompactGroup::torus(1);
  const auto system = HoermanderSystem::full(t1);
  const int K = max_frequency(kOracleBand);
  const auto grid = QuadratureGrid::get(t1, kOracleBand);
  const auto eval_grid = QuadratureGrid::get(t1, scaled_cutoff(kOracleBand, 2));
  const NormEvaluator eval(system, kOracleBand, eval_grid);
  const int n_eval = eval_grid->points_per_axis();
  const auto lap = laplacian_symbol(t1, kOracleBand);
  double worst = 0.0;
  for (int i = 0; i < kOracleInputs; ++i) {
    std::mt19937_64 rng(2000 + static_cast<std::uint64_t>(i));
    std::normal_distribution<double> nd;
    scalar::Series c(static_cast<size_t>(2 * K + 1));
    for (auto& v : c) v = cplx(nd(rng), nd(rng));

    // Transform of samples of the scalar series.
    const auto f = sample(grid, [&](const GroupPoint& x) {
      cplx s = 0;
      for (int k = -K; k <= K; ++k) s += c[static_cast<size_t>(k + K)] * std::exp(cplx(0, k * x.x(0)));
      return s;
    });
    const auto fc = forward_transform(f, kOracleBand);
    const auto oracle_fc = scalar::analyze(scalar::synth(c, grid->points_per_axis()), K);
    worst = std::max(worst, series_diff(fc, oracle_fc));
    worst = std::max(worst, series_diff(fc, c));

    for (double s : {-2.0, -1.0, 0.5, 3.0}) {
      const auto mine = apply_multiplier(bessel_potential_symbol(lap, s), fc);
      const auto ref = scalar::multiply(oracle_fc, [s](int k) { return std::pow(1.0 + double(k) * k, s / 2); });
      worst = std::max(worst, series_diff(mine, ref) / std::pow(1.0 + double(K) * K, std::max(0.0, s / 2)));
    }
    for (bool smooth : {false, true}) {
      const DyadicPartition part{smooth ? PartitionMode::smooth : PartitionMode::sharp};
      for (int j = 0; j <= part.last_block(kOracleBand); ++j) {
        const auto mine = apply_multiplier(dyadic_projection_symbol(lap, j, part), fc);
        const auto ref = scalar::multiply(oracle_fc, [&](int k) { return scalar::psi(j, scalar::bracket(k), smooth); });
        worst = std::max(worst, series_diff(mine, ref));
      }
      const auto mode = part.mode;
      for (double s : {-1.0, 0.5})
        for (double p : {1.5, 2.0, 4.0})
          for (double q : {1.0, 2.0, kInf}) {
            const double b = eval.besov(fc, NormSpec::besov(s, p, q, BaseOperator::laplacian, mode));
            const double bo = scalar::besov(oracle_fc, s, p, q, smooth, n_eval);
            const double t = eval.triebel(fc, NormSpec::triebel(s, p, q, BaseOperator::laplacian, mode));
            const double to = scalar::triebel(oracle_fc, s, p, q, smooth, n_eval);
            worst = std::max({worst, std::abs(b - bo) / bo, std::abs(t - to) / to});
          }
    }
  }
  report(2, worst <= kOracleTol,
         fmt("max deviation %.2e over %g inputs (transform, Bessel, sharp/smooth blocks, B and F norms)", worst,
             kOracleInputs));
}

// -sum_j (d/dt)^2 D(exp(t X_j)) at t = 0, by Richardson-extrapolated central differences.
CMatrix finite_difference_sublaplacian(const CompactGroup& g, const DualIndex& xi) {
  const CMatrix id = CMatrix::Identity(xi.dim, xi.dim);
  auto second = [&](int j, double h) {
    const CMatrix p = representation_matrix(g, xi, exp_generator(g, j, h));
    const CMatrix m = representation_matrix(g, xi, exp_generator(g, j, -h));
    return CMatrix((p - 2.0 * id + m) / (h * h));
  };
  CMatrix acc = CMatrix::Zero(xi.dim, xi.dim);
  const double h = 2e-3;
  for (int j : {1, 2}) acc -= (4.0 * second(j, h / 2) - second(j, h)) / 3.0;
  return acc;
}

void sublaplacian_symbol_check() {
  const auto su2 = CompactGroup::su2();
  const auto system = HoermanderSystem::make(su2, {1, 2});
  const auto top = spin_index(kSymbolMaxTwiceSpin);
  const auto sym = sublaplacian_symbol(system, top.weight * (1 + 1e-9));
  double worst_fd = 0.0, worst_formula = 0.0;
  for (size_t i = 0; i < sym.size(); ++i) {
    const auto& xi = sym.indices[i];
    worst_fd = std::max(worst_fd, (finite_difference_sublaplacian(su2, xi) - sym.blocks[i]).cwiseAbs().maxCoeff());
    CMatrix expected = CMatrix::Zero(xi.dim, xi.dim);
    for (int r = 0; r < xi.dim; ++r) {
      const double m = xi.spin() - r;
      expected(r, r) = xi.lambda - m * m;
    }
    worst_formula = std::max(worst_formula, (expected - sym.blocks[i]).cwiseAbs().maxCoeff());
  }
  report(3, worst_fd <= kSymbolTol && worst_formula <= kSymbolTol,
         fmt("spins <= %g: |symbol - finite differences| %.2e, |symbol - (l(l+1) - m^2)| %.2e",
             kSymbolMaxTwiceSpin / 2.0, worst_fd, worst_formula));
}

void hausdorff_data() {
  const auto su2 = HoermanderSystem::make(CompactGroup::su2(), {1, 2});
  bool ok = su2.hausdorff_dim == 4 && su2.step == 2;
  std::string detail = "su2 {X1,X2}: (Q,k) = (" + std::to_string(su2.hausdorff_dim) + "," + std::to_string(su2.step) + ")";
  for (int n = 1; n <= 4; ++n) {
    const auto t = HoermanderSystem::full(CompactGroup::torus(n));
    ok = ok && t.hausdorff_dim == n && t.step == 1;
    detail += "; torus(" + std::to_string(n) + "): (" + std::to_string(t.hausdorff_dim) + "," + std::to_string(t.step) + ")";
  }
  report(4, ok, detail);
}

void eigenvalue_sandwich() {
  const auto system = HoermanderSystem::make(CompactGroup::su2(), {1, 2});
  const auto sym = sublaplacian_symbol(system, spin_index(kSandwichMaxTwiceSpin).weight * (1 + 1e-9));
  const auto dec = SpectralDecomposition::of(sym);
  bool upper = true;
  double c = kInf;
  for (size_t i = 0; i < sym.size(); ++i) {
    const double w = sym.indices[i].weight;
    upper = upper && std::sqrt(1 + dec.values[i].maxCoeff()) <= std::sqrt(2.0) * w;
    c = std::min(c, std::sqrt(1 + dec.values[i].minCoeff()) / std::sqrt(w));
  }
  report(5, upper && c > kSandwichMinC,
         fmt("spins <= %g: upper bound ", kSandwichMaxTwiceSpin / 2.0) + (upper ? "holds" : "fails") +
             fmt(", c = %.4f", c));
}

void exact_embeddings() {
  double worst_mono = 0.0, worst_sandwich = 0.0;
  const auto ratio_excess = [](double big, double small) { return std::max(0.0, small / big - 1.0); };
  for (const auto& system : {HoermanderSystem::make(CompactGroup::su2(), {1, 2}),
                             HoermanderSystem::full(CompactGroup::torus(1))}) {
    const double band = 8.0;
    const NormEvaluator eval(system, band, QuadratureGrid::get(system.group, scaled_cutoff(band, 2)));
    const auto op = BaseOperator::sublaplacian;
    for (int i = 0; i < kEmbeddingInputs; ++i) {
      const auto c = random_coefficients(system.group, band, 3000 + static_cast<std::uint64_t>(i));
      for (double p : {1.5, 2.0, 4.0}) {
        const std::vector<double> qs{1.0, 2.0, 3.0, kInf};
        for (size_t k = 0; k + 1 < qs.size(); ++k)
          worst_mono = std::max(worst_mono, ratio_excess(eval.besov(c, NormSpec::besov(0.5, p, qs[k], op)),
                                                         eval.besov(c, NormSpec::besov(0.5, p, qs[k + 1], op))));
        for (double r : {-1.0, 0.0, 0.5})
          worst_mono = std::max(worst_mono, ratio_excess(eval.besov(c, NormSpec::besov(r + 0.25, p, 2, op)),
                                                         eval.besov(c, NormSpec::besov(r, p, 2, op))));
        for (double q : {1.0, 2.0, 4.0}) {
          const double f = eval.triebel(c, NormSpec::triebel(0.3, p, q, op));
          const double lo = eval.besov(c, NormSpec::besov(0.3, p, std::max(p, q), op));
          const double hi = eval.besov(c, NormSpec::besov(0.3, p, std::min(p, q), op));
          worst_sandwich = std::max({worst_sandwich, ratio_excess(f, lo), ratio_excess(hi, f)});
        }
        const double fpp = eval.triebel(c, NormSpec::triebel(0.3, p, p, op));
        const double bpp = eval.besov(c, NormSpec::besov(0.3, p, p, op));
        worst_sandwich = std::max(worst_sandwich, std::abs(fpp - bpp) / bpp);
      }
    }
  }
  report(6, worst_mono <= kMonotoneTol && worst_sandwich <= kSandwichTol,
         fmt("monotonicity excess %.2e, B/F sandwich and F_pp = B_pp deviation %.2e", worst_mono, worst_sandwich));
}

void sobolev_besov_equivalence() {
  const auto system = HoermanderSystem::make(CompactGroup::su2(), {1, 2});
  const double band = 12.0;
  const NormEvaluator eval(system, band, QuadratureGrid::get(system.group, band));
  double worst = 0.0;
  double lo_seen = kInf, hi_seen = 0.0;
  for (int i = 0; i < kEquivalenceInputs; ++i) {
    const auto c = random_coefficients(system.group, band, 4000 + static_cast<std::uint64_t>(i));
    for (double s : {-2.0, -1.0, 1.0, 2.0}) {
      const double ratio = eval.sobolev(c, NormSpec::sobolev(s, 2, BaseOperator::sublaplacian)) /
                           eval.besov(c, NormSpec::besov(s, 2, 2, BaseOperator::sublaplacian));
      const double lo = std::min(1.0, std::pow(2.0, s)), hi = std::max(1.0, std::pow(2.0, s));
      worst = std::max({worst, lo / ratio - 1.0, ratio / hi - 1.0});
      lo_seen = std::min(lo_seen, ratio / lo);
      hi_seen = std::max(hi_seen, ratio / hi);
    }
  }
  report(7, worst <= 1e-12,
         fmt("su2, 50 inputs: ratio/lower >= %.4f, ratio/upper <= %.4f", lo_seen, hi_seen));
}

TestFamily family(FamilyKind kind, const HoermanderSystem& system) {
  return TestFamily{kind, system, 4, 0, 0.0, {1.0, 0.25, 0.0625}, BaseOperator::sublaplacian, {}, {}};
}

void nikolskii() {
  const auto t0 = Clock::now();
  const auto torus = probe_nikolskii(family(FamilyKind::dirichlet_block, HoermanderSystem::full(CompactGroup::torus(1))),
                                     {2.0, 4.0}, {4, 8, 16, 32, 64});
  const auto su2 = probe_nikolskii(
      family(FamilyKind::dirichlet_block, HoermanderSystem::make(CompactGroup::su2(), {1, 2})), {2.0, 4.0}, {2, 3, 4, 5});
  const double t = seconds_since(t0);
  const double slope = torus.extra.at("fitted_exponent").get<double>();
  const auto& recs = su2.find("constant").records;
  double drift = kInf;
  if (recs.size() >= 3) {
    double lo = kInf, hi = 0;
    for (size_t i = recs.size() - 3; i < recs.size(); ++i) {
      lo = std::min(lo, recs[i].value);
      hi = std::max(hi, recs[i].value);
    }
    drift = hi / lo - 1.0;
  }
  const bool ok = std::abs(slope - 0.25) <= kNikolskiiSlopeTol && torus.verdict() == Verdict::bounded &&
                  su2.verdict() == Verdict::bounded && drift < kBoundedDrift && t < kNikolskiiSeconds;
  report(8, ok,
         "torus(1) exponent " + fmt("%.3f", slope) + " (" + to_string(torus.verdict()) + "), su2 " +
             to_string(su2.verdict()) + fmt(" with drift %.1f%%, %.1f s", 100 * drift, t));
}

void comparison_theorems() {
  const auto system = HoermanderSystem::make(CompactGroup::su2(), {1, 2});
  const auto fam = family(FamilyKind::single_frequency, system);
  const ComparisonParams params{2.0, 2.0, 2.0};
  const std::vector<double> scales{4, 8, 16};
  const auto sob = probe_sobolev_comparison(fam, params, scales);
  const auto bes = probe_besov_comparison(fam, params, scales);
  bool ok = true;
  std::string detail;
  for (const auto* r : {&sob, &bes}) {
    for (const auto& name : {"sub_over_elliptic", "elliptic_target_over_sub"})
      ok = ok && r->find(name).verdict() == Verdict::bounded;
    ok = ok && r->find("elliptic_over_sub").verdict() == Verdict::growth_detected;
    detail += r->id + " " + to_string(r->verdict()) + ", guard " + to_string(r->find("elliptic_over_sub").verdict()) + "; ";
  }
  const double factor = std::pow(2.0, std::abs(params.s));
  double worst = 0.0;
  for (const auto& name : {"sub_over_elliptic", "elliptic_target_over_sub", "elliptic_over_sub"}) {
    const auto& a = sob.find(name).records;
    const auto& b = bes.find(name).records;
    ok = ok && a.size() == b.size();
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      const double r = a[i].value / b[i].value;
      worst = std::max({worst, r, 1.0 / r});
    }
  }
  ok = ok && worst <= factor;
  report(9, ok, detail + fmt("Sobolev/Besov consistency %.3f (limit %.0f)", worst, factor));
}

void symbol_order() {
  const auto system = HoermanderSystem::make(CompactGroup::su2(), {1, 2});
  const double cutoff = spin_index(40).weight * (1 + 1e-9);
  const auto sub = sublaplacian_symbol(system, cutoff);
  bool ok = true;
  std::string detail = "spins 2..20:";
  for (double s : {1.0, 2.0}) {
    const auto norms = class_operator_norms(MatrixSymbol::from_multiplier(bessel_potential_symbol(sub, -s)));
    std::vector<double> w, v;
    for (size_t i = 0; i < norms.size(); ++i)
      if (sub.indices[i].twice_spin >= 4) {
        w.push_back(sub.indices[i].weight);
        v.push_back(norms[i]);
      }
    const double slope = loglog_slope(w, v);
    ok = ok && std::abs(slope + s / 2) <= kDecayTol;
    detail += fmt(" s=%g exponent %.3f (predicted %.1f);", s, slope, -s / 2);
  }
  report(10, ok, detail);
}

void shipped_suite() {
  const auto t0 = Clock::now();
  try {
    const auto config = load_suite(SUBHARM_SUITE_CONFIG);
    const auto result = run_suite(config);
    const double t = seconds_since(t0);
    std::vector<std::string> missing;
    for (const auto& id : probe_ids()) {
      bool seen = false;
      for (const auto& r : result.reports) seen = seen || r.id == id;
      if (!seen) missing.push_back(id);
    }
    int bounded = 0;
    for (const auto& r : result.reports) bounded += r.verdict() == Verdict::bounded;
    const bool ok = !result.growth_detected() && missing.empty() && t < kSuiteSeconds;
    report(11, ok,
           fmt("%g reports, %g bounded, ", static_cast<double>(result.reports.size()), bounded) +
               (result.growth_detected() ? "growth detected" : "no growth") +
               fmt(", %g probe ids missing, %.1f s", static_cast<double>(missing.size()), t));
  } catch (const std::exception& e) {
    report(11, false, std::string("suite failed: ") + e.what());
  }
}

}  // namespace

int main() {
  round_trip();
  torus_oracle();
  sublaplacian_symbol_check();
  hausdorff_data();
  eigenvalue_sandwich();
  exact_embeddings();
  sobolev_besov_equivalence();
  nikolskii();
  comparison_theorems();
  symbol_order();
  shipped_suite();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
