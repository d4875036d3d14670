#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "subharm/spectral.hpp"

namespace subharm {

enum class SpaceKind { lp, sobolev, besov, triebel };
enum class BaseOperator { laplacian, sublaplacian };

/// A norm on functions of the group.
///
/// String form `<kind>:<key>=<value>,...` with kind L (Lebesgue), S (Bessel
/// potential Sobolev), B (Besov) or F (Triebel-Lizorkin). Keys: p, q (reals,
/// or "inf"), s or r (the order), op (sub | lap), mode (sharp | smooth).
/// Examples: "L:p=4", "S:r=1,p=2,op=sub", "B:s=1.5,p=2,q=4,op=sub",
/// "F:r=0,p=4,q=2,op=lap".
struct NormSpec {
  SpaceKind space = SpaceKind::lp;
  double p = 2.0;
  double q = 2.0;
  double order = 0.0;
  BaseOperator op = BaseOperator::sublaplacian;
  PartitionMode mode = PartitionMode::sharp;

  /// p < 1, or q < 1 for B and F: only a quasi-norm.
  bool quasi() const;
  std::string to_string() const;
  static NormSpec parse(const std::string& text);

  static NormSpec lp(double p) { return {SpaceKind::lp, p, 2.0, 0.0}; }
  static NormSpec sobolev(double order, double p, BaseOperator op) { return {SpaceKind::sobolev, p, 2.0, order, op}; }
  static NormSpec besov(double order, double p, double q, BaseOperator op,
                        PartitionMode mode = PartitionMode::sharp) {
    return {SpaceKind::besov, p, q, order, op, mode};
  }
  static NormSpec triebel(double order, double p, double q, BaseOperator op,
                          PartitionMode mode = PartitionMode::sharp) {
    return {SpaceKind::triebel, p, q, order, op, mode};
  }
};

/// Symbols of the base operators at one cutoff, their decompositions and
/// dyadic block symbols. Shared and immutable.
struct SpectralSetup {
  HoermanderSystem system;
  double cutoff;
  MultiplierSymbol laplacian;
  MultiplierSymbol sublaplacian;
  SpectralDecomposition laplacian_dec;
  SpectralDecomposition sublaplacian_dec;

  static std::shared_ptr<const SpectralSetup> get(const HoermanderSystem& system, double cutoff);

  const MultiplierSymbol& symbol(BaseOperator op) const;
  const SpectralDecomposition& decomposition(BaseOperator op) const;
  MultiplierSymbol function_of(BaseOperator op, const ScalarFunction& g) const;
  const MultiplierSymbol& block(BaseOperator op, PartitionMode mode, int j) const;
  int last_block(PartitionMode mode) const;

 private:
  SpectralSetup(const HoermanderSystem& system, double cutoff);
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<int, int, int>, std::unique_ptr<MultiplierSymbol>> blocks_;
};

/// Evaluates norms of coefficient data. Lebesgue norms with p = 2 use
/// Plancherel; other p synthesize on the evaluation grid.
class NormEvaluator {
 public:
  NormEvaluator(const HoermanderSystem& system, double cutoff, GridPtr eval_grid);

  double norm(const FourierCoefficients& f, const NormSpec& spec) const;

  double lp(const FourierCoefficients& f, double p) const;
  double sobolev(const FourierCoefficients& f, const NormSpec& spec) const;
  double besov(const FourierCoefficients& f, const NormSpec& spec) const;
  double triebel(const FourierCoefficients& f, const NormSpec& spec) const;

  /// Dyadic pieces psi_j(D) f for j = 0..last block.
  std::vector<FourierCoefficients> blocks(const FourierCoefficients& f, BaseOperator op, PartitionMode mode) const;
  /// 2^{js} ||psi_j(D) f||_p for every block.
  std::vector<double> block_norms(const FourierCoefficients& f, const NormSpec& spec) const;

  const SpectralSetup& setup() const { return *setup_; }
  const GridPtr& grid() const { return grid_; }

 private:
  FourierCoefficients fit(const FourierCoefficients& f) const;

  std::shared_ptr<const SpectralSetup> setup_;
  GridPtr grid_;
};

/// Weighted quadrature power mean; p = inf gives the largest |sample|.
double lp_norm(const GroupFunction& f, double p);

/// Norms of a sampled function: forward transform at the grid band, then the
/// coefficient route on the same grid.
double sobolev_norm(const GroupFunction& f, const NormSpec& spec, const HoermanderSystem& system);
double besov_norm(const GroupFunction& f, const NormSpec& spec, const HoermanderSystem& system);
double triebel_norm(const GroupFunction& f, const NormSpec& spec, const HoermanderSystem& system);
double function_norm(const GroupFunction& f, const NormSpec& spec, const HoermanderSystem& system);

/// Pair (X0, X1) with interpolation parameters. t runs over 2^{k/per_octave}
/// for k/per_octave in [t_min_exp, t_max_exp].
struct KFunctionalSpec {
  NormSpec x0;
  NormSpec x1;
  double theta = 0.5;
  double qbar = 2.0;
  int t_min_exp = -20;
  int t_max_exp = 20;
  int per_octave = 4;
};

/// Candidate splittings f = f0 + f1 with their norms ||f0||_X0 and ||f1||_X1.
/// The candidates cut the spectrum of the X0 base operator at every sharp block
/// boundary, in both orientations, and include (f, 0) and (0, f).
struct KSplits {
  std::vector<double> norm0;
  std::vector<double> norm1;

  /// min over candidates of norm0 + t norm1: an upper bound for K(f, t).
  double k_upper(double t) const;
};

KSplits k_splits(const FourierCoefficients& f, const KFunctionalSpec& spec, const NormEvaluator& eval);
double k_functional_upper(const FourierCoefficients& f, double t, const KFunctionalSpec& spec,
                          const NormEvaluator& eval);
/// Geometric-grid quadrature of (integral of (t^{-theta} K(f,t))^qbar dt/t)^{1/qbar}.
double interpolation_norm_upper(const FourierCoefficients& f, const KFunctionalSpec& spec, const NormEvaluator& eval);
double interpolation_norm_upper(const KSplits& splits, const KFunctionalSpec& spec);

}  // namespace subharm
