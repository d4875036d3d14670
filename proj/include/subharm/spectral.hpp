#pragma once

#include <functional>
#include <string>

#include "subharm/fourier.hpp"

namespace subharm {

/// lambda_xi * I at every class.
MultiplierSymbol laplacian_symbol(const CompactGroup& group, double cutoff);

/// -sum_j d(xi)(X_j)^2 over the generators of the system.
MultiplierSymbol sublaplacian_symbol(const HoermanderSystem& system, double cutoff);

/// Per-class Hermitian eigendecompositions with ascending eigenvalues.
/// Eigenvalues closer than 1e-9 (relative to max(1, |mu|)) are snapped to
/// their cluster mean, so functions of the symbol never split a degenerate
/// eigenspace.
struct SpectralDecomposition {
  std::vector<RVector> values;
  std::vector<CMatrix> vectors;

  static SpectralDecomposition of(const MultiplierSymbol& sym);
  double reconstruction_error(const MultiplierSymbol& sym) const;
};

using ScalarFunction = std::function<double(double)>;

/// U g(Lambda) U^* per class. Throws DomainError when g is not finite at an
/// eigenvalue.
MultiplierSymbol apply_scalar_function(const MultiplierSymbol& sym, const ScalarFunction& g);
MultiplierSymbol apply_scalar_function(const MultiplierSymbol& sym, const SpectralDecomposition& dec,
                                       const ScalarFunction& g);

/// (1 + sym)^{s/2}.
MultiplierSymbol bessel_potential_symbol(const MultiplierSymbol& sym, double s);

enum class PartitionMode { sharp, smooth };

/// Dyadic blocks in mu = (1 + lambda)^{1/2}.
///
/// sharp: psi_l = indicator of [2^l, 2^{l+1}), ties resolved to the left-closed
/// end with relative slack 1e-9.
/// smooth: psi_0 = phi and psi_j(t) = phi(2^{-j} t) - phi(2^{1-j} t), where
/// phi(t) = h(2-|t|) / (h(2-|t|) + h(|t|-1)) with h(u) = exp(-1/u) for u > 0
/// is 1 on [-1, 1] and 0 outside (-2, 2).
struct DyadicPartition {
  PartitionMode mode = PartitionMode::sharp;

  static double profile(double t);
  /// psi_j(mu).
  double block(int j, double mu) const;
  /// psi_j as a function of lambda.
  double block_of_lambda(int j, double lambda) const;
  /// The sharp block containing mu = (1 + lambda)^{1/2}.
  static int sharp_block(double lambda);
  /// Largest block index that can be nonzero for mu <= cutoff.
  int last_block(double cutoff) const;
  /// Open support interval of psi_j.
  std::pair<double, double> support(int j) const;
  std::string name() const { return mode == PartitionMode::sharp ? "sharp" : "smooth"; }
};

/// Smallest j0 such that smooth psi_j and sharp psi_j' have disjoint supports
/// whenever |j - j'| >= j0, by interval arithmetic on the supports.
int block_overlap_radius();

/// psi_l((1 + sym)^{1/2}).
MultiplierSymbol dyadic_projection_symbol(const MultiplierSymbol& sym, int l, const DyadicPartition& partition);

/// sym(xi) c(xi) on the classes of c; the symbol must cover c's cutoff.
FourierCoefficients apply_multiplier(const MultiplierSymbol& sym, const FourierCoefficients& c);

/// Registry: identity, bessel:s, dyadic:l, smooth:j, heat:t. Functions take lambda.
ScalarFunction scalar_function_from_name(const std::string& name);

}  // namespace subharm
