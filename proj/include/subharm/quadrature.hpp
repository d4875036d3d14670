#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "subharm/representation.hpp"

namespace subharm {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, RVector& nodes, RVector& weights);

/// A product quadrature with positive weights summing to 1 that integrates
/// every product xi_ij * conj(eta_kl) exactly when both classes have weight at
/// most band().
///
/// Torus: 2K+1 equispaced angles per axis, K the largest admitted |k_j|.
/// SU(2), top spin J: 4J+1 equispaced alpha and gamma in [0, 4pi) and
/// floor(J)+1 Gauss-Legendre nodes in cos(beta). Nodes are laid out with beta
/// slowest and gamma fastest.
class QuadratureGrid {
 public:
  /// Shared grid for (group, band); grids and their Wigner tables are cached.
  static std::shared_ptr<const QuadratureGrid> get(const CompactGroup& group, double band);
  static std::shared_ptr<const QuadratureGrid> from_id(const std::string& id);

  QuadratureGrid(const CompactGroup& group, double band);
  QuadratureGrid(const QuadratureGrid&) = delete;
  QuadratureGrid& operator=(const QuadratureGrid&) = delete;

  const CompactGroup& group() const { return group_; }
  double band() const { return band_; }
  std::string id() const;
  size_t size() const { return static_cast<size_t>(weights_.size()); }
  const RVector& weights() const { return weights_; }
  GroupPoint node(size_t i) const;

  int points_per_axis() const { return per_axis_; }  // torus
  double angle(int i) const;                        // torus axis angle i

  int twice_max_spin() const { return twice_spin_; }
  int n_alpha() const { return per_axis_; }
  int n_beta() const { return static_cast<int>(betas_.size()); }
  const RVector& betas() const { return betas_; }
  const RVector& beta_weights() const { return beta_weights_; }
  double alpha(int i) const { return angle(i); }

  /// d^l(beta_b) for every beta node b; computed on first use.
  const std::vector<RMatrix>& wigner_table(int twice_spin) const;

 private:
  CompactGroup group_;
  double band_;
  int per_axis_ = 1;
  int twice_spin_ = 0;
  RVector weights_;
  RVector betas_;
  RVector beta_weights_;  // sum to 1
  mutable std::mutex table_mutex_;
  mutable std::map<int, std::vector<RMatrix>> tables_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

std::string format_number(double v);

}  // namespace subharm
