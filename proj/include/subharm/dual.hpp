#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "subharm/lie_group.hpp"

namespace subharm {

/// One class of irreducible unitary representations.
///
/// Torus: the character e^{ik.x}, d = 1, lambda = |k|^2.
/// SU(2): spin l = twice_spin/2, d = 2l+1, lambda = l(l+1).
struct DualIndex {
  std::vector<int> k;
  int twice_spin = 0;
  int dim = 1;
  double lambda = 0.0;
  double weight = 1.0;  // (1 + lambda)^{1/2}

  double spin() const { return 0.5 * twice_spin; }
  std::string label() const;
  nlohmann::json to_json() const;

  friend bool operator==(const DualIndex& a, const DualIndex& b) {
    return a.k == b.k && a.twice_spin == b.twice_spin;
  }
};

DualIndex torus_index(std::vector<int> k);
DualIndex spin_index(int twice_spin);

/// 1 + lambda <= cutoff^2 up to a relative slack of 1e-12.
bool within_cutoff(const DualIndex& xi, double cutoff);

/// All classes with weight <= cutoff, ordered by lambda, then lexicographic k
/// (torus) or increasing spin (su2). The list for a smaller cutoff is always a
/// prefix of the list for a larger one.
std::vector<DualIndex> enumerate_dual(const CompactGroup& group, double cutoff);

/// Largest spin (su2) or largest |k_j| (torus) admitted by a cutoff.
int max_twice_spin(double cutoff);
int max_frequency(double cutoff);

/// The weight cutoff whose top spin/frequency is `factor` times that of `cutoff`
/// (or larger). Used to size grids for products of band-limited functions.
double scaled_cutoff(double cutoff, double factor);

/// A cutoff covering every class that occurs in products of classes within
/// cutoffs a and b (spins or frequency radii add).
double sum_cutoff(const CompactGroup& group, double a, double b);

DualIndex index_from_json(const CompactGroup& group, const nlohmann::json& j);

}  // namespace subharm
