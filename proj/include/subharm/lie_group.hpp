#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "subharm/types.hpp"

namespace subharm {

enum class GroupKind { torus, su2 };

/// A supported compact Lie group together with the structure constants of its
/// Lie algebra in a fixed basis X_1..X_n.
///
/// For SU(2) the basis is normalized by [X_1,X_2] = X_3 (cyclically), so the
/// Casimir -(X_1^2 + X_2^2 + X_3^2) has eigenvalue l(l+1) on spin l.
class CompactGroup {
 public:
  static CompactGroup torus(int n);
  static CompactGroup su2();

  GroupKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_torus() const { return kind_ == GroupKind::torus; }

  /// c^k_{ij} with 1-based indices, so that [X_i, X_j] = sum_k c^k_{ij} X_k.
  int structure_constant(int i, int j, int k) const;

  std::string name() const;
  nlohmann::json to_json() const;
  static CompactGroup from_json(const nlohmann::json& j);

  friend bool operator==(const CompactGroup& a, const CompactGroup& b) {
    return a.kind_ == b.kind_ && a.dim_ == b.dim_;
  }

 private:
  CompactGroup(GroupKind kind, int dim);

  GroupKind kind_;
  int dim_;
  std::vector<int> constants_;  // row-major [i][j][k], 0-based
};

/// Dimensions (dim H^1, dim H^2, ...) of the bracket filtration generated by
/// the given 1-based generator indices, ending at dim(G). Ranks are exact
/// (integer elimination on the structure constants).
std::vector<int> bracket_filtration(const CompactGroup& group, std::span<const int> generators);

/// Q = dim H^1 + sum_i (i+1) (dim H^{i+1} - dim H^i).
int hausdorff_dimension(std::span<const int> filtration);

/// The step kappa: number of filtration levels.
int hoermander_step(std::span<const int> filtration);

/// Rank of an integer matrix (rows are vectors), by fraction-free elimination.
int exact_rank(std::vector<std::vector<long long>> rows);

/// A bracket-generating family of left-invariant vector fields.
struct HoermanderSystem {
  CompactGroup group;
  std::vector<int> generators;  // 1-based basis indices
  std::vector<int> filtration;
  int step = 1;
  int hausdorff_dim = 0;

  static HoermanderSystem make(const CompactGroup& group, std::vector<int> generators);
  /// All basis fields; the sub-Laplacian is then the Laplacian.
  static HoermanderSystem full(const CompactGroup& group);

  /// [dim(G)/2] + 1, the smallest integer larger than dim(G)/2.
  int sobolev_index() const { return group.dim() / 2 + 1; }

  nlohmann::json to_json() const;
};

}  // namespace subharm
