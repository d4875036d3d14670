#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subharm/quadrature.hpp"

namespace subharm {

/// Complex samples of a function on the nodes of a quadrature grid.
struct GroupFunction {
  GridPtr grid;
  CVector samples;

  nlohmann::json to_json() const;
  static GroupFunction from_json(const nlohmann::json& j);
};

GroupFunction sample(const GridPtr& grid, const std::function<cplx(const GroupPoint&)>& f);

/// One d_xi x d_xi block per dual class of weight <= cutoff, in the order of
/// enumerate_dual.
struct BlockField {
  CompactGroup group;
  double cutoff;
  std::vector<DualIndex> indices;
  std::vector<CMatrix> blocks;

  /// Zero blocks for every class within the cutoff.
  BlockField(const CompactGroup& group, double cutoff);

  size_t size() const { return indices.size(); }
  /// Position of xi, or -1 when it lies beyond the cutoff.
  long find(const DualIndex& xi) const;
  /// Keeps the prefix of classes within a smaller cutoff.
  void truncate(double new_cutoff);

  nlohmann::json to_json() const;
  void read_entries(const nlohmann::json& j);
};

/// f^(xi) = integral of f(x) xi(x)^* dx.
struct FourierCoefficients : BlockField {
  using BlockField::BlockField;
  FourierCoefficients restricted(double new_cutoff) const;
  static FourierCoefficients from_json(const nlohmann::json& j);
};

/// A left-invariant symbol sigma(xi), acting on coefficients from the left.
struct MultiplierSymbol : BlockField {
  using BlockField::BlockField;
  static MultiplierSymbol identity(const CompactGroup& group, double cutoff);
  nlohmann::json to_json() const;
  static MultiplierSymbol from_json(const nlohmann::json& j);
};

FourierCoefficients operator+(const FourierCoefficients& a, const FourierCoefficients& b);
FourierCoefficients operator-(const FourierCoefficients& a, const FourierCoefficients& b);
FourierCoefficients operator*(cplx s, const FourierCoefficients& a);

/// Weighted quadrature sums; exact when f is band-limited and the grid band
/// covers both f and the cutoff.
FourierCoefficients forward_transform(const GroupFunction& f, double cutoff);

/// f(x) = sum of d_xi Tr[xi(x) c(xi)] at every grid node.
GroupFunction inverse_transform(const FourierCoefficients& c, const GridPtr& grid);

/// (sum of d_xi ||c(xi)||_HS^2)^{1/2}.
double plancherel_norm(const FourierCoefficients& c);

/// xi(x) at a grid node, from the grid's Wigner tables on su2.
CMatrix representation_at_node(const QuadratureGrid& grid, const DualIndex& xi, size_t node);

/// Blockwise product a(xi) b(xi) over the classes both cover.
MultiplierSymbol compose(const MultiplierSymbol& a, const MultiplierSymbol& b);

/// Coefficients of the matrix entry function x -> xi_ab(x).
FourierCoefficients entry_coefficients(const CompactGroup& group, double cutoff, const DualIndex& xi, int a, int b);

/// Coefficients of the character x -> Tr xi(x).
FourierCoefficients character_coefficients(const CompactGroup& group, double cutoff, const DualIndex& xi);

}  // namespace subharm
