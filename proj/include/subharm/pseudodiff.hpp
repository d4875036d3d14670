#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subharm/spectral.hpp"

namespace subharm {

/// sigma(x, xi) at the nodes of a grid. A left-invariant symbol (x_band == 0)
/// stores one matrix per class.
struct MatrixSymbol {
  CompactGroup group;
  double cutoff;
  std::vector<DualIndex> indices;
  GridPtr grid;        // x nodes; may be null for left-invariant symbols
  double x_band = 0;   // band of the x-dependence
  std::vector<std::vector<CMatrix>> values;  // [class][node]

  bool left_invariant() const { return x_band == 0.0; }
  size_t nodes() const { return left_invariant() ? 1 : grid->size(); }
  const CMatrix& at(size_t cls, size_t node) const { return values[cls][left_invariant() ? 0 : node]; }

  static MatrixSymbol from_multiplier(const MultiplierSymbol& m);
  /// sigma(x, xi) = fn(node point, class), sampled on the grid.
  static MatrixSymbol from_function(const GridPtr& grid, double cutoff, double x_band,
                                    const std::function<CMatrix(const GroupPoint&, const DualIndex&)>& fn);
  MultiplierSymbol multiplier() const;

  nlohmann::json to_json() const;
};

/// Af(x) = sum of d_xi Tr[xi(x) sigma(x, xi) f^(xi)] at every node of `grid`
/// (the symbol's own grid when it depends on x).
GroupFunction quantize(const MatrixSymbol& sym, const FourierCoefficients& f, const GridPtr& grid);

using GroupOperator = std::function<GroupFunction(const GroupFunction&)>;

/// sigma_A(x, xi) = xi(x)^* [A xi_ij](x), applying A to every matrix entry
/// function. Symbols constant in x (to 1e-10 relative) come back left-invariant;
/// otherwise x_band is read off the Fourier expansion of the x-dependence.
MatrixSymbol extract_symbol(const GroupOperator& op, double cutoff, const GridPtr& grid);

/// q in Delta_q: a band-limited function vanishing at the identity.
struct DifferenceSpec {
  std::string name;
  std::function<cplx(const GroupPoint&)> q;
  int order = 1;
  /// The class carrying q: a spin (su2) or a frequency (torus). Delta_q of a
  /// symbol at xi reads the symbol at classes coupled to xi through it.
  DualIndex carrier;
};

/// torus: e^{i x_j} - 1 for each axis. su2: the four entries of U - I for the
/// defining representation U. `with_conjugates` adds the complex conjugates,
/// which on su2 coincide with entries of U - I up to sign.
std::vector<DifferenceSpec> difference_collection(const CompactGroup& group, bool with_conjugates = false);

/// Rank of the gradients at the identity of a collection, by central finite
/// differences along X_1..X_n.
int gradient_rank_at_identity(const CompactGroup& group, const std::vector<DifferenceSpec>& collection);

/// (Delta_q sigma)(xi) = (q k_sigma)^(xi), with k_sigma the convolution kernel,
/// computed on the band-exact grid of the symbol's cutoff and trimmed to the
/// classes all of whose coupled classes lie within the cutoff. An x-dependent
/// symbol is differenced node by node.
MatrixSymbol difference_apply(const MatrixSymbol& sym, const DifferenceSpec& dspec);

/// X_j applied to the x-dependence of each entry.
MatrixSymbol x_derivative(const MatrixSymbol& sym, int direction);

/// Elementwise combinations on a shared class list.
MatrixSymbol operator+(const MatrixSymbol& a, const MatrixSymbol& b);
MatrixSymbol operator*(cplx s, const MatrixSymbol& a);
/// Classwise product sigma(x, xi) tau(x, xi).
MatrixSymbol product(const MatrixSymbol& a, const MatrixSymbol& b);
/// Restriction to the classes within a smaller cutoff.
MatrixSymbol restricted(const MatrixSymbol& a, double cutoff);

struct SymbolClassSpec {
  double m = 0.0;
  double rho = 1.0;
  double delta = 0.0;
  int max_gamma = 1;
  int max_beta = 0;
  /// Classes below this weight are left out of the decay fit.
  double fit_min_weight = 1.0;
};

struct SeminormRow {
  std::vector<int> beta;   // counts per basis direction X_1..X_n
  std::vector<int> gamma;  // counts per element of the difference collection
  double seminorm = 0;     // sup of <xi>^{-(m - rho|gamma| + delta|beta|)} ||.||_op
  double fit_exponent = 0; // least-squares slope of log sup_x ||.||_op against log <xi>
  double band = 0;         // cutoff of the classes the row was evaluated on
};

std::vector<SeminormRow> seminorm_estimate(const MatrixSymbol& sym, const SymbolClassSpec& cls,
                                           const std::vector<DifferenceSpec>& collection);

/// Columns beta,gamma,seminorm,fit_exponent,band; multi-indices as "0;1;0".
std::string seminorm_csv(const std::vector<SeminormRow>& rows);

/// Per class, the largest operator norm over x.
std::vector<double> class_operator_norms(const MatrixSymbol& sym);

/// Least-squares slope of log(values) against log(weights) over classes with
/// weight >= min_weight and a positive value; NaN with fewer than two weights.
double decay_exponent(const std::vector<DualIndex>& indices, const std::vector<double>& values, double min_weight);

}  // namespace subharm
