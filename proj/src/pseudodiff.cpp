#include "subharm/pseudodiff.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace subharm {

namespace {

constexpr cplx I{0.0, 1.0};

FourierCoefficients slice(const MatrixSymbol& sym, size_t node) {
  FourierCoefficients c(sym.group, sym.cutoff);
  for (size_t i = 0; i < c.size(); ++i) c.blocks[i] = sym.at(i, node);
  return c;
}

MatrixSymbol with_classes(const MatrixSymbol& like, double cutoff) {
  MatrixSymbol out{like.group, cutoff, enumerate_dual(like.group, cutoff), like.grid, like.x_band, {}};
  out.values.resize(out.indices.size());
  return out;
}

}  // namespace

MatrixSymbol MatrixSymbol::from_multiplier(const MultiplierSymbol& m) {
  MatrixSymbol s{m.group, m.cutoff, m.indices, nullptr, 0.0, {}};
  for (const auto& b : m.blocks) s.values.push_back({b});
  return s;
}

MatrixSymbol MatrixSymbol::from_function(const GridPtr& grid, double cutoff, double x_band,
                                         const std::function<CMatrix(const GroupPoint&, const DualIndex&)>& fn) {
  MatrixSymbol s{grid->group(), cutoff, enumerate_dual(grid->group(), cutoff), grid, x_band, {}};
  for (const auto& xi : s.indices) {
    std::vector<CMatrix> v;
    if (x_band == 0.0) {
      v.push_back(fn(identity_point(s.group), xi));
    } else {
      v.reserve(grid->size());
      for (size_t x = 0; x < grid->size(); ++x) v.push_back(fn(grid->node(x), xi));
    }
    s.values.push_back(std::move(v));
  }
  return s;
}

MultiplierSymbol MatrixSymbol::multiplier() const {
  if (!left_invariant()) throw ParameterError("symbol depends on x");
  MultiplierSymbol m(group, cutoff);
  for (size_t i = 0; i < m.size(); ++i) m.blocks[i] = values[i][0];
  return m;
}

nlohmann::json MatrixSymbol::to_json() const {
  nlohmann::json vals = nlohmann::json::array();
  for (size_t x = 0; x < nodes(); ++x) {
    MultiplierSymbol m(group, cutoff);
    for (size_t i = 0; i < m.size(); ++i) m.blocks[i] = at(i, x);
    vals.push_back(m.BlockField::to_json()["entries"]);
  }
  nlohmann::json j = group.to_json();
  j["x_band"] = x_band;
  j["cutoff"] = cutoff;
  if (grid && !left_invariant()) j["grid_id"] = grid->id();
  j["values"] = std::move(vals);
  return j;
}

GroupFunction quantize(const MatrixSymbol& sym, const FourierCoefficients& f, const GridPtr& grid) {
  if (f.cutoff > sym.cutoff * (1 + 1e-12))
    throw BandExceeded("function cutoff " + format_number(f.cutoff) + " exceeds symbol cutoff " +
                       format_number(sym.cutoff));
  if (sym.left_invariant()) return inverse_transform(apply_multiplier(sym.multiplier(), f), grid);
  if (grid != sym.grid) throw ParameterError("an x-dependent symbol is quantized on its own grid");
  if (grid->band() < sum_cutoff(sym.group, f.cutoff, sym.x_band) * (1 - 1e-12))
    throw BandExceeded("grid band " + format_number(grid->band()) + " does not resolve the output band");
  GroupFunction out{grid, CVector::Zero(static_cast<Eigen::Index>(grid->size()))};
  for (size_t x = 0; x < grid->size(); ++x) {
    cplx s = 0.0;
    for (size_t i = 0; i < f.size(); ++i)
      s += static_cast<double>(f.indices[i].dim) *
           (representation_at_node(*grid, f.indices[i], x) * sym.at(i, x) * f.blocks[i]).trace();
    out.samples(static_cast<Eigen::Index>(x)) = s;
  }
  return out;
}

MatrixSymbol extract_symbol(const GroupOperator& op, double cutoff, const GridPtr& grid) {
  const CompactGroup& g = grid->group();
  MatrixSymbol s{g, cutoff, enumerate_dual(g, cutoff), grid, grid->band(), {}};
  for (const auto& xi : s.indices) {
    std::vector<CMatrix> image(grid->size(), CMatrix(xi.dim, xi.dim));
    for (int a = 0; a < xi.dim; ++a)
      for (int b = 0; b < xi.dim; ++b) {
        const auto out = op(inverse_transform(entry_coefficients(g, cutoff, xi, a, b), grid));
        for (size_t x = 0; x < grid->size(); ++x) image[x](a, b) = out.samples(static_cast<Eigen::Index>(x));
      }
    for (size_t x = 0; x < grid->size(); ++x) image[x] = representation_at_node(*grid, xi, x).adjoint() * image[x];
    s.values.push_back(std::move(image));
  }

  bool invariant = true;
  for (const auto& v : s.values)
    for (const auto& m : v) invariant = invariant && (m - v[0]).norm() <= 1e-10 * std::max(1.0, v[0].norm());
  if (invariant) {
    for (auto& v : s.values) v.resize(1);
    s.x_band = 0.0;
    s.grid = nullptr;
    return s;
  }

  // Largest class carrying a non-negligible part of the x-dependence.
  double scale = 0.0;
  for (const auto& v : s.values)
    for (const auto& m : v) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  double band = 1.0;
  for (size_t i = 0; i < s.indices.size(); ++i) {
    const int d = s.indices[i].dim;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        GroupFunction f{grid, CVector(static_cast<Eigen::Index>(grid->size()))};
        for (size_t x = 0; x < grid->size(); ++x) f.samples(static_cast<Eigen::Index>(x)) = s.values[i][x](a, b);
        const auto c = forward_transform(f, grid->band());
        for (size_t k = 0; k < c.size(); ++k)
          if (c.blocks[k].norm() > 1e-9 * scale) band = std::max(band, c.indices[k].weight);
      }
  }
  s.x_band = band;
  return s;
}

std::vector<DifferenceSpec> difference_collection(const CompactGroup& group, bool with_conjugates) {
  std::vector<DifferenceSpec> out;
  if (group.is_torus()) {
    for (int j = 1; j <= group.dim(); ++j) {
      for (int sign : {1, -1}) {
        if (sign < 0 && !with_conjugates) continue;
        std::vector<int> k(static_cast<size_t>(group.dim()), 0);
        k[static_cast<size_t>(j - 1)] = sign;
        out.push_back({(sign > 0 ? "e^{ix" : "e^{-ix") + std::to_string(j) + "}-1",
                       [j, sign](const GroupPoint& x) { return std::exp(I * (sign * x.x(j - 1))) - 1.0; }, 1,
                       torus_index(k)});
      }
    }
    return out;
  }
  for (int conj = 0; conj <= (with_conjugates ? 1 : 0); ++conj)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const std::string name = std::string(conj ? "conj(U" : "U") + std::to_string(r + 1) + std::to_string(c + 1) +
                                 (conj ? ")" : "") + (r == c ? "-1" : "");
        out.push_back({name,
                       [r, c, conj](const GroupPoint& x) {
                         const cplx v = x.u(r, c) - (r == c ? 1.0 : 0.0);
                         return conj ? std::conj(v) : v;
                       },
                       1, spin_index(1)});
      }
  return out;
}

int gradient_rank_at_identity(const CompactGroup& group, const std::vector<DifferenceSpec>& collection) {
  const double h = 1e-6;
  // Real and imaginary parts of each gradient, as rows.
  RMatrix grads(static_cast<Eigen::Index>(2 * collection.size()), group.dim());
  for (size_t i = 0; i < collection.size(); ++i) {
    if (std::abs(collection[i].q(identity_point(group))) > 1e-12)
      throw ParameterError("difference function " + collection[i].name + " does not vanish at the identity");
    for (int j = 1; j <= group.dim(); ++j) {
      const cplx d = (collection[i].q(exp_generator(group, j, h)) - collection[i].q(exp_generator(group, j, -h))) / (2 * h);
      grads(static_cast<Eigen::Index>(2 * i), j - 1) = d.real();
      grads(static_cast<Eigen::Index>(2 * i + 1), j - 1) = d.imag();
    }
  }
  Eigen::FullPivLU<RMatrix> lu(grads);
  lu.setThreshold(1e-6);
  return static_cast<int>(lu.rank());
}

MatrixSymbol difference_apply(const MatrixSymbol& sym, const DifferenceSpec& dspec) {
  const CompactGroup& g = sym.group;
  // Classes whose coupled classes all lie within the symbol's cutoff.
  auto valid = [&](const DualIndex& xi) {
    if (g.is_torus()) {
      std::vector<int> k = xi.k;
      for (size_t a = 0; a < k.size(); ++a) k[a] -= dspec.carrier.k[a];
      return within_cutoff(torus_index(k), sym.cutoff);
    }
    return within_cutoff(spin_index(xi.twice_spin + dspec.carrier.twice_spin), sym.cutoff);
  };
  double first_bad = std::numeric_limits<double>::infinity();
  for (const auto& xi : sym.indices)
    if (!valid(xi)) {
      first_bad = xi.weight;
      break;
    }
  double new_cutoff = 0.0;
  for (const auto& xi : sym.indices)
    if (xi.weight < first_bad * (1 - 1e-12)) new_cutoff = std::max(new_cutoff, xi.weight);
  if (new_cutoff < 1.0)
    throw BandExceeded("no band margin left at cutoff " + format_number(sym.cutoff) + " for " + dspec.name);

  const auto grid = QuadratureGrid::get(g, sym.cutoff);
  CVector q(static_cast<Eigen::Index>(grid->size()));
  for (size_t x = 0; x < grid->size(); ++x) q(static_cast<Eigen::Index>(x)) = dspec.q(grid->node(x));

  MatrixSymbol out = with_classes(sym, new_cutoff);
  for (size_t x = 0; x < sym.nodes(); ++x) {
    GroupFunction kernel = inverse_transform(slice(sym, x), grid);
    kernel.samples = kernel.samples.cwiseProduct(q);
    const auto c = forward_transform(kernel, new_cutoff);
    for (size_t i = 0; i < out.indices.size(); ++i) out.values[i].push_back(c.blocks[i]);
  }
  return out;
}

MatrixSymbol x_derivative(const MatrixSymbol& sym, int direction) {
  if (direction < 1 || direction > sym.group.dim()) throw ParameterError("direction out of range");
  MatrixSymbol out = sym;
  if (sym.left_invariant()) {
    for (auto& v : out.values) v[0].setZero();
    return out;
  }
  const auto& grid = sym.grid;
  if (sym.x_band > grid->band() * (1 + 1e-12))
    throw BandExceeded("x-dependence band " + format_number(sym.x_band) + " exceeds the grid band");
  for (size_t i = 0; i < sym.indices.size(); ++i) {
    const int d = sym.indices[i].dim;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        GroupFunction f{grid, CVector(static_cast<Eigen::Index>(grid->size()))};
        for (size_t x = 0; x < grid->size(); ++x) f.samples(static_cast<Eigen::Index>(x)) = sym.values[i][x](a, b);
        auto c = forward_transform(f, sym.x_band);
        for (size_t k = 0; k < c.size(); ++k)
          c.blocks[k] = derived_representation(sym.group, c.indices[k], direction) * c.blocks[k];
        const auto df = inverse_transform(c, grid);
        for (size_t x = 0; x < grid->size(); ++x) out.values[i][x](a, b) = df.samples(static_cast<Eigen::Index>(x));
      }
  }
  return out;
}

MatrixSymbol restricted(const MatrixSymbol& a, double cutoff) {
  if (cutoff > a.cutoff * (1 + 1e-12)) throw BandExceeded("cannot extend a symbol beyond its cutoff");
  MatrixSymbol out = a;
  size_t keep = 0;
  while (keep < out.indices.size() && within_cutoff(out.indices[keep], cutoff)) ++keep;
  out.indices.resize(keep);
  out.values.resize(keep);
  out.cutoff = cutoff;
  return out;
}

namespace {

template <class Op>
MatrixSymbol combine(const MatrixSymbol& a, const MatrixSymbol& b, Op op) {
  if (!(a.group == b.group)) throw ParameterError("symbols live on different groups");
  if (!a.left_invariant() && !b.left_invariant() && a.grid != b.grid)
    throw ParameterError("x-dependent symbols on different grids");
  const double cutoff = std::min(a.cutoff, b.cutoff);
  const MatrixSymbol& dep = a.left_invariant() ? b : a;
  MatrixSymbol out = with_classes(dep, cutoff);
  out.x_band = a.left_invariant() ? b.x_band
               : b.left_invariant() ? a.x_band
                                    : sum_cutoff(a.group, a.x_band, b.x_band);
  for (size_t i = 0; i < out.indices.size(); ++i)
    for (size_t x = 0; x < out.nodes(); ++x) out.values[i].push_back(op(a.at(i, x), b.at(i, x)));
  return out;
}

}  // namespace

MatrixSymbol operator+(const MatrixSymbol& a, const MatrixSymbol& b) {
  auto out = combine(a, b, [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x + y; });
  if (!a.left_invariant() && !b.left_invariant()) out.x_band = std::max(a.x_band, b.x_band);
  return out;
}

MatrixSymbol operator*(cplx s, const MatrixSymbol& a) {
  MatrixSymbol out = a;
  for (auto& v : out.values)
    for (auto& m : v) m *= s;
  return out;
}

MatrixSymbol product(const MatrixSymbol& a, const MatrixSymbol& b) {
  return combine(a, b, [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x * y; });
}

std::vector<double> class_operator_norms(const MatrixSymbol& sym) {
  std::vector<double> out;
  for (size_t i = 0; i < sym.indices.size(); ++i) {
    double m = 0.0;
    for (size_t x = 0; x < sym.nodes(); ++x) m = std::max(m, sym.at(i, x).operatorNorm());
    out.push_back(m);
  }
  return out;
}

double decay_exponent(const std::vector<DualIndex>& indices, const std::vector<double>& values, double min_weight) {
  double biggest = 0.0;
  for (double v : values) biggest = std::max(biggest, v);
  std::vector<double> lx, ly;
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i].weight < min_weight * (1 - 1e-12) || !(values[i] > 1e-13 * biggest)) continue;
    lx.push_back(std::log(indices[i].weight));
    ly.push_back(std::log(values[i]));
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const Eigen::Map<const RVector> x(lx.data(), static_cast<Eigen::Index>(lx.size()));
  const Eigen::Map<const RVector> y(ly.data(), static_cast<Eigen::Index>(ly.size()));
  const double mx = x.mean(), my = y.mean();
  const double sxx = (x.array() - mx).square().sum();
  if (sxx <= 0) return std::numeric_limits<double>::quiet_NaN();
  return ((x.array() - mx) * (y.array() - my)).sum() / sxx;
}

namespace {

void multi_indices(int slots, int max_total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == slots) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int v : cur) used += v;
  for (int v = 0; v + used <= max_total; ++v) {
    cur.push_back(v);
    multi_indices(slots, max_total, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> all_multi_indices(int slots, int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  multi_indices(slots, max_total, cur, out);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int v : a) sa += v;
    for (int v : b) sb += v;
    return sa < sb;
  });
  return out;
}

int total(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::vector<SeminormRow> seminorm_estimate(const MatrixSymbol& sym, const SymbolClassSpec& cls,
                                           const std::vector<DifferenceSpec>& collection) {
  if (cls.max_gamma < 0 || cls.max_beta < 0) throw ParameterError("difference and derivative orders must be >= 0");
  if (cls.rho < 0 || cls.rho > 1 || cls.delta < 0 || cls.delta > 1) throw ParameterError("rho and delta lie in [0, 1]");
  const int n = sym.group.dim();
  const auto gammas = all_multi_indices(static_cast<int>(collection.size()), cls.max_gamma);
  const auto betas = all_multi_indices(n, cls.max_beta);

  // Delta^gamma built from Delta^{gamma - e_i} for the first nonzero slot i.
  std::map<std::vector<int>, MatrixSymbol> differenced;
  differenced.emplace(std::vector<int>(collection.size(), 0), sym);
  for (const auto& gamma : gammas) {
    if (differenced.count(gamma)) continue;
    std::vector<int> prev = gamma;
    size_t slot = 0;
    while (prev[slot] == 0) ++slot;
    --prev[slot];
    differenced.emplace(gamma, difference_apply(differenced.at(prev), collection[slot]));
  }

  std::vector<SeminormRow> rows;
  for (const auto& beta : betas) {
    for (const auto& gamma : gammas) {
      MatrixSymbol s = differenced.at(gamma);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < beta[static_cast<size_t>(j)]; ++k) s = x_derivative(s, j + 1);
      const auto norms = class_operator_norms(s);
      const double order = cls.m - cls.rho * total(gamma) + cls.delta * total(beta);
      double sup = 0.0;
      for (size_t i = 0; i < norms.size(); ++i) sup = std::max(sup, std::pow(s.indices[i].weight, -order) * norms[i]);
      rows.push_back({beta, gamma, sup, decay_exponent(s.indices, norms, cls.fit_min_weight), s.cutoff});
    }
  }
  return rows;
}

std::string seminorm_csv(const std::vector<SeminormRow>& rows) {
  std::ostringstream out;
  out << "beta,gamma,seminorm,fit_exponent,band\n";
  for (const auto& r : rows)
    out << join(r.beta) << "," << join(r.gamma) << "," << format_number(r.seminorm) << ","
        << (std::isnan(r.fit_exponent) ? std::string("nan") : format_number(r.fit_exponent)) << ","
        << format_number(r.band) << "\n";
  return out.str();
}

}  // namespace subharm
