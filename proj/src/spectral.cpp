#include "subharm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace subharm {

MultiplierSymbol laplacian_symbol(const CompactGroup& group, double cutoff) {
  MultiplierSymbol s(group, cutoff);
  for (size_t i = 0; i < s.size(); ++i) s.blocks[i].diagonal().setConstant(s.indices[i].lambda);
  return s;
}

MultiplierSymbol sublaplacian_symbol(const HoermanderSystem& system, double cutoff) {
  MultiplierSymbol s(system.group, cutoff);
  for (size_t i = 0; i < s.size(); ++i) {
    for (int j : system.generators) {
      const CMatrix x = derived_representation(system.group, s.indices[i], j);
      s.blocks[i] -= x * x;
    }
    // Remove roundoff from the anti-Hermitian generators.
    s.blocks[i] = 0.5 * (s.blocks[i] + s.blocks[i].adjoint()).eval();
  }
  return s;
}

namespace {

bool is_diagonal(const CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c && m(r, c) != 0.0) return false;
  return true;
}

void snap_clusters(RVector& v) {
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= v.size(); ++i) {
    const bool split = i == v.size() || v(i) - v(i - 1) > 1e-9 * std::max(1.0, std::abs(v(i)));
    if (split) {
      if (i - start > 1) v.segment(start, i - start).setConstant(v.segment(start, i - start).mean());
      start = i;
    }
  }
}

double checked(const ScalarFunction& g, double mu, const DualIndex& xi) {
  const double v = g(mu);
  if (!std::isfinite(v))
    throw DomainError("function undefined at eigenvalue " + format_number(mu) + " of class " + xi.label());
  return v;
}

}  // namespace

SpectralDecomposition SpectralDecomposition::of(const MultiplierSymbol& sym) {
  SpectralDecomposition d;
  d.values.reserve(sym.size());
  d.vectors.reserve(sym.size());
  for (const auto& b : sym.blocks) {
    const auto n = b.rows();
    if (is_diagonal(b)) {
      std::vector<Eigen::Index> order(static_cast<size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&b](Eigen::Index x, Eigen::Index y) { return b(x, x).real() < b(y, y).real(); });
      RVector v(n);
      CMatrix u = CMatrix::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = b(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]).real();
        u(order[static_cast<size_t>(i)], i) = 1.0;
      }
      d.values.push_back(std::move(v));
      d.vectors.push_back(std::move(u));
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
      d.values.push_back(es.eigenvalues());
      d.vectors.push_back(es.eigenvectors());
    }
    snap_clusters(d.values.back());
  }
  return d;
}

double SpectralDecomposition::reconstruction_error(const MultiplierSymbol& sym) const {
  double e = 0.0;
  for (size_t i = 0; i < sym.size(); ++i) {
    const CMatrix r = vectors[i] * values[i].cast<cplx>().asDiagonal() * vectors[i].adjoint();
    e = std::max(e, (r - sym.blocks[i]).operatorNorm());
  }
  return e;
}

MultiplierSymbol apply_scalar_function(const MultiplierSymbol& sym, const SpectralDecomposition& dec,
                                       const ScalarFunction& g) {
  MultiplierSymbol out(sym.group, sym.cutoff);
  for (size_t i = 0; i < sym.size(); ++i) {
    const RVector& v = dec.values[i];
    const CMatrix& u = dec.vectors[i];
    if (is_diagonal(sym.blocks[i])) {
      // Snapped eigenvalues sit in sorted order; u is the sorting permutation.
      CMatrix& o = out.blocks[i];
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        Eigen::Index row = 0;
        u.col(k).cwiseAbs().maxCoeff(&row);
        o(row, row) = checked(g, v(k), sym.indices[i]);
      }
      continue;
    }
    CVector gv(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) gv(k) = checked(g, v(k), sym.indices[i]);
    out.blocks[i] = u * gv.asDiagonal() * u.adjoint();
  }
  return out;
}

MultiplierSymbol apply_scalar_function(const MultiplierSymbol& sym, const ScalarFunction& g) {
  return apply_scalar_function(sym, SpectralDecomposition::of(sym), g);
}

MultiplierSymbol bessel_potential_symbol(const MultiplierSymbol& sym, double s) {
  return apply_scalar_function(sym, [s](double t) { return std::pow(1.0 + t, 0.5 * s); });
}

double DyadicPartition::profile(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double up = std::exp(-1.0 / (2.0 - a));
  const double down = std::exp(-1.0 / (a - 1.0));
  return up / (up + down);
}

int DyadicPartition::sharp_block(double lambda) {
  const double t = 1.0 + lambda;  // mu^2
  int l = 0;
  while (std::ldexp(1.0, 2 * (l + 1)) <= t * (1.0 + 1e-9)) ++l;
  return l;
}

double DyadicPartition::block(int j, double mu) const {
  if (mode == PartitionMode::sharp) return sharp_block(mu * mu - 1.0) == j ? 1.0 : 0.0;
  if (j == 0) return profile(mu);
  return profile(std::ldexp(mu, -j)) - profile(std::ldexp(mu, 1 - j));
}

double DyadicPartition::block_of_lambda(int j, double lambda) const {
  if (mode == PartitionMode::sharp) return sharp_block(lambda) == j ? 1.0 : 0.0;
  return block(j, std::sqrt(1.0 + lambda));
}

int DyadicPartition::last_block(double cutoff) const {
  const int top = sharp_block(cutoff * cutoff - 1.0);
  return mode == PartitionMode::sharp ? top : top + 1;
}

std::pair<double, double> DyadicPartition::support(int j) const {
  if (mode == PartitionMode::sharp) return {std::ldexp(1.0, j), std::ldexp(1.0, j + 1)};
  if (j == 0) return {-2.0, 2.0};
  return {std::ldexp(1.0, j - 1), std::ldexp(1.0, j + 1)};
}

int block_overlap_radius() {
  const DyadicPartition smooth{PartitionMode::smooth}, sharp{PartitionMode::sharp};
  int radius = 0;
  for (int j = 0; j < 40; ++j) {
    const auto [a0, a1] = smooth.support(j);
    for (int jp = 0; jp < 40; ++jp) {
      const auto [b0, b1] = sharp.support(jp);
      // Open (a0, a1) against half-open [b0, b1).
      const bool meet = std::max(a0, b0) < std::min(a1, b1);
      if (meet) radius = std::max(radius, std::abs(j - jp) + 1);
    }
  }
  return radius;
}

MultiplierSymbol dyadic_projection_symbol(const MultiplierSymbol& sym, int l, const DyadicPartition& partition) {
  return apply_scalar_function(sym, [l, &partition](double t) { return partition.block_of_lambda(l, t); });
}

FourierCoefficients apply_multiplier(const MultiplierSymbol& sym, const FourierCoefficients& c) {
  if (!(sym.group == c.group)) throw CutoffMismatch("symbol and coefficients live on different groups");
  if (sym.size() < c.size())
    throw CutoffMismatch("symbol cutoff " + format_number(sym.cutoff) + " does not cover coefficient cutoff " +
                         format_number(c.cutoff));
  FourierCoefficients out = c;
  for (size_t i = 0; i < c.size(); ++i) out.blocks[i] = sym.blocks[i] * c.blocks[i];
  return out;
}

ScalarFunction scalar_function_from_name(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  if (head == "identity" && colon == std::string::npos) return [](double t) { return t; };
  if (colon == std::string::npos) throw ParseError("unknown scalar function '" + name + "'");
  double arg = 0.0;
  try {
    size_t used = 0;
    arg = std::stod(name.substr(colon + 1), &used);
    if (used != name.size() - colon - 1) throw std::invalid_argument(name);
  } catch (const std::exception&) {
    throw ParseError("bad argument in scalar function '" + name + "'");
  }
  if (head == "bessel") return [arg](double t) { return std::pow(1.0 + t, 0.5 * arg); };
  if (head == "heat") return [arg](double t) { return std::exp(-arg * t); };
  if (head == "dyadic" || head == "smooth") {
    const int j = static_cast<int>(arg);
    if (j != arg || j < 0) throw ParseError("block index must be a nonnegative integer in '" + name + "'");
    const DyadicPartition p{head == "dyadic" ? PartitionMode::sharp : PartitionMode::smooth};
    return [j, p](double t) { return p.block_of_lambda(j, t); };
  }
  throw ParseError("unknown scalar function '" + name + "'");
}

}  // namespace subharm
