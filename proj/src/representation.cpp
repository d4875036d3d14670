#include "subharm/representation.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace subharm {

namespace {

constexpr cplx I{0.0, 1.0};

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

cplx ipow(cplx z, int n) {
  cplx r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

struct Jy {
  CMatrix vectors;
  RVector values;  // exact m values matching the eigenvector columns
};

const Jy& jy_spectrum(int twice_spin) {
  static std::mutex mutex;
  static std::map<int, Jy> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(twice_spin);
  if (it != cache.end()) return it->second;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(spin_matrix(twice_spin, 2));
  Jy j{es.eigenvectors(), es.eigenvalues()};
  for (Eigen::Index i = 0; i < j.values.size(); ++i) j.values(i) = 0.5 * std::round(2.0 * j.values(i));
  return cache.emplace(twice_spin, std::move(j)).first->second;
}

}  // namespace

GroupPoint identity_point(const CompactGroup& group) {
  GroupPoint g;
  if (group.is_torus()) g.x = RVector::Zero(group.dim());
  return g;
}

GroupPoint multiply(const CompactGroup& group, const GroupPoint& a, const GroupPoint& b) {
  GroupPoint g;
  if (group.is_torus()) {
    g.x = (a.x + b.x).unaryExpr([](double v) { return std::fmod(v, 2.0 * std::numbers::pi); });
  } else {
    g.u = a.u * b.u;
  }
  return g;
}

GroupPoint inverse(const CompactGroup& group, const GroupPoint& a) {
  GroupPoint g;
  if (group.is_torus()) {
    g.x = (-a.x).unaryExpr([](double v) { return v < 0 ? v + 2.0 * std::numbers::pi : v; });
  } else {
    g.u = a.u.adjoint();
  }
  return g;
}

GroupPoint exp_generator(const CompactGroup& group, int j, double t) {
  if (j < 1 || j > group.dim()) throw ParameterError("basis index out of range");
  GroupPoint g = identity_point(group);
  if (group.is_torus()) {
    g.x(j - 1) = t;
    return g;
  }
  // X_j = -i sigma_j / 2, so exp(t X_j) = cos(t/2) I - i sin(t/2) sigma_j.
  const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
  Eigen::Matrix2cd sigma;
  if (j == 1) sigma << 0, 1, 1, 0;
  if (j == 2) sigma << 0, -I, I, 0;
  if (j == 3) sigma << 1, 0, 0, -1;
  g.u = c * Eigen::Matrix2cd::Identity() - I * s * sigma;
  return g;
}

GroupPoint euler_point(double alpha, double beta, double gamma) {
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  const cplx a = std::exp(-I * (0.5 * (alpha + gamma))) * c;
  const cplx b = -std::exp(-I * (0.5 * (alpha - gamma))) * s;
  GroupPoint g;
  g.u << a, b, -std::conj(b), std::conj(a);
  return g;
}

RVector euler_angles(const GroupPoint& g) {
  const cplx a = g.u(0, 0), b = g.u(0, 1);
  const double beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double sum = std::abs(a) > 0 ? -2.0 * std::arg(a) : 0.0;    // alpha + gamma
  const double diff = std::abs(b) > 0 ? -2.0 * std::arg(-b) : 0.0;  // alpha - gamma
  RVector e(3);
  e << 0.5 * (sum + diff), beta, 0.5 * (sum - diff);
  return e;
}

GroupPoint random_point(const CompactGroup& group, std::mt19937_64& rng) {
  GroupPoint g;
  if (group.is_torus()) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    g.x.resize(group.dim());
    for (int i = 0; i < group.dim(); ++i) g.x(i) = u(rng);
    return g;
  }
  std::normal_distribution<double> n;
  Eigen::Vector4d q;
  for (int i = 0; i < 4; ++i) q(i) = n(rng);
  q.normalize();
  const cplx a(q(0), q(3)), b(q(2), q(1));
  g.u << a, b, -std::conj(b), std::conj(a);
  return g;
}

CMatrix spin_matrix(int twice_spin, int axis) {
  const int d = twice_spin + 1;
  const double j = 0.5 * twice_spin;
  CMatrix out = CMatrix::Zero(d, d);
  if (axis == 3) {
    for (int i = 0; i < d; ++i) out(i, i) = j - i;
    return out;
  }
  // (J_+)_{m+1,m} = sqrt(j(j+1) - m(m+1)); row i holds m = j - i.
  CMatrix plus = CMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    const double m = j - i;
    plus(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  if (axis == 1) return 0.5 * (plus + plus.adjoint());
  if (axis == 2) return (plus - plus.adjoint()) / (2.0 * I);
  throw ParameterError("spin axis must be 1, 2 or 3");
}

CMatrix derived_representation(const CompactGroup& group, const DualIndex& xi, int j) {
  if (j < 1 || j > group.dim()) throw ParameterError("basis index out of range");
  if (group.is_torus()) return CMatrix::Constant(1, 1, I * static_cast<double>(xi.k[static_cast<size_t>(j - 1)]));
  return -I * spin_matrix(xi.twice_spin, j);
}

RMatrix wigner_small_d(int twice_spin, double beta) {
  const Jy& jy = jy_spectrum(twice_spin);
  CVector phase(jy.values.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) phase(i) = std::exp(-I * beta * jy.values(i));
  return (jy.vectors * phase.asDiagonal() * jy.vectors.adjoint()).real();
}

CMatrix wigner_explicit(int twice_spin, const Eigen::Matrix2cd& u) {
  const int d = twice_spin + 1;
  const cplx a = u(0, 0), b = u(0, 1);
  const cplx mb = -std::conj(b), ca = std::conj(a);
  CMatrix out(d, d);
  // Row r holds m' = j - r, column c holds m = j - c; p = j + m, q = j - m.
  for (int c = 0; c < d; ++c) {
    const int p = twice_spin - c, q = c;
    for (int r = 0; r < d; ++r) {
      const int pp = twice_spin - r, qp = r;
      cplx sum = 0.0;
      for (int k = std::max(0, pp - q); k <= std::min(p, pp); ++k) {
        sum += binomial(p, k) * binomial(q, pp - k) * ipow(a, k) * ipow(mb, p - k) * ipow(b, pp - k) *
               ipow(ca, q - pp + k);
      }
      const double norm = std::exp(0.5 * (log_factorial(pp) + log_factorial(qp) - log_factorial(p) -
                                          log_factorial(q)));
      out(r, c) = norm * sum;
    }
  }
  return out;
}

CMatrix wigner_euler(int twice_spin, const Eigen::Matrix2cd& u) {
  GroupPoint g;
  g.u = u;
  const RVector e = euler_angles(g);
  const int d = twice_spin + 1;
  const RMatrix small = wigner_small_d(twice_spin, e(1));
  CMatrix out(d, d);
  for (int r = 0; r < d; ++r) {
    const double mp = 0.5 * twice_spin - r;
    for (int c = 0; c < d; ++c) {
      const double m = 0.5 * twice_spin - c;
      out(r, c) = std::exp(-I * (mp * e(0) + m * e(2))) * small(r, c);
    }
  }
  return out;
}

CMatrix representation_matrix(const CompactGroup& group, const DualIndex& xi, const GroupPoint& g) {
  if (group.is_torus()) {
    double phase = 0.0;
    for (int i = 0; i < group.dim(); ++i) phase += xi.k[static_cast<size_t>(i)] * g.x(i);
    return CMatrix::Constant(1, 1, std::exp(I * phase));
  }
  if (xi.twice_spin <= kExplicitSumMaxTwiceSpin) return wigner_explicit(xi.twice_spin, g.u);
  return wigner_euler(xi.twice_spin, g.u);
}

}  // namespace subharm
