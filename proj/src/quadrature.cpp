#include "subharm/quadrature.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace subharm {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void gauss_legendre(int n, RVector& nodes, RVector& weights) {
  nodes.resize(n);
  weights.resize(n);
  // Returns P_n'(x) and leaves P_n(x) in pn.
  auto legendre = [n](double x, double& pn) {
    double p1 = 1.0, p2 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * k - 1.0) * x * p2 - (k - 1.0) * p3) / k;
    }
    pn = p1;
    return n * (x * p1 - p2) / (x * x - 1.0);
  };
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double pn = 0.0;
      const double dp = legendre(x, pn);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double pn = 0.0;
    const double dp = legendre(x, pn);
    nodes(i) = x;
    weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureGrid::QuadratureGrid(const CompactGroup& group, double band) : group_(group), band_(band) {
  if (!(band >= 1.0)) throw ParameterError("grid band must be at least 1");
  if (group.is_torus()) {
    per_axis_ = 2 * max_frequency(band) + 1;
    const auto total = static_cast<Eigen::Index>(std::pow(per_axis_, group.dim()));
    weights_ = RVector::Constant(total, 1.0 / static_cast<double>(total));
    return;
  }
  twice_spin_ = max_twice_spin(band);
  per_axis_ = 2 * twice_spin_ + 1;
  RVector x, w;
  gauss_legendre(twice_spin_ / 2 + 1, x, w);
  betas_ = x.unaryExpr([](double c) { return std::acos(c); });
  beta_weights_ = w / w.sum();
  const double plane = 1.0 / (static_cast<double>(per_axis_) * per_axis_);
  weights_.resize(static_cast<Eigen::Index>(betas_.size()) * per_axis_ * per_axis_);
  for (Eigen::Index b = 0; b < betas_.size(); ++b)
    weights_.segment(b * per_axis_ * per_axis_, per_axis_ * per_axis_).setConstant(beta_weights_(b) * plane);
}

double QuadratureGrid::angle(int i) const {
  const double period = group_.is_torus() ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  return period * i / per_axis_;
}

GroupPoint QuadratureGrid::node(size_t i) const {
  if (group_.is_torus()) {
    GroupPoint g;
    g.x.resize(group_.dim());
    for (int axis = group_.dim() - 1; axis >= 0; --axis) {
      g.x(axis) = angle(static_cast<int>(i % static_cast<size_t>(per_axis_)));
      i /= static_cast<size_t>(per_axis_);
    }
    return g;
  }
  const auto plane = static_cast<size_t>(per_axis_) * static_cast<size_t>(per_axis_);
  const int b = static_cast<int>(i / plane);
  const int a = static_cast<int>((i % plane) / static_cast<size_t>(per_axis_));
  const int c = static_cast<int>(i % static_cast<size_t>(per_axis_));
  return euler_point(angle(a), betas_(b), angle(c));
}

std::string QuadratureGrid::id() const {
  if (group_.is_torus()) return "torus:n=" + std::to_string(group_.dim()) + ":band=" + format_number(band_);
  return "su2:band=" + format_number(band_);
}

const std::vector<RMatrix>& QuadratureGrid::wigner_table(int twice_spin) const {
  if (group_.is_torus()) throw ParameterError("Wigner tables exist only on su2 grids");
  std::lock_guard lock(table_mutex_);
  auto it = tables_.find(twice_spin);
  if (it != tables_.end()) return it->second;
  std::vector<RMatrix> table;
  table.reserve(static_cast<size_t>(betas_.size()));
  for (Eigen::Index b = 0; b < betas_.size(); ++b) table.push_back(wigner_small_d(twice_spin, betas_(b)));
  return tables_.emplace(twice_spin, std::move(table)).first->second;
}

std::shared_ptr<const QuadratureGrid> QuadratureGrid::get(const CompactGroup& group, double band) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const QuadratureGrid>> cache;
  auto grid = std::make_shared<const QuadratureGrid>(group, band);
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(grid->id(), grid);
  return it->second;
}

std::shared_ptr<const QuadratureGrid> QuadratureGrid::from_id(const std::string& id) {
  auto field = [&id](const std::string& key) -> std::string {
    const auto pos = id.find(key + "=");
    if (pos == std::string::npos) throw ParseError("grid id '" + id + "' lacks " + key);
    const auto start = pos + key.size() + 1;
    return id.substr(start, id.find(':', start) - start);
  };
  try {
    if (id.rfind("su2:", 0) == 0) return get(CompactGroup::su2(), std::stod(field("band")));
    if (id.rfind("torus:", 0) == 0)
      return get(CompactGroup::torus(std::stoi(field("n"))), std::stod(field("band")));
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed grid id '" + id + "'");
  }
  throw ParseError("unknown grid id '" + id + "'");
}

}  // namespace subharm
