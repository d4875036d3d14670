#include "subharm/fourier.hpp"

#include <cmath>

namespace subharm {

namespace {

constexpr cplx I{0.0, 1.0};

nlohmann::json pack(const CMatrix& m) {
  std::vector<double> data;
  data.reserve(static_cast<size_t>(2 * m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back(m(r, c).real());
      data.push_back(m(r, c).imag());
    }
  return data;
}

CMatrix unpack(const nlohmann::json& data, int rows, int cols) {
  const auto v = data.get<std::vector<double>>();
  if (v.size() != static_cast<size_t>(2 * rows * cols)) throw ParseError("matrix data has wrong length");
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = cplx(v[2 * (r * cols + c)], v[2 * (r * cols + c) + 1]);
  return m;
}

// Phase table e^{i s (t/2) angle_a}, rows t = -T..T (twice-m values), columns a.
CMatrix half_phase_table(const QuadratureGrid& grid, int twice_top, double sign) {
  const int n = grid.n_alpha();
  CMatrix e(2 * twice_top + 1, n);
  for (int t = -twice_top; t <= twice_top; ++t)
    for (int a = 0; a < n; ++a) e(t + twice_top, a) = std::exp(sign * I * (0.5 * t * grid.alpha(a)));
  return e;
}

FourierCoefficients forward_su2(const GroupFunction& f, double cutoff) {
  const QuadratureGrid& grid = *f.grid;
  FourierCoefficients out(grid.group(), cutoff);
  const int top = out.indices.back().twice_spin;
  const int n = grid.n_alpha();
  const CMatrix e = half_phase_table(grid, top, 1.0);
  const double plane = 1.0 / (static_cast<double>(n) * n);
  for (int b = 0; b < grid.n_beta(); ++b) {
    // Rows alpha, columns gamma.
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> slab(
        f.samples.data() + static_cast<Eigen::Index>(b) * n * n, n, n);
    const CMatrix moments = plane * (e * slab * e.transpose());  // (mu, nu)
    const double wb = grid.beta_weights()(b);
    for (size_t i = 0; i < out.size(); ++i) {
      const int ts = out.indices[i].twice_spin;
      const RMatrix& d = grid.wigner_table(ts)[static_cast<size_t>(b)];
      CMatrix& blk = out.blocks[i];
      // f^_{rc} += w_b d_{cr}(beta_b) F(m_c, m_r)
      for (int r = 0; r <= ts; ++r)
        for (int c = 0; c <= ts; ++c)
          blk(r, c) += wb * d(c, r) * moments(ts - 2 * c + top, ts - 2 * r + top);
    }
  }
  return out;
}

GroupFunction inverse_su2(const FourierCoefficients& coeffs, const GridPtr& gridp) {
  const QuadratureGrid& grid = *gridp;
  const int n = grid.n_alpha();
  GroupFunction out{gridp, CVector::Zero(static_cast<Eigen::Index>(grid.size()))};
  if (coeffs.size() == 0) return out;
  const int top = coeffs.indices.back().twice_spin;
  const CMatrix e = half_phase_table(grid, top, -1.0);
  const CMatrix et = e.transpose();
  CMatrix g(2 * top + 1, 2 * top + 1);
  for (int b = 0; b < grid.n_beta(); ++b) {
    g.setZero();
    for (size_t i = 0; i < coeffs.size(); ++i) {
      const int ts = coeffs.indices[i].twice_spin;
      const RMatrix& d = grid.wigner_table(ts)[static_cast<size_t>(b)];
      const CMatrix& blk = coeffs.blocks[i];
      const double dim = ts + 1.0;
      // G(m_r, m_c) += d_xi d_{rc}(beta_b) c_{cr}
      for (int r = 0; r <= ts; ++r)
        for (int c = 0; c <= ts; ++c) g(ts - 2 * r + top, ts - 2 * c + top) += dim * d(r, c) * blk(c, r);
    }
    Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> slab(
        out.samples.data() + static_cast<Eigen::Index>(b) * n * n, n, n);
    slab = et * g * e;
  }
  return out;
}

// Per-axis phase e^{i k angle} for k = -K..K.
CMatrix torus_phase_table(const QuadratureGrid& grid, int kmax) {
  const int n = grid.points_per_axis();
  CMatrix e(2 * kmax + 1, n);
  for (int k = -kmax; k <= kmax; ++k)
    for (int a = 0; a < n; ++a) e(k + kmax, a) = std::exp(I * (static_cast<double>(k) * grid.angle(a)));
  return e;
}

int torus_kmax(const std::vector<DualIndex>& indices) {
  int kmax = 0;
  for (const auto& xi : indices)
    for (int v : xi.k) kmax = std::max(kmax, std::abs(v));
  return kmax;
}

FourierCoefficients forward_torus(const GroupFunction& f, double cutoff) {
  const QuadratureGrid& grid = *f.grid;
  const int dim = grid.group().dim();
  const int n = grid.points_per_axis();
  FourierCoefficients out(grid.group(), cutoff);
  const int kmax = torus_kmax(out.indices);
  const CMatrix e = torus_phase_table(grid, kmax);
  const double w = grid.weights()(0);
  std::vector<int> node(static_cast<size_t>(dim));
  for (size_t i = 0; i < out.size(); ++i) {
    const auto& k = out.indices[i].k;
    cplx sum = 0.0;
    std::fill(node.begin(), node.end(), 0);
    for (Eigen::Index x = 0; x < f.samples.size(); ++x) {
      cplx phase = 1.0;
      for (int a = 0; a < dim; ++a)
        phase *= std::conj(e(k[static_cast<size_t>(a)] + kmax, node[static_cast<size_t>(a)]));
      sum += f.samples(x) * phase;
      for (int a = dim - 1; a >= 0 && ++node[static_cast<size_t>(a)] == n; --a) node[static_cast<size_t>(a)] = 0;
    }
    out.blocks[i](0, 0) = w * sum;
  }
  return out;
}

GroupFunction inverse_torus(const FourierCoefficients& coeffs, const GridPtr& gridp) {
  const QuadratureGrid& grid = *gridp;
  const int dim = grid.group().dim();
  const int n = grid.points_per_axis();
  GroupFunction out{gridp, CVector::Zero(static_cast<Eigen::Index>(grid.size()))};
  const int kmax = torus_kmax(coeffs.indices);
  const CMatrix e = torus_phase_table(grid, kmax);
  std::vector<int> node(static_cast<size_t>(dim), 0);
  for (Eigen::Index x = 0; x < out.samples.size(); ++x) {
    cplx sum = 0.0;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      const auto& k = coeffs.indices[i].k;
      cplx phase = 1.0;
      for (int a = 0; a < dim; ++a) phase *= e(k[static_cast<size_t>(a)] + kmax, node[static_cast<size_t>(a)]);
      sum += coeffs.blocks[i](0, 0) * phase;
    }
    out.samples(x) = sum;
    for (int a = dim - 1; a >= 0 && ++node[static_cast<size_t>(a)] == n; --a) node[static_cast<size_t>(a)] = 0;
  }
  return out;
}

}  // namespace

nlohmann::json GroupFunction::to_json() const {
  std::vector<double> data;
  data.reserve(static_cast<size_t>(2 * samples.size()));
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    data.push_back(samples(i).real());
    data.push_back(samples(i).imag());
  }
  return {{"grid_id", grid->id()}, {"samples", data}};
}

GroupFunction GroupFunction::from_json(const nlohmann::json& j) {
  GroupFunction f;
  f.grid = QuadratureGrid::from_id(j.at("grid_id").get<std::string>());
  const auto v = j.at("samples").get<std::vector<double>>();
  if (v.size() != 2 * f.grid->size())
    throw ParseError("sample count " + std::to_string(v.size() / 2) + " does not match grid size " +
                     std::to_string(f.grid->size()));
  f.samples.resize(static_cast<Eigen::Index>(f.grid->size()));
  for (Eigen::Index i = 0; i < f.samples.size(); ++i)
    f.samples(i) = cplx(v[static_cast<size_t>(2 * i)], v[static_cast<size_t>(2 * i + 1)]);
  return f;
}

GroupFunction sample(const GridPtr& grid, const std::function<cplx(const GroupPoint&)>& f) {
  GroupFunction out{grid, CVector(static_cast<Eigen::Index>(grid->size()))};
  for (size_t i = 0; i < grid->size(); ++i) out.samples(static_cast<Eigen::Index>(i)) = f(grid->node(i));
  return out;
}

BlockField::BlockField(const CompactGroup& g, double c) : group(g), cutoff(c), indices(enumerate_dual(g, c)) {
  blocks.reserve(indices.size());
  for (const auto& xi : indices) blocks.push_back(CMatrix::Zero(xi.dim, xi.dim));
}

long BlockField::find(const DualIndex& xi) const {
  if (!within_cutoff(xi, cutoff)) return -1;
  for (size_t i = 0; i < indices.size(); ++i)
    if (indices[i] == xi) return static_cast<long>(i);
  return -1;
}

void BlockField::truncate(double new_cutoff) {
  if (new_cutoff > cutoff * (1 + 1e-12))
    throw BandExceeded("cannot extend data from cutoff " + format_number(cutoff) + " to " + format_number(new_cutoff));
  size_t keep = 0;
  while (keep < indices.size() && within_cutoff(indices[keep], new_cutoff)) ++keep;
  indices.resize(keep);
  blocks.resize(keep);
  cutoff = new_cutoff;
}

nlohmann::json BlockField::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (size_t i = 0; i < size(); ++i) {
    nlohmann::json e{{"index", indices[i].to_json()},
                     {"dims", {blocks[i].rows(), blocks[i].cols()}},
                     {"data", pack(blocks[i])}};
    if (!group.is_torus()) e["spin"] = indices[i].spin();
    entries.push_back(std::move(e));
  }
  auto j = group.to_json();
  j["cutoff"] = cutoff;
  j["entries"] = std::move(entries);
  return j;
}

void BlockField::read_entries(const nlohmann::json& j) {
  for (const auto& e : j.at("entries")) {
    const auto xi = index_from_json(group, e.at("index"));
    const long pos = find(xi);
    if (pos < 0) throw ParseError("entry " + xi.label() + " lies beyond the cutoff");
    const auto dims = e.at("dims").get<std::vector<int>>();
    if (dims.size() != 2 || dims[0] != xi.dim || dims[1] != xi.dim)
      throw ParseError("entry " + xi.label() + " has wrong dimensions");
    blocks[static_cast<size_t>(pos)] = unpack(e.at("data"), xi.dim, xi.dim);
  }
}

FourierCoefficients FourierCoefficients::restricted(double new_cutoff) const {
  FourierCoefficients out = *this;
  out.truncate(new_cutoff);
  return out;
}

FourierCoefficients FourierCoefficients::from_json(const nlohmann::json& j) {
  FourierCoefficients c(CompactGroup::from_json(j), j.at("cutoff").get<double>());
  c.read_entries(j);
  return c;
}

MultiplierSymbol MultiplierSymbol::identity(const CompactGroup& group, double cutoff) {
  MultiplierSymbol s(group, cutoff);
  for (auto& b : s.blocks) b.setIdentity();
  return s;
}

nlohmann::json MultiplierSymbol::to_json() const {
  auto j = BlockField::to_json();
  j["symbol"] = true;
  return j;
}

MultiplierSymbol MultiplierSymbol::from_json(const nlohmann::json& j) {
  MultiplierSymbol s(CompactGroup::from_json(j), j.at("cutoff").get<double>());
  s.read_entries(j);
  return s;
}

namespace {

void check_compatible(const FourierCoefficients& a, const FourierCoefficients& b) {
  if (!(a.group == b.group) || a.size() != b.size())
    throw CutoffMismatch("coefficient sets have different groups or cutoffs");
}

}  // namespace

FourierCoefficients operator+(const FourierCoefficients& a, const FourierCoefficients& b) {
  check_compatible(a, b);
  FourierCoefficients out = a;
  for (size_t i = 0; i < out.size(); ++i) out.blocks[i] += b.blocks[i];
  return out;
}

FourierCoefficients operator-(const FourierCoefficients& a, const FourierCoefficients& b) {
  check_compatible(a, b);
  FourierCoefficients out = a;
  for (size_t i = 0; i < out.size(); ++i) out.blocks[i] -= b.blocks[i];
  return out;
}

FourierCoefficients operator*(cplx s, const FourierCoefficients& a) {
  FourierCoefficients out = a;
  for (auto& blk : out.blocks) blk *= s;
  return out;
}

FourierCoefficients forward_transform(const GroupFunction& f, double cutoff) {
  if (!f.grid) throw ParameterError("function has no grid");
  if (static_cast<size_t>(f.samples.size()) != f.grid->size())
    throw ParameterError("sample count does not match the grid");
  if (cutoff > f.grid->band() * (1 + 1e-12))
    throw BandExceeded("cutoff " + format_number(cutoff) + " exceeds grid band " + format_number(f.grid->band()));
  return f.grid->group().is_torus() ? forward_torus(f, cutoff) : forward_su2(f, cutoff);
}

GroupFunction inverse_transform(const FourierCoefficients& c, const GridPtr& grid) {
  if (!(c.group == grid->group())) throw ParameterError("grid and coefficients live on different groups");
  return grid->group().is_torus() ? inverse_torus(c, grid) : inverse_su2(c, grid);
}

double plancherel_norm(const FourierCoefficients& c) {
  double s = 0.0;
  for (size_t i = 0; i < c.size(); ++i) s += c.indices[i].dim * c.blocks[i].squaredNorm();
  return std::sqrt(s);
}

CMatrix representation_at_node(const QuadratureGrid& grid, const DualIndex& xi, size_t node) {
  if (grid.group().is_torus()) return representation_matrix(grid.group(), xi, grid.node(node));
  const auto n = static_cast<size_t>(grid.n_alpha());
  const auto b = node / (n * n);
  const double alpha = grid.alpha(static_cast<int>((node / n) % n));
  const double gamma = grid.alpha(static_cast<int>(node % n));
  const RMatrix& d = grid.wigner_table(xi.twice_spin)[b];
  CMatrix out(xi.dim, xi.dim);
  for (int r = 0; r < xi.dim; ++r)
    for (int c = 0; c < xi.dim; ++c)
      out(r, c) = std::exp(-I * (0.5 * (xi.twice_spin - 2 * r) * alpha + 0.5 * (xi.twice_spin - 2 * c) * gamma)) * d(r, c);
  return out;
}

MultiplierSymbol compose(const MultiplierSymbol& a, const MultiplierSymbol& b) {
  if (!(a.group == b.group)) throw ParameterError("symbols live on different groups");
  MultiplierSymbol out(a.group, std::min(a.cutoff, b.cutoff));
  for (size_t i = 0; i < out.size(); ++i) out.blocks[i] = a.blocks[i] * b.blocks[i];
  return out;
}

FourierCoefficients entry_coefficients(const CompactGroup& group, double cutoff, const DualIndex& xi, int a, int b) {
  FourierCoefficients c(group, cutoff);
  const long pos = c.find(xi);
  if (pos < 0) throw BandExceeded("class " + xi.label() + " lies beyond the cutoff");
  // xi_ab(x) = Tr[xi(x) E_ba], so the coefficient is E_ba / d.
  c.blocks[static_cast<size_t>(pos)](b, a) = 1.0 / xi.dim;
  return c;
}

FourierCoefficients character_coefficients(const CompactGroup& group, double cutoff, const DualIndex& xi) {
  FourierCoefficients c(group, cutoff);
  const long pos = c.find(xi);
  if (pos < 0) throw BandExceeded("class " + xi.label() + " lies beyond the cutoff");
  c.blocks[static_cast<size_t>(pos)] = CMatrix::Identity(xi.dim, xi.dim) / static_cast<double>(xi.dim);
  return c;
}

}  // namespace subharm
