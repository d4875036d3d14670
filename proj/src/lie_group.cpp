#include "subharm/lie_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace subharm {

CompactGroup::CompactGroup(GroupKind kind, int dim)
    : kind_(kind), dim_(dim), constants_(static_cast<size_t>(dim * dim * dim), 0) {}

CompactGroup CompactGroup::torus(int n) {
  if (n < 1) throw ParameterError("torus dimension must be positive");
  return CompactGroup(GroupKind::torus, n);
}

CompactGroup CompactGroup::su2() {
  CompactGroup g(GroupKind::su2, 3);
  auto set = [&g](int i, int j, int k) {
    g.constants_[static_cast<size_t>((i * 3 + j) * 3 + k)] = 1;
    g.constants_[static_cast<size_t>((j * 3 + i) * 3 + k)] = -1;
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(2, 0, 1);
  return g;
}

int CompactGroup::structure_constant(int i, int j, int k) const {
  if (i < 1 || j < 1 || k < 1 || i > dim_ || j > dim_ || k > dim_)
    throw ParameterError("basis index out of range");
  return constants_[static_cast<size_t>(((i - 1) * dim_ + (j - 1)) * dim_ + (k - 1))];
}

std::string CompactGroup::name() const {
  return is_torus() ? "torus(" + std::to_string(dim_) + ")" : "su2";
}

nlohmann::json CompactGroup::to_json() const {
  if (is_torus()) return {{"group", "torus"}, {"n", dim_}};
  return {{"group", "su2"}};
}

CompactGroup CompactGroup::from_json(const nlohmann::json& j) {
  const std::string name = j.at("group").get<std::string>();
  if (name == "su2") return su2();
  if (name == "torus") return torus(j.value("n", 1));
  throw ParameterError("unknown group '" + name + "'");
}

int exact_rank(std::vector<std::vector<long long>> rows) {
  if (rows.empty()) return 0;
  const size_t cols = rows.front().size();
  int rank = 0;
  long long prev_pivot = 1;
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto r = static_cast<size_t>(rank);
    size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    // Bareiss step keeps every entry integral.
    for (size_t i = r + 1; i < rows.size(); ++i) {
      for (size_t k = c + 1; k < cols; ++k)
        rows[i][k] = (rows[r][c] * rows[i][k] - rows[i][c] * rows[r][k]) / prev_pivot;
      rows[i][c] = 0;
    }
    prev_pivot = rows[r][c];
    ++rank;
  }
  return rank;
}

namespace {

using IntVec = std::vector<long long>;

IntVec bracket(const CompactGroup& g, const IntVec& a, const IntVec& b) {
  const int n = g.dim();
  IntVec out(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[static_cast<size_t>(j)] == 0) continue;
      for (int k = 0; k < n; ++k)
        out[static_cast<size_t>(k)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] *
                                       g.structure_constant(i + 1, j + 1, k + 1);
    }
  }
  return out;
}

// Appends v to basis when it is independent of it.
bool extend_basis(std::vector<IntVec>& basis, const IntVec& v) {
  auto trial = basis;
  trial.push_back(v);
  if (exact_rank(trial) > static_cast<int>(basis.size())) {
    basis.push_back(v);
    return true;
  }
  return false;
}

}  // namespace

std::vector<int> bracket_filtration(const CompactGroup& group, std::span<const int> generators) {
  const int n = group.dim();
  if (generators.empty()) throw ParameterError("generator set is empty");
  std::vector<IntVec> gens;
  for (int g : generators) {
    if (g < 1 || g > n) throw ParameterError("generator index " + std::to_string(g) + " out of range");
    IntVec e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(g - 1)] = 1;
    gens.push_back(std::move(e));
  }

  std::vector<IntVec> basis;
  for (const auto& e : gens) extend_basis(basis, e);
  std::vector<int> dims{static_cast<int>(basis.size())};

  while (dims.back() < n) {
    std::vector<IntVec> next = basis;
    for (const auto& x : gens)
      for (const auto& v : basis) extend_basis(next, bracket(group, x, v));
    if (next.size() == basis.size())
      throw NotHoermander("brackets of the generators span only " + std::to_string(basis.size()) +
                          " of " + std::to_string(n) + " dimensions");
    basis = std::move(next);
    dims.push_back(static_cast<int>(basis.size()));
  }
  return dims;
}

int hausdorff_dimension(std::span<const int> filtration) {
  if (filtration.empty()) throw ParameterError("empty filtration");
  int q = filtration[0];
  for (size_t i = 1; i < filtration.size(); ++i)
    q += static_cast<int>(i + 1) * (filtration[i] - filtration[i - 1]);
  return q;
}

int hoermander_step(std::span<const int> filtration) {
  if (filtration.empty()) throw ParameterError("empty filtration");
  return static_cast<int>(filtration.size());
}

HoermanderSystem HoermanderSystem::make(const CompactGroup& group, std::vector<int> generators) {
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  HoermanderSystem s{group, generators, {}, 1, 0};
  s.filtration = bracket_filtration(group, s.generators);
  s.step = hoermander_step(s.filtration);
  s.hausdorff_dim = hausdorff_dimension(s.filtration);
  return s;
}

HoermanderSystem HoermanderSystem::full(const CompactGroup& group) {
  std::vector<int> all(static_cast<size_t>(group.dim()));
  std::iota(all.begin(), all.end(), 1);
  return make(group, std::move(all));
}

nlohmann::json HoermanderSystem::to_json() const {
  auto j = group.to_json();
  j["generators"] = generators;
  j["filtration"] = filtration;
  j["step"] = step;
  j["hausdorff_dim"] = hausdorff_dim;
  return j;
}

}  // namespace subharm
