#include "subharm/dual.hpp"

#include <algorithm>
#include <cmath>

namespace subharm {

std::string DualIndex::label() const {
  if (k.empty()) {
    return twice_spin % 2 == 0 ? "l=" + std::to_string(twice_spin / 2)
                               : "l=" + std::to_string(twice_spin) + "/2";
  }
  std::string s = "k=(";
  for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

nlohmann::json DualIndex::to_json() const {
  if (!k.empty()) return k;
  return nlohmann::json::array({twice_spin});
}

DualIndex torus_index(std::vector<int> k) {
  DualIndex xi;
  long long sq = 0;
  for (int v : k) sq += static_cast<long long>(v) * v;
  xi.k = std::move(k);
  xi.lambda = static_cast<double>(sq);
  xi.weight = std::sqrt(1.0 + xi.lambda);
  return xi;
}

DualIndex spin_index(int twice_spin) {
  if (twice_spin < 0) throw ParameterError("negative spin");
  DualIndex xi;
  xi.twice_spin = twice_spin;
  xi.dim = twice_spin + 1;
  xi.lambda = 0.25 * twice_spin * (twice_spin + 2);
  xi.weight = std::sqrt(1.0 + xi.lambda);
  return xi;
}

bool within_cutoff(const DualIndex& xi, double cutoff) {
  return 1.0 + xi.lambda <= cutoff * cutoff * (1.0 + 1e-12);
}

int max_twice_spin(double cutoff) {
  int t = 0;
  while (within_cutoff(spin_index(t + 1), cutoff)) ++t;
  return t;
}

int max_frequency(double cutoff) {
  int k = 0;
  while (within_cutoff(torus_index({k + 1}), cutoff)) ++k;
  return k;
}

double scaled_cutoff(double cutoff, double factor) {
  return std::sqrt(1.0 + factor * factor * (cutoff * cutoff - 1.0));
}

std::vector<DualIndex> enumerate_dual(const CompactGroup& group, double cutoff) {
  if (!(cutoff >= 1.0)) throw ParameterError("cutoff must be at least 1");
  std::vector<DualIndex> out;
  if (!group.is_torus()) {
    for (int t = 0; within_cutoff(spin_index(t), cutoff); ++t) out.push_back(spin_index(t));
    return out;
  }
  const int n = group.dim();
  const int kmax = max_frequency(cutoff);
  std::vector<int> k(static_cast<size_t>(n), -kmax);
  while (true) {
    auto xi = torus_index(k);
    if (within_cutoff(xi, cutoff)) out.push_back(std::move(xi));
    int axis = n - 1;
    while (axis >= 0 && k[static_cast<size_t>(axis)] == kmax) k[static_cast<size_t>(axis--)] = -kmax;
    if (axis < 0) break;
    ++k[static_cast<size_t>(axis)];
  }
  std::stable_sort(out.begin(), out.end(), [](const DualIndex& a, const DualIndex& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.k < b.k;
  });
  return out;
}

double sum_cutoff(const CompactGroup& group, double a, double b) {
  if (group.is_torus()) {
    const double r = std::sqrt(a * a - 1.0) + std::sqrt(b * b - 1.0);
    return std::sqrt(1.0 + r * r);
  }
  return spin_index(max_twice_spin(a) + max_twice_spin(b)).weight;
}

DualIndex index_from_json(const CompactGroup& group, const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("dual index must be an array");
  if (group.is_torus()) {
    auto k = j.get<std::vector<int>>();
    if (static_cast<int>(k.size()) != group.dim()) throw ParseError("frequency vector has wrong length");
    return torus_index(std::move(k));
  }
  if (j.size() != 1) throw ParseError("su2 index is [twice_spin]");
  return spin_index(j[0].get<int>());
}

}  // namespace subharm
