#include "subharm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace subharm {

namespace {

std::mt19937_64 class_rng(std::uint64_t seed, int member, const DualIndex& xi) {
  std::vector<std::uint32_t> key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                 static_cast<std::uint32_t>(member), static_cast<std::uint32_t>(xi.twice_spin)};
  for (int k : xi.k) key.push_back(static_cast<std::uint32_t>(k));
  std::seed_seq seq(key.begin(), key.end());
  return std::mt19937_64(seq);
}

const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::random: return "random";
    case FamilyKind::heat: return "heat";
    case FamilyKind::characters: return "characters";
    case FamilyKind::dirichlet_block: return "dirichlet_block";
    case FamilyKind::single_frequency: return "single_frequency";
  }
  return "";
}

DualIndex entry_class(const CompactGroup& g, const std::vector<int>& e) {
  if (g.is_torus()) {
    if (static_cast<int>(e.size()) != g.dim()) throw ParameterError("torus entries list one frequency per axis");
    return torus_index(e);
  }
  if (e.empty()) throw ParameterError("su2 entries start with 2l");
  return spin_index(e[0]);
}

}  // namespace

std::vector<FourierCoefficients> TestFamily::generate(double band) const {
  const CompactGroup& g = system.group;
  std::vector<FourierCoefficients> out;
  switch (kind) {
    case FamilyKind::random:
      for (int i = 0; i < count; ++i) {
        FourierCoefficients c(g, band);
        for (size_t k = 0; k < c.size(); ++k) {
          const auto& xi = c.indices[k];
          auto rng = class_rng(seed, i, xi);
          std::normal_distribution<double> n;
          const double scale = std::pow(xi.dim, -0.5) * std::pow(xi.weight, -smoothness);
          for (Eigen::Index e = 0; e < c.blocks[k].size(); ++e) c.blocks[k].data()[e] = scale * cplx(n(rng), n(rng));
        }
        out.push_back(std::move(c));
      }
      break;
    case FamilyKind::heat: {
      const auto setup = SpectralSetup::get(system, band);
      for (double t : times) {
        if (!(t > 0)) throw ParameterError("heat times must be positive");
        const auto m = setup->function_of(op, [t](double l) { return std::exp(-t * l); });
        FourierCoefficients c(g, band);
        c.blocks = m.blocks;
        out.push_back(std::move(c));
      }
      break;
    }
    case FamilyKind::characters:
      if (entries.empty()) {
        for (const auto& xi : enumerate_dual(g, band)) out.push_back(character_coefficients(g, band, xi));
      } else {
        for (const auto& e : entries) {
          const auto xi = entry_class(g, e);
          if (within_cutoff(xi, band)) out.push_back(character_coefficients(g, band, xi));
        }
      }
      break;
    case FamilyKind::dirichlet_block: {
      std::vector<int> use = blocks;
      if (use.empty())
        for (int j = 0; std::ldexp(1.0, j + 1) <= band * (1 + 1e-12); ++j) use.push_back(j);
      FourierCoefficients full(g, band);
      for (size_t k = 0; k < full.size(); ++k)
        full.blocks[k] = CMatrix::Identity(full.indices[k].dim, full.indices[k].dim);
      for (int j : use) {
        if (std::ldexp(1.0, j + 1) > band * (1 + 1e-12)) continue;
        FourierCoefficients c(g, band);
        for (size_t k = 0; k < c.size(); ++k)
          if (DyadicPartition::sharp_block(c.indices[k].lambda) == j) c.blocks[k] = full.blocks[k];
        out.push_back(std::move(c));
      }
      out.push_back(std::move(full));
      break;
    }
    case FamilyKind::single_frequency: {
      std::vector<std::vector<int>> use = entries;
      if (use.empty()) {
        for (const auto& xi : enumerate_dual(g, band)) {
          if (g.is_torus()) {
            use.push_back(xi.k);
          } else {
            use.push_back({xi.twice_spin, 0, 0});
            if (xi.twice_spin > 0) use.push_back({xi.twice_spin, 0, xi.twice_spin / 2});
          }
        }
      }
      for (const auto& e : use) {
        const auto xi = entry_class(g, e);
        if (!within_cutoff(xi, band)) continue;
        if (g.is_torus()) {
          out.push_back(entry_coefficients(g, band, xi, 0, 0));
        } else {
          if (e.size() != 3 || e[1] < 0 || e[2] < 0 || e[1] >= xi.dim || e[2] >= xi.dim)
            throw ParameterError("su2 entries are [2l, a, b] with 0 <= a, b <= 2l");
          out.push_back(entry_coefficients(g, band, xi, e[1], e[2]));
        }
      }
      break;
    }
  }
  return out;
}

std::string TestFamily::name() const {
  std::ostringstream s;
  s << kind_name(kind);
  switch (kind) {
    case FamilyKind::random:
      s << "(count=" << count << ",seed=" << seed << ",smoothness=" << format_number(smoothness) << ")";
      break;
    case FamilyKind::heat:
      s << "(op=" << (op == BaseOperator::laplacian ? "lap" : "sub") << ",t=";
      for (size_t i = 0; i < times.size(); ++i) s << (i ? ";" : "") << format_number(times[i]);
      s << ")";
      break;
    case FamilyKind::dirichlet_block:
      if (!blocks.empty()) s << "(" << blocks.size() << " blocks)";
      break;
    default:
      if (!entries.empty()) s << "(" << entries.size() << " entries)";
  }
  return s.str();
}

nlohmann::json TestFamily::to_json() const {
  nlohmann::json j{{"kind", kind_name(kind)}};
  switch (kind) {
    case FamilyKind::random:
      j["count"] = count;
      j["seed"] = seed;
      j["smoothness"] = smoothness;
      break;
    case FamilyKind::heat:
      j["times"] = times;
      j["op"] = op == BaseOperator::laplacian ? "lap" : "sub";
      break;
    case FamilyKind::dirichlet_block:
      j["blocks"] = blocks;
      break;
    default:
      j["entries"] = entries;
  }
  return j;
}

TestFamily TestFamily::from_json(const nlohmann::json& j, const HoermanderSystem& system, std::uint64_t seed) {
  TestFamily f{FamilyKind::random, system, 4, seed, 0.0, {1.0, 0.25, 0.0625}, BaseOperator::sublaplacian, {}, {}};
  if (!j.is_object()) throw ParameterError("family must be an object");
  const std::string kind = j.value("kind", "random");
  const std::vector<std::string> names{"random", "heat", "characters", "dirichlet_block", "single_frequency"};
  const auto it = std::find(names.begin(), names.end(), kind);
  if (it == names.end()) throw ParameterError("unknown family kind '" + kind + "'");
  f.kind = static_cast<FamilyKind>(it - names.begin());
  f.count = j.value("count", f.count);
  f.seed = j.value("seed", f.seed);
  f.smoothness = j.value("smoothness", f.smoothness);
  f.times = j.value("times", f.times);
  f.entries = j.value("entries", f.entries);
  f.blocks = j.value("blocks", f.blocks);
  const std::string op = j.value("op", "sub");
  if (op != "sub" && op != "lap") throw ParameterError("family op is sub or lap");
  f.op = op == "lap" ? BaseOperator::laplacian : BaseOperator::sublaplacian;
  if (f.count < 1) throw ParameterError("family count must be positive");
  return f;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::growth_detected: return "growth_detected";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "";
}

std::string to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::asserted: return "asserted";
    case SeriesKind::guard: return "guard";
    case SeriesKind::info: return "info";
  }
  return "";
}

bool Series::violated() const {
  return std::any_of(records.begin(), records.end(), [this](const ScaleRecord& r) { return r.value < low || r.value > high; });
}

Verdict Series::verdict() const {
  if (violated()) return Verdict::growth_detected;
  const size_t n = records.size();
  if (n < 3) return Verdict::inconclusive;
  for (const auto& r : records)
    if (!std::isfinite(r.value)) return Verdict::inconclusive;
  double lo = records[n - 3].value, hi = lo;
  for (size_t i = n - 3; i < n; ++i) {
    lo = std::min(lo, records[i].value);
    hi = std::max(hi, records[i].value);
  }
  if (hi == 0.0 || (lo > 0.0 && hi / lo - 1.0 < kBoundedDrift)) return Verdict::bounded;
  const bool rising = records[n - 3].value <= records[n - 2].value && records[n - 2].value <= records[n - 1].value;
  if (rising && records.front().value > 0.0 && records.back().value / records.front().value >= kGrowthFactor)
    return Verdict::growth_detected;
  return Verdict::inconclusive;
}

Verdict ProbeReport::verdict() const {
  bool any = false, all_bounded = true;
  for (const auto& s : series) {
    if (s.kind != SeriesKind::asserted) continue;
    any = true;
    const auto v = s.verdict();
    if (v == Verdict::growth_detected) return v;
    all_bounded = all_bounded && v == Verdict::bounded;
  }
  return any && all_bounded ? Verdict::bounded : Verdict::inconclusive;
}

const Series& ProbeReport::find(const std::string& name) const {
  for (const auto& s : series)
    if (s.name == name) return s;
  throw ParameterError("report " + id + " has no series '" + name + "'");
}

nlohmann::json ProbeReport::to_json() const {
  nlohmann::json ser = nlohmann::json::array();
  for (const auto& s : series) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : s.records) recs.push_back({{"scale", r.scale}, {"value", r.value}, {"family_size", r.family_size}});
    nlohmann::json js{{"name", s.name}, {"kind", to_string(s.kind)}, {"verdict", to_string(s.verdict())}, {"records", recs}};
    if (std::isfinite(s.low)) js["low"] = s.low;
    if (std::isfinite(s.high)) js["high"] = s.high;
    if (std::isfinite(s.low) || std::isfinite(s.high)) js["violated"] = s.violated();
    ser.push_back(std::move(js));
  }
  return {{"id", id},         {"tag", tag},     {"params", params},   {"family", family},
          {"series", ser},    {"extra", extra}, {"verdict", to_string(verdict())}};
}

std::string records_csv_header() { return "probe,tag,series,kind,scale,value,family_size\n"; }

std::string ProbeReport::csv_rows() const {
  std::ostringstream out;
  for (const auto& s : series)
    for (const auto& r : s.records)
      out << id << "," << tag << "," << s.name << "," << to_string(s.kind) << "," << format_number(r.scale) << ","
          << format_number(r.value) << "," << r.family_size << "\n";
  return out.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace subharm
