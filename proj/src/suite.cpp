#include "subharm/suite.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace subharm {

const std::vector<std::string>& probe_ids() {
  static const std::vector<std::string> ids{"nikolskii",          "embedding_chain", "littlewood_paley",
                                            "sobolev_comparison", "besov_comparison", "psdo_boundedness",
                                            "function_space_identities", "interpolation", "symbol_order"};
  return ids;
}

const std::vector<std::string>& theorem_tags() {
  static const std::vector<std::string> tags{
      "nikolskii",           "besov_embedding_q_monotone", "besov_embedding_fine_index",
      "besov_embedding_integrability", "sobolev_besov_sandwich", "besov_lq_embedding",
      "littlewood_paley",    "sobolev_besov_equivalence",  "sub_vs_elliptic_sobolev",
      "sub_vs_elliptic_besov", "psdo_sub_sobolev",         "psdo_sobolev",
      "psdo_sub_besov",      "psdo_besov",                 "mihlin_multiplier",
      "triebel_besov_sandwich", "interpolation_k_functional", "eigenvalue_sandwich",
      "negative_power_order"};
  return tags;
}

namespace {

int line_of(const std::string& text, size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

// Lines where the objects of the top-level "probes" array open.
std::vector<int> probe_lines(const std::string& text) {
  std::vector<int> lines;
  std::vector<char> stack;
  std::string last_key, current;
  bool in_string = false, escaped = false, probes_array_open = false;
  size_t probes_depth = 0;
  int line = 1;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
        last_key = current;
      } else {
        current += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_string = true;
        current.clear();
        break;
      case '[':
        stack.push_back(c);
        if (stack.size() == 2 && last_key == "probes") {
          probes_array_open = true;
          probes_depth = stack.size();
        }
        break;
      case '{':
        if (probes_array_open && stack.size() == probes_depth) lines.push_back(line);
        stack.push_back(c);
        break;
      case ']':
      case '}':
        if (!stack.empty()) stack.pop_back();
        if (probes_array_open && stack.size() < probes_depth) probes_array_open = false;
        break;
      default:
        break;
    }
  }
  return lines;
}

HoermanderSystem system_from(const nlohmann::json& j, const HoermanderSystem* fallback) {
  if (!j.contains("group")) {
    if (!fallback) throw ParameterError("missing group");
    if (!j.contains("generators")) return *fallback;
    return HoermanderSystem::make(fallback->group, j.at("generators").get<std::vector<int>>());
  }
  const auto& gj = j.at("group");
  const CompactGroup g = gj.is_object() ? CompactGroup::from_json(gj)
                                        : CompactGroup::from_json({{"group", gj}, {"n", j.value("n", 1)}});
  if (j.contains("generators")) return HoermanderSystem::make(g, j.at("generators").get<std::vector<int>>());
  if (fallback && fallback->group == g) return *fallback;
  return HoermanderSystem::full(g);
}

// Typed reads from a params object that reject unknown keys.
class Params {
 public:
  explicit Params(const nlohmann::json& j) : j_(j) {
    if (!j.is_object()) throw ParameterError("params must be an object");
  }
  double number(const std::string& key, double def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_.at(key);
    if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw ParameterError("param '" + key + "' must be a number");
    return v.get<double>();
  }
  std::string text(const std::string& key, const std::string& def) {
    used_.insert(key);
    return j_.value(key, def);
  }
  bool flag(const std::string& key, bool def) {
    used_.insert(key);
    return j_.value(key, def);
  }
  template <class T>
  std::vector<T> list(const std::string& key, const std::vector<T>& def) {
    used_.insert(key);
    return j_.value(key, def);
  }
  PartitionMode mode() {
    const auto m = text("mode", "sharp");
    if (m != "sharp" && m != "smooth") throw ParameterError("mode is sharp or smooth");
    return m == "sharp" ? PartitionMode::sharp : PartitionMode::smooth;
  }
  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw ParameterError("unknown param '" + k + "'");
  }

 private:
  const nlohmann::json& j_;
  std::set<std::string> used_;
};

void check_quasi(double q, bool allow) {
  if (q < 1.0 && !allow) throw ParameterError("q < 1 needs allow_quasi");
}

std::vector<ProbeReport> dispatch(const ProbeConfig& c, bool dry_run) {
  Params p(c.params);
  const auto family = TestFamily::from_json(c.family, c.system, c.seed);
  auto done = [&]() {
    p.finish();
    return dry_run;
  };
  if (c.id == "nikolskii") {
    NikolskiiParams np{p.number("p", 2.0), p.number("q", 4.0)};
    if (done()) return {};
    return {probe_nikolskii(family, np, c.scales)};
  }
  if (c.id == "embedding_chain") {
    EmbeddingParams e;
    e.items = p.list<int>("items", e.items);
    e.p = p.number("p", e.p);
    e.r = p.number("r", e.r);
    e.q1 = p.number("q1", e.q1);
    e.q2 = p.number("q2", e.q2);
    e.epsilon = p.number("epsilon", e.epsilon);
    e.p1 = p.number("p1", e.p1);
    e.p2 = p.number("p2", e.p2);
    e.q = p.number("q", e.q);
    e.q_target = p.number("q_target", e.q_target);
    e.mode = p.mode();
    const bool quasi = p.flag("allow_quasi", false);
    for (double q : {e.q1, e.q2, e.q}) check_quasi(q, quasi);
    if (done()) return {};
    return probe_embedding_chain(family, e, c.scales);
  }
  if (c.id == "littlewood_paley") {
    const double lp = p.number("p", 4.0);
    const auto mode = p.mode();
    if (done()) return {};
    return {probe_littlewood_paley(family, lp, c.scales, mode)};
  }
  if (c.id == "sobolev_comparison" || c.id == "besov_comparison") {
    ComparisonParams cp;
    cp.p = p.number("p", cp.p);
    cp.s = p.number("s", cp.s);
    if (c.id == "besov_comparison") {
      cp.q = p.number("q", cp.q);
      cp.mode = p.mode();
      check_quasi(cp.q, p.flag("allow_quasi", false));
    }
    if (done()) return {};
    return {c.id == "sobolev_comparison" ? probe_sobolev_comparison(family, cp, c.scales)
                                         : probe_besov_comparison(family, cp, c.scales)};
  }
  if (c.id == "psdo_boundedness") {
    PsdoParams pp;
    pp.symbol = p.text("symbol", pp.symbol);
    pp.source = p.text("source", pp.source);
    pp.target = p.text("target", pp.target);
    pp.perturb = p.number("perturb", pp.perturb);
    pp.rho = p.number("rho", pp.rho);
    pp.delta = p.number("delta", pp.delta);
    pp.order = p.number("nu", pp.order);
    pp.theta = p.number("theta", pp.theta);
    pp.tag = p.text("tag", pp.tag);
    NormSpec::parse(pp.source);
    NormSpec::parse(pp.target);
    if (std::find(theorem_tags().begin(), theorem_tags().end(), pp.tag) == theorem_tags().end())
      throw ParameterError("unknown tag '" + pp.tag + "'");
    if (done()) return {};
    return {probe_psdo_boundedness(family, pp, c.scales)};
  }
  if (c.id == "function_space_identities") {
    IdentityParams ip;
    ip.p = p.number("p", ip.p);
    ip.q = p.number("q", ip.q);
    ip.r = p.number("r", ip.r);
    ip.orders = p.list<double>("orders", ip.orders);
    if (done()) return {};
    return probe_function_space_identities(family, ip, c.scales);
  }
  if (c.id == "interpolation") {
    InterpolationParams ip;
    ip.s = p.number("s", ip.s);
    ip.theta = p.number("theta", ip.theta);
    ip.qbar = p.number("qbar", ip.qbar);
    if (done()) return {};
    return {probe_interpolation(family, ip, c.scales)};
  }
  if (c.id == "symbol_order") {
    SymbolOrderParams sp;
    sp.powers = p.list<double>("powers", sp.powers);
    sp.fit_min_weight = p.number("fit_min_weight", sp.fit_min_weight);
    if (done()) return {};
    return probe_symbol_order(c.system, sp, c.scales);
  }
  throw ParameterError("unknown probe id '" + c.id + "'");
}

}  // namespace

SuiteConfig parse_suite(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), line_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object", 1);
  const auto lines = probe_lines(text);
  SuiteConfig cfg;
  std::optional<HoermanderSystem> top;
  try {
    if (j.contains("group")) top = system_from(j, nullptr);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), 1);
  }
  if (!j.contains("probes")) return cfg;
  if (!j.at("probes").is_array()) throw ParseError("probes must be an array", 1);
  const auto& probes = j.at("probes");
  for (size_t i = 0; i < probes.size(); ++i) {
    const int line = i < lines.size() ? lines[i] : 0;
    try {
      const auto& pj = probes[i];
      if (!pj.is_object()) throw ParameterError("probe entries must be objects");
      for (const auto& [k, v] : pj.items())
        if (k != "id" && k != "params" && k != "family" && k != "scales" && k != "seed" && k != "group" && k != "n" &&
            k != "generators")
          throw ParameterError("unknown probe field '" + k + "'");
      ProbeConfig pc{pj.at("id").get<std::string>(),
                     system_from(pj, top ? &*top : nullptr),
                     pj.value("params", nlohmann::json::object()),
                     pj.value("family", nlohmann::json::object()),
                     pj.value("scales", std::vector<double>{}),
                     pj.value("seed", std::uint64_t{0}),
                     line};
      if (pc.scales.empty()) throw ParameterError("probe '" + pc.id + "' lists no scales");
      dispatch(pc, true);
      cfg.probes.push_back(std::move(pc));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("probe ") + std::to_string(i) + ": " + e.what(), line);
    }
  }
  return cfg;
}

SuiteConfig load_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_suite(buf.str());
}

std::vector<ProbeReport> run_probe(const ProbeConfig& config) { return dispatch(config, false); }

bool SuiteResult::growth_detected() const {
  return std::any_of(reports.begin(), reports.end(), [](const ProbeReport& r) { return r.verdict() == Verdict::growth_detected; });
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : reports) reps.push_back(r.to_json());
  return {{"reports", reps}, {"growth_detected", growth_detected()}};
}

std::string SuiteResult::records_csv() const {
  std::string out = records_csv_header();
  for (const auto& r : reports) out += r.csv_rows();
  return out;
}

std::string SuiteResult::summary() const {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-32s %-16s %s\n", "tag", "verdict", "reports");
  out << buf;
  for (const auto& tag : theorem_tags()) {
    int n = 0;
    Verdict worst = Verdict::bounded;
    for (const auto& r : reports) {
      if (r.tag != tag) continue;
      ++n;
      const auto v = r.verdict();
      if (v == Verdict::growth_detected || (v == Verdict::inconclusive && worst == Verdict::bounded)) worst = v;
    }
    std::snprintf(buf, sizeof buf, "%-32s %-16s %d\n", tag.c_str(), n ? to_string(worst).c_str() : "not_run", n);
    out << buf;
  }
  out << "\n";
  std::snprintf(buf, sizeof buf, "%-26s %-32s %-16s %s\n", "probe", "tag", "verdict", "runtime_s");
  out << buf;
  double total = 0;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%-26s %-32s %-16s %.2f\n", r.id.c_str(), r.tag.c_str(), to_string(r.verdict()).c_str(),
                  r.runtime_seconds);
    out << buf;
    total += r.runtime_seconds;
  }
  std::snprintf(buf, sizeof buf, "total runtime %.2f s; growth detected: %s\n", total, growth_detected() ? "yes" : "no");
  out << buf;
  return out.str();
}

SuiteResult run_suite(const SuiteConfig& config) {
  SuiteResult result;
  for (const auto& p : config.probes) {
    try {
      for (auto& r : run_probe(p)) result.reports.push_back(std::move(r));
    } catch (const ParameterError& e) {
      throw ParameterError("line " + std::to_string(p.line) + ": probe " + p.id + ": " + e.what());
    }
  }
  return result;
}

void write_bundle(const SuiteResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "report.json") << result.to_json().dump(2) << "\n";
  std::ofstream(dir / "records.csv") << result.records_csv();
  std::ofstream(dir / "summary.txt") << result.summary();
}

}  // namespace subharm
