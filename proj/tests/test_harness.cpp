#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "subharm/suite.hpp"

using namespace subharm;

namespace {

Series make_series(std::vector<double> values, SeriesKind kind = SeriesKind::asserted) {
  Series s;
  s.name = "x";
  s.kind = kind;
  double scale = 4;
  for (double v : values) {
    s.records.push_back({scale, v, 1});
    scale *= 2;
  }
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_error_line(const std::string& text) {
  try {
    parse_suite(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

const char* kSmallSuite = R"({
  "group": "su2", "generators": [1, 2],
  "probes": [
    {"id": "nikolskii", "params": {"p": 2, "q": 4}, "family": {"kind": "dirichlet_block"},
     "scales": [2, 3, 4], "seed": 1},
    {"id": "sobolev_comparison", "params": {"p": 2, "s": 2}, "family": {"kind": "single_frequency"},
     "scales": [2, 3, 4], "seed": 2}
  ]
})";

}  // namespace

TEST_CASE("verdict rule") {
  CHECK(make_series({1.0, 1.1}).verdict() == Verdict::inconclusive);
  CHECK(make_series({3.0, 1.0, 1.1, 1.2}).verdict() == Verdict::bounded);
  CHECK(make_series({0.0, 0.0, 0.0}).verdict() == Verdict::bounded);
  CHECK(make_series({1.0, 2.0, 4.0}).verdict() == Verdict::growth_detected);
  CHECK(make_series({1.0, 1.2, 1.24}).verdict() == Verdict::bounded);
  CHECK(make_series({4.0, 2.0, 1.0}).verdict() == Verdict::inconclusive);
  CHECK(make_series({1.0, 2.0, 1.5}).verdict() == Verdict::inconclusive);

  auto limited = make_series({1.0, 1.0, 1.0 + 1e-6});
  limited.high = 1.0;
  CHECK(limited.violated());
  CHECK(limited.verdict() == Verdict::growth_detected);

  ProbeReport r;
  r.series = {make_series({1.0, 1.0, 1.0}), make_series({1, 2, 4}, SeriesKind::guard),
              make_series({5, 1, 0.1}, SeriesKind::info)};
  CHECK(r.verdict() == Verdict::bounded);
  r.series.push_back(make_series({1.0, 0.5, 0.25}));
  CHECK(r.verdict() == Verdict::inconclusive);
  r.series.push_back(make_series({1.0, 2.0, 4.0}));
  CHECK(r.verdict() == Verdict::growth_detected);
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1, 2, 4, 8}, {3, 6, 12, 24}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(loglog_slope({2, 4, 8}, {1, 0.25, 0.0625}) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("families are nested and band-limited") {
  const auto system = HoermanderSystem::make(CompactGroup::su2(), {1, 2});
  for (auto kind : {FamilyKind::random, FamilyKind::heat, FamilyKind::characters, FamilyKind::single_frequency}) {
    const TestFamily fam{kind, system, 3, 7, 0.0, {1.0, 0.25}, BaseOperator::sublaplacian, {}, {}};
    const auto small = fam.generate(4.0);
    const auto large = fam.generate(8.0);
    REQUIRE(small.size() <= large.size());
    for (const auto& f : large) CHECK(f.cutoff <= 8.0);
    if (kind == FamilyKind::random || kind == FamilyKind::heat)
      for (size_t i = 0; i < small.size(); ++i) {
        const auto cut = large[i].restricted(4.0);
        for (size_t b = 0; b < cut.size(); ++b) CHECK((cut.blocks[b] - small[i].blocks[b]).norm() == 0.0);
      }
  }
}

TEST_CASE("config parse errors carry line numbers") {
  CHECK(parse_error_line("{\n  \"probes\": [\n    {\"id\": \"nikolskii\",, }\n  ]\n}") == 3);
  CHECK(parse_error_line("{\"group\": \"su2\", \"generators\": [1, 2],\n\"probes\": [\n{\"id\": \"nope\", \"scales\": [1]}\n]}") == 3);
  CHECK(parse_error_line(
            "{\"group\": \"su2\", \"generators\": [1, 2], \"probes\": [\n\n"
            "  {\"id\": \"nikolskii\", \"params\": {\"qq\": 4}, \"scales\": [2, 3]}]}") == 3);
  CHECK(parse_error_line("{\"group\": \"sphere\", \"probes\": []}") == 1);
  CHECK(parse_error_line(
            "{\"group\": \"su2\", \"generators\": [3],\n\"probes\": [{\"id\": \"nikolskii\", \"scales\": [2]}]}") > 0);
}

TEST_CASE("empty probe list gives an empty bundle") {
  const auto config = parse_suite(R"({"probes": []})");
  CHECK(config.probes.empty());
  const auto result = run_suite(config);
  CHECK(result.reports.empty());
  CHECK_FALSE(result.growth_detected());
  const auto dir = std::filesystem::temp_directory_path() / "subharm_empty_bundle";
  std::filesystem::remove_all(dir);
  write_bundle(result, dir);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "records.csv"));
  CHECK(std::filesystem::exists(dir / "summary.txt"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("a small suite writes a deterministic bundle") {
  const auto config = parse_suite(kSmallSuite);
  REQUIRE(config.probes.size() == 2);
  CHECK(config.probes[0].line == 4);
  const auto a = run_suite(config);
  const auto b = run_suite(parse_suite(kSmallSuite));
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.records_csv() == b.records_csv());
  CHECK_FALSE(a.growth_detected());

  const auto dir = std::filesystem::temp_directory_path() / "subharm_small_bundle";
  std::filesystem::remove_all(dir);
  write_bundle(a, dir);
  const auto json = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(json["reports"].size() == a.reports.size());
  const auto csv = slurp(dir / "records.csv");
  CHECK(csv.rfind(records_csv_header(), 0) == 0);
  CHECK(slurp(dir / "summary.txt").find("nikolskii") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("the shipped suite covers every probe id and theorem tag") {
  auto config = load_suite(SUBHARM_SUITE_CONFIG);
  std::set<std::string> ids;
  for (const auto& p : config.probes) ids.insert(p.id);
  for (const auto& id : probe_ids()) CHECK_MESSAGE(ids.count(id) == 1, id);

  // Tags are only known once a probe runs; the two smallest scales suffice.
  std::set<std::string> tags;
  for (auto p : config.probes) {
    p.scales.resize(std::min<size_t>(p.scales.size(), 2));
    for (const auto& r : run_probe(p)) tags.insert(r.tag);
  }
  for (const auto& tag : theorem_tags()) CHECK_MESSAGE(tags.count(tag) == 1, tag);
}
