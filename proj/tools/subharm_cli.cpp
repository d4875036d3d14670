#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subharm/suite.hpp"

using namespace subharm;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream(path) << text;
}

HoermanderSystem make_system(const std::string& group, int n, const std::vector<int>& generators) {
  const auto g = CompactGroup::from_json({{"group", group}, {"n", n}});
  return generators.empty() ? HoermanderSystem::full(g) : HoermanderSystem::make(g, generators);
}

struct GroupOptions {
  std::string group = "su2";
  int n = 1;
  std::vector<int> generators;
  void add(CLI::App* app) {
    app->add_option("--group", group, "su2 or torus")->check(CLI::IsMember({"su2", "torus"}));
    app->add_option("--n", n, "torus dimension");
    app->add_option("--generators", generators, "1-based generator indices (default: all)")->delimiter(',');
  }
  HoermanderSystem system() const { return make_system(group, n, generators); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis, subelliptic norms and inequality probes on compact Lie groups"};
  app.require_subcommand(1);

  // transform
  auto* transform = app.add_subcommand("transform", "function samples -> Fourier coefficients (or back with --inverse)");
  std::string t_input, t_output, t_grid;
  double t_cutoff = 0;
  bool t_inverse = false;
  transform->add_option("input", t_input, "JSON file")->required();
  transform->add_option("-o,--output", t_output, "output file (default stdout)");
  transform->add_option("--cutoff", t_cutoff, "coefficient cutoff (default: the grid band)");
  transform->add_flag("--inverse", t_inverse, "coefficients -> samples");
  transform->add_option("--grid", t_grid, "grid id for --inverse (default: the band-exact grid of the cutoff)");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "write one member of a test family as function samples");
  GroupOptions s_group;
  s_group.add(sample_cmd);
  double s_band = 4;
  std::string s_family = "{}", s_output;
  size_t s_index = 0;
  std::uint64_t s_seed = 0;
  sample_cmd->add_option("--band", s_band, "band cutoff");
  sample_cmd->add_option("--family", s_family, "family JSON, e.g. {\"kind\":\"heat\"}");
  sample_cmd->add_option("--index", s_index, "member index");
  sample_cmd->add_option("--seed", s_seed, "seed");
  sample_cmd->add_option("-o,--output", s_output, "output file (default stdout)");

  // norm
  auto* norm = app.add_subcommand("norm", "norm of a function or coefficient file");
  GroupOptions n_group;
  n_group.add(norm);
  std::string n_input, n_spec;
  norm->add_option("input", n_input, "function or coefficient JSON")->required();
  norm->add_option("--spec", n_spec, "norm, e.g. B:s=1,p=2,q=2,op=sub")->required();

  // symbol
  auto* symbol = app.add_subcommand("symbol", "seminorm table of a registered symbol as CSV");
  GroupOptions y_group;
  y_group.add(symbol);
  std::string y_name = "bessel:-1", y_output;
  double y_cutoff = 8, y_perturb = 0;
  SymbolClassSpec y_class;
  bool y_conjugates = false;
  std::uint64_t y_seed = 0;
  symbol->add_option("--symbol", y_name, "identity, bessel:t, elliptic_bessel:t, transfer:s, random:m, mihlin:a");
  symbol->add_option("--cutoff", y_cutoff, "band cutoff");
  symbol->add_option("--perturb", y_perturb, "x-dependent perturbation size");
  symbol->add_option("--m", y_class.m, "order");
  symbol->add_option("--rho", y_class.rho, "rho");
  symbol->add_option("--delta", y_class.delta, "delta");
  symbol->add_option("--max-gamma", y_class.max_gamma, "difference order bound");
  symbol->add_option("--max-beta", y_class.max_beta, "x-derivative order bound");
  symbol->add_option("--fit-min-weight", y_class.fit_min_weight, "smallest <xi> in the decay fit");
  symbol->add_flag("--conjugates", y_conjugates, "add conjugate difference functions");
  symbol->add_option("--seed", y_seed, "seed for random symbols");
  symbol->add_option("-o,--output", y_output, "output file (default stdout)");

  // probe
  auto* probe = app.add_subcommand("probe", "run one probe and print its reports as JSON");
  GroupOptions p_group;
  p_group.add(probe);
  std::string p_id, p_params = "{}", p_family = "{}";
  std::vector<double> p_scales;
  std::uint64_t p_seed = 0;
  probe->add_option("id", p_id, "probe id")->required();
  probe->add_option("--scales", p_scales, "comma separated scales")->delimiter(',')->required();
  probe->add_option("--params", p_params, "params JSON");
  probe->add_option("--family", p_family, "family JSON");
  probe->add_option("--seed", p_seed, "seed");

  // suite
  auto* suite = app.add_subcommand("suite", "run a suite config and write report.json, records.csv, summary.txt");
  std::string u_config, u_out = "suite-output";
  suite->add_option("config", u_config, "config path")->required();
  suite->add_option("-o,--out", u_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*transform) {
      const auto j = read_json(t_input);
      if (t_inverse) {
        const auto c = FourierCoefficients::from_json(j);
        const auto grid = t_grid.empty() ? QuadratureGrid::get(c.group, c.cutoff) : QuadratureGrid::from_id(t_grid);
        emit(inverse_transform(c, grid).to_json().dump() + "\n", t_output);
      } else {
        const auto f = GroupFunction::from_json(j);
        emit(forward_transform(f, t_cutoff > 0 ? t_cutoff : f.grid->band()).to_json().dump() + "\n", t_output);
      }
    } else if (*sample_cmd) {
      const auto fam = TestFamily::from_json(nlohmann::json::parse(s_family), s_group.system(), s_seed);
      const auto members = fam.generate(s_band);
      if (s_index >= members.size()) throw ParameterError("family has " + std::to_string(members.size()) + " members");
      const auto grid = QuadratureGrid::get(fam.system.group, s_band);
      emit(inverse_transform(members[s_index], grid).to_json().dump() + "\n", s_output);
    } else if (*norm) {
      const auto j = read_json(n_input);
      const auto spec = NormSpec::parse(n_spec);
      const auto system = n_group.system();
      double value;
      if (j.contains("samples")) {
        value = function_norm(GroupFunction::from_json(j), spec, system);
      } else {
        const auto c = FourierCoefficients::from_json(j);
        const NormEvaluator eval(system, c.cutoff, QuadratureGrid::get(c.group, scaled_cutoff(c.cutoff, 2.0)));
        value = eval.norm(c, spec);
      }
      std::cout << format_number(value) << "\n";
    } else if (*symbol) {
      PsdoParams pp;
      pp.symbol = y_name;
      pp.perturb = y_perturb;
      const auto system = y_group.system();
      const auto sym = psdo_symbol(pp, system, y_cutoff, y_seed);
      emit(seminorm_csv(seminorm_estimate(sym, y_class, difference_collection(system.group, y_conjugates))), y_output);
    } else if (*probe) {
      nlohmann::json sys{{"group", p_group.group}, {"n", p_group.n}};
      if (!p_group.generators.empty()) sys["generators"] = p_group.generators;
      nlohmann::json entry = sys;
      entry["id"] = p_id;
      entry["params"] = nlohmann::json::parse(p_params);
      entry["family"] = nlohmann::json::parse(p_family);
      entry["scales"] = p_scales;
      entry["seed"] = p_seed;
      const auto cfg = parse_suite(nlohmann::json{{"probes", {entry}}}.dump(2));
      const auto result = run_suite(cfg);
      std::cout << result.to_json().dump(2) << "\n";
      return result.growth_detected() ? 1 : 0;
    } else if (*suite) {
      const auto result = run_suite(load_suite(u_config));
      write_bundle(result, u_out);
      std::cout << result.summary();
      return result.growth_detected() ? 1 : 0;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
