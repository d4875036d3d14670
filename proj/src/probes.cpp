#include "subharm/probes.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "subharm/pseudodiff.hpp"

namespace subharm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

NormEvaluator evaluator(const HoermanderSystem& system, double band) {
  return NormEvaluator(system, band, QuadratureGrid::get(system.group, scaled_cutoff(band, 2.0)));
}

// Largest and smallest ratio over a family, skipping vanishing denominators.
struct Extremes {
  double max = 0.0;
  double min = std::numeric_limits<double>::infinity();
  int count = 0;
  void add(double num, double den) {
    if (!(den > 1e-300)) return;
    max = std::max(max, num / den);
    min = std::min(min, num / den);
    ++count;
  }
};

void push(Series& s, double scale, double value, int n) { s.records.push_back({scale, value, n}); }

Series series(const std::string& name, SeriesKind kind) {
  Series s;
  s.name = name;
  s.kind = kind;
  return s;
}

// The interval spanned by 1 and 2^a, widened by a relative tolerance.
void limit_between_one_and(Series& s, double a, double tol) {
  s.low = std::min(1.0, std::exp2(a)) * (1 - tol);
  s.high = std::max(1.0, std::exp2(a)) * (1 + tol);
}

void check_p(double p, const char* what) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError(std::string(what) + " must lie in (1, inf)");
}

void check_scales(const std::vector<double>& scales) {
  if (scales.empty()) throw ParameterError("probe needs at least one scale");
  for (double s : scales)
    if (!(s >= 1.0)) throw ParameterError("scales must be >= 1");
}

ProbeReport start(const std::string& id, const std::string& tag, const TestFamily* family) {
  ProbeReport r;
  r.id = id;
  r.tag = tag;
  if (family) r.family = family->name();
  return r;
}

nlohmann::json system_json(const HoermanderSystem& s) {
  auto j = s.to_json();
  j["sobolev_index"] = s.sobolev_index();
  return j;
}

// Casimir band holding every class that meets the window 1 + L < t^2.
double window_band(const HoermanderSystem& system, double t) {
  const CompactGroup& g = system.group;
  // Sub-Laplacian eigenvalues on spin l are at least l for any bracket
  // generating pair, so spins >= t^2 never meet the window.
  const double generous = g.is_torus() ? t : spin_index(static_cast<int>(std::ceil(2 * t * t))).weight;
  const auto setup = SpectralSetup::get(system, generous);
  const auto& dec = setup->decomposition(BaseOperator::sublaplacian);
  double band = 1.0;
  for (size_t i = 0; i < setup->sublaplacian.indices.size(); ++i)
    if (1.0 + dec.values[i].minCoeff() < t * t * (1 - 1e-9)) band = std::max(band, setup->sublaplacian.indices[i].weight);
  return band;
}

}  // namespace

ProbeReport probe_nikolskii(const TestFamily& family, const NikolskiiParams& params, const std::vector<double>& scales) {
  const auto t0 = Clock::now();
  if (!(params.p > 1.0 && params.p <= params.q && std::isfinite(params.q)))
    throw ParameterError("Nikolskii probe needs 1 < p <= q < inf");
  check_scales(scales);
  const auto& system = family.system;
  const double exponent = system.hausdorff_dim * (1.0 / params.p - 1.0 / params.q);
  auto r = start("nikolskii", "nikolskii", &family);
  r.params = {{"p", params.p}, {"q", params.q}, {"system", system_json(system)}, {"predicted_exponent", exponent}};
  Series constant = series("constant", SeriesKind::asserted);
  Series raw = series("ratio", SeriesKind::info);
  std::vector<double> ts, sups;
  for (double t : scales) {
    const double band = window_band(system, t);
    const auto eval = evaluator(system, band);
    const auto window = eval.setup().function_of(BaseOperator::sublaplacian, [t](double l) {
      return (1 + l >= t * t / 4 * (1 - 1e-9) && 1 + l < t * t * (1 - 1e-9)) ? 1.0 : 0.0;
    });
    Extremes e;
    for (const auto& f : family.generate(band)) {
      const auto w = apply_multiplier(window, f);
      if (plancherel_norm(w) < 1e-12 * std::max(1.0, plancherel_norm(f))) continue;
      e.add(eval.lp(w, params.q), eval.lp(w, params.p));
    }
    if (e.count == 0) continue;
    push(raw, t, e.max, e.count);
    push(constant, t, e.max / std::pow(t, exponent), e.count);
    ts.push_back(t);
    sups.push_back(e.max);
  }
  r.series = {constant, raw};
  r.extra = {{"fitted_exponent", loglog_slope(ts, sups)}, {"predicted_exponent", exponent}};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

std::vector<ProbeReport> probe_embedding_chain(const TestFamily& family, const EmbeddingParams& pr,
                                               const std::vector<double>& scales) {
  check_scales(scales);
  const auto& system = family.system;
  const auto op = BaseOperator::sublaplacian;
  const int Q = system.hausdorff_dim;
  auto B = [&](double r, double p, double q) { return NormSpec::besov(r, p, q, op, pr.mode); };
  std::vector<ProbeReport> out;
  for (int item : pr.items) {
    const auto t0 = Clock::now();
    ProbeReport rep;
    std::vector<Series> ser;
    // Each entry: numerator and denominator norms of one series.
    std::vector<std::pair<NormSpec, NormSpec>> ratios;
    std::vector<bool> use_min;
    switch (item) {
      case 1: {
        if (!(pr.q1 <= pr.q2)) throw ParameterError("item 1 needs q1 <= q2");
        check_p(pr.p, "p");
        rep = start("embedding_chain", "besov_embedding_q_monotone", &family);
        rep.params = {{"item", 1}, {"p", pr.p}, {"r", pr.r}, {"q1", pr.q1}, {"q2", pr.q2}, {"epsilon", pr.epsilon}};
        ser = {series("q_monotone", SeriesKind::asserted), series("r_monotone", SeriesKind::asserted),
               series("reverse_q", SeriesKind::info), series("reverse_r", SeriesKind::guard)};
        ser[0].high = ser[1].high = 1 + 1e-12;
        ratios = {{B(pr.r, pr.p, pr.q2), B(pr.r, pr.p, pr.q1)},
                  {B(pr.r, pr.p, pr.q1), B(pr.r + pr.epsilon, pr.p, pr.q1)},
                  {B(pr.r, pr.p, pr.q1), B(pr.r, pr.p, pr.q2)},
                  {B(pr.r + pr.epsilon, pr.p, pr.q1), B(pr.r, pr.p, pr.q1)}};
        break;
      }
      case 2: {
        const double qa = std::max(pr.q1, pr.q2), qb = std::min(pr.q1, pr.q2);
        if (!(qb >= 1.0 && qa > qb && std::isfinite(qa) && pr.epsilon > 0))
          throw ParameterError("item 2 needs 1 <= q2 < q1 < inf and epsilon > 0");
        rep = start("embedding_chain", "besov_embedding_fine_index", &family);
        const double sigma = 1.0 / (1.0 / qb - 1.0 / qa);
        const double c = std::pow(1.0 - std::exp2(-pr.epsilon * sigma), -1.0 / sigma);
        rep.params = {{"item", 2}, {"p", pr.p}, {"r", pr.r}, {"q1", qa}, {"q2", qb}, {"epsilon", pr.epsilon}, {"holder_constant", c}};
        ser = {series("fine_index", SeriesKind::asserted), series("reverse", SeriesKind::guard)};
        ser[0].high = c * (1 + 1e-12);
        ratios = {{B(pr.r, pr.p, qb), B(pr.r + pr.epsilon, pr.p, qa)}, {B(pr.r + pr.epsilon, pr.p, qa), B(pr.r, pr.p, qb)}};
        break;
      }
      case 3: {
        if (!(pr.p1 > 1.0 && pr.p1 < pr.p2)) throw ParameterError("item 3 needs 1 < p1 < p2");
        const double r2 = pr.r - Q * (1.0 / pr.p1 - 1.0 / pr.p2);
        rep = start("embedding_chain", "besov_embedding_integrability", &family);
        rep.params = {{"item", 3}, {"p1", pr.p1}, {"p2", pr.p2}, {"q", pr.q}, {"r1", pr.r}, {"r2", r2}, {"Q", Q}};
        ser = {series("integrability", SeriesKind::asserted), series("without_loss", SeriesKind::guard)};
        ratios = {{B(r2, pr.p2, pr.q), B(pr.r, pr.p1, pr.q)}, {B(pr.r, pr.p2, pr.q), B(pr.r, pr.p1, pr.q)}};
        break;
      }
      case 4: {
        if (!(pr.p > 1.0 && pr.p <= 2.0)) throw ParameterError("item 4 needs 1 < p <= 2");
        rep = start("embedding_chain", "sobolev_besov_sandwich", &family);
        rep.params = {{"item", 4}, {"p", pr.p}, {"r", pr.r}};
        ser = {series("sobolev_over_besov_pp", SeriesKind::asserted), series("besov_p2_over_sobolev", SeriesKind::asserted)};
        if (pr.p == 2.0 && pr.mode == PartitionMode::sharp) {
          limit_between_one_and(ser[0], pr.r, 1e-12);
          limit_between_one_and(ser[1], -pr.r, 1e-12);
        }
        const auto S = NormSpec::sobolev(pr.r, pr.p, op);
        ratios = {{S, B(pr.r, pr.p, pr.p)}, {B(pr.r, pr.p, 2.0), S}};
        if (pr.p == 2.0 && pr.mode == PartitionMode::sharp) {
          // Two-sided bounds: the smallest ratios are recorded as well.
          for (int k = 0; k < 2; ++k) {
            auto low_side = ser[static_cast<size_t>(k)];
            low_side.name += "_min";
            ser.push_back(low_side);
            ratios.push_back(ratios[static_cast<size_t>(k)]);
          }
          use_min = {false, false, true, true};
        }
        break;
      }
      case 5: {
        check_p(pr.p, "p");
        if (!(pr.q_target > pr.p && std::isfinite(pr.q_target))) throw ParameterError("item 5 needs p < q < inf");
        const double order = Q * (1.0 / pr.p - 1.0 / pr.q_target);
        rep = start("embedding_chain", "besov_lq_embedding", &family);
        rep.params = {{"item", 5}, {"p", pr.p}, {"q", pr.q_target}, {"order", order}, {"Q", Q}};
        ser = {series("lq_over_besov", SeriesKind::asserted), series("besov_inf_over_lq", SeriesKind::asserted)};
        const double inf = std::numeric_limits<double>::infinity();
        ratios = {{NormSpec::lp(pr.q_target), B(order, pr.p, 1.0)}, {B(0.0, pr.q_target, inf), NormSpec::lp(pr.q_target)}};
        break;
      }
      default:
        throw ParameterError("embedding items are 1..5");
    }
    rep.params["mode"] = DyadicPartition{pr.mode}.name();
    rep.params["system"] = system_json(system);
    for (double band : scales) {
      const auto eval = evaluator(system, band);
      const auto fs = family.generate(band);
      for (size_t k = 0; k < ratios.size(); ++k) {
        Extremes e;
        for (const auto& f : fs) e.add(eval.norm(f, ratios[k].first), eval.norm(f, ratios[k].second));
        const bool smallest = k < use_min.size() && use_min[k];
        if (e.count > 0) push(ser[k], band, smallest ? e.min : e.max, e.count);
      }
    }
    rep.series = std::move(ser);
    rep.runtime_seconds = seconds_since(t0);
    out.push_back(std::move(rep));
  }
  return out;
}

ProbeReport probe_littlewood_paley(const TestFamily& family, double p, const std::vector<double>& scales,
                                   PartitionMode mode) {
  const auto t0 = Clock::now();
  check_p(p, "p");
  check_scales(scales);
  auto r = start("littlewood_paley", "littlewood_paley", &family);
  r.params = {{"p", p}, {"mode", DyadicPartition{mode}.name()}, {"system", system_json(family.system)}};
  Series upper = series("upper", SeriesKind::asserted), lower = series("lower_inverse", SeriesKind::asserted);
  Series smallest = series("min_ratio", SeriesKind::info);
  const auto F = NormSpec::triebel(0.0, p, 2.0, BaseOperator::sublaplacian, mode);
  for (double band : scales) {
    const auto eval = evaluator(family.system, band);
    Extremes e;
    for (const auto& f : family.generate(band)) e.add(eval.norm(f, F), eval.lp(f, p));
    if (e.count == 0) continue;
    push(upper, band, e.max, e.count);
    push(lower, band, 1.0 / e.min, e.count);
    push(smallest, band, e.min, e.count);
  }
  r.series = {upper, lower, smallest};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

namespace {

ProbeReport comparison(const TestFamily& family, const ComparisonParams& pr, const std::vector<double>& scales,
                       bool besov) {
  const auto t0 = Clock::now();
  check_p(pr.p, "p");
  check_scales(scales);
  if (!(pr.s >= 0)) throw ParameterError("comparison order s must be >= 0");
  if (besov && !(pr.q > 0)) throw ParameterError("q must be positive");
  const auto& system = family.system;
  const int kappa = system.step;
  const int varkappa = system.sobolev_index();
  const double target = pr.s / kappa - varkappa * (1.0 - 1.0 / kappa) * std::abs(0.5 - 1.0 / pr.p);
  auto make = [&](double order, BaseOperator op) {
    return besov ? NormSpec::besov(order, pr.p, pr.q, op, pr.mode) : NormSpec::sobolev(order, pr.p, op);
  };
  const auto sub = make(pr.s, BaseOperator::sublaplacian);
  const auto ell = make(pr.s, BaseOperator::laplacian);
  const auto ell_target = make(target, BaseOperator::laplacian);
  auto r = start(besov ? "besov_comparison" : "sobolev_comparison", besov ? "sub_vs_elliptic_besov" : "sub_vs_elliptic_sobolev",
                 &family);
  r.params = {{"p", pr.p}, {"s", pr.s}, {"kappa", kappa}, {"sobolev_index", varkappa}, {"target_order", target},
              {"system", system_json(system)}};
  if (besov) {
    r.params["q"] = pr.q;
    r.params["mode"] = DyadicPartition{pr.mode}.name();
    r.extra["block_overlap_radius"] = block_overlap_radius();
  }
  std::vector<Series> ser{series("sub_over_elliptic", SeriesKind::asserted),
                          series("elliptic_target_over_sub", SeriesKind::asserted),
                          series("elliptic_over_sub", SeriesKind::guard),
                          series("sub_over_elliptic_target", SeriesKind::guard)};
  for (double band : scales) {
    const auto eval = evaluator(system, band);
    std::vector<Extremes> e(4);
    for (const auto& f : family.generate(band)) {
      const double a = eval.norm(f, sub), b = eval.norm(f, ell), c = eval.norm(f, ell_target);
      e[0].add(a, b);
      e[1].add(c, a);
      e[2].add(b, a);
      e[3].add(a, c);
    }
    for (size_t k = 0; k < 4; ++k)
      if (e[k].count > 0) push(ser[k], band, e[k].max, e[k].count);
  }
  r.series = std::move(ser);
  r.runtime_seconds = seconds_since(t0);
  return r;
}

}  // namespace

ProbeReport probe_sobolev_comparison(const TestFamily& family, const ComparisonParams& params,
                                     const std::vector<double>& scales) {
  return comparison(family, params, scales, false);
}

ProbeReport probe_besov_comparison(const TestFamily& family, const ComparisonParams& params,
                                   const std::vector<double>& scales) {
  return comparison(family, params, scales, true);
}

MatrixSymbol psdo_symbol(const PsdoParams& params, const HoermanderSystem& system, double cutoff, std::uint64_t seed) {
  const CompactGroup& g = system.group;
  const auto colon = params.symbol.find(':');
  const std::string name = params.symbol.substr(0, colon);
  double arg = 0.0;
  if (colon != std::string::npos) {
    try {
      arg = std::stod(params.symbol.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParameterError("bad symbol argument in '" + params.symbol + "'");
    }
  }
  const auto setup = SpectralSetup::get(system, cutoff);
  MultiplierSymbol m(g, cutoff);
  if (name == "identity") {
    m = MultiplierSymbol::identity(g, cutoff);
  } else if (name == "bessel") {
    m = bessel_potential_symbol(setup->sublaplacian, arg);
  } else if (name == "elliptic_bessel") {
    m = bessel_potential_symbol(setup->laplacian, arg);
  } else if (name == "transfer") {
    m = compose(bessel_potential_symbol(setup->laplacian, arg / system.step), bessel_potential_symbol(setup->sublaplacian, -arg));
  } else if (name == "mihlin") {
    m = setup->function_of(BaseOperator::sublaplacian, [arg](double l) { return std::cos(arg * std::log1p(l)); });
  } else if (name == "random") {
    for (size_t i = 0; i < m.size(); ++i) {
      const auto& xi = m.indices[i];
      std::vector<std::uint32_t> key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(xi.twice_spin)};
      for (int k : xi.k) key.push_back(static_cast<std::uint32_t>(k));
      std::seed_seq seq(key.begin(), key.end());
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> n;
      CMatrix a(xi.dim, xi.dim);
      for (Eigen::Index e = 0; e < a.size(); ++e) a.data()[e] = cplx(n(rng), n(rng));
      const CMatrix h = 0.5 * (a + a.adjoint());
      m.blocks[i] = std::pow(xi.weight, arg) * h / h.operatorNorm();
    }
  } else {
    throw ParameterError("unknown symbol '" + params.symbol + "'");
  }
  auto sym = MatrixSymbol::from_multiplier(m);
  if (params.perturb == 0.0) return sym;
  const DualIndex carrier = g.is_torus() ? torus_index([&] {
    std::vector<int> k(static_cast<size_t>(g.dim()), 0);
    k[0] = 1;
    return k;
  }())
                                         : spin_index(1);
  const double x_band = carrier.weight;
  const auto grid = QuadratureGrid::get(g, sum_cutoff(g, cutoff, x_band));
  const double eps = params.perturb;
  return MatrixSymbol::from_function(grid, cutoff, x_band, [&](const GroupPoint& x, const DualIndex& xi) {
    const double a = g.is_torus() ? std::cos(x.x(0)) : x.u.trace().real();
    return CMatrix((1.0 + eps * a) * m.blocks[static_cast<size_t>(m.find(xi))]);
  });
}

ProbeReport probe_psdo_boundedness(const TestFamily& family, const PsdoParams& pr, const std::vector<double>& scales) {
  const auto t0 = Clock::now();
  check_scales(scales);
  const auto& system = family.system;
  const auto source = NormSpec::parse(pr.source);
  const auto target = NormSpec::parse(pr.target);
  if (!(pr.rho >= 0 && pr.rho <= 1 && pr.delta >= 0 && pr.delta <= 1)) throw ParameterError("rho and delta lie in [0, 1]");
  const int n = system.group.dim();
  const double p = target.p;
  // Elliptic source spaces take kappa = 1.
  const int kappa = source.op == BaseOperator::laplacian ? 1 : system.step;
  const double needed = n * (1 - pr.rho) * std::abs(1.0 / p - 0.5) - pr.theta / kappa;
  auto r = start("psdo_boundedness", pr.tag, &family);
  r.params = {{"symbol", pr.symbol},   {"source", source.to_string()}, {"target", target.to_string()},
              {"perturb", pr.perturb}, {"rho", pr.rho},                {"delta", pr.delta},
              {"nu", pr.order},        {"theta", pr.theta},            {"kappa", kappa},
              {"system", system_json(system)}};
  r.extra = {{"admissibility_margin", pr.order - needed}, {"required_order_bound", needed}};
  Series ratio = series("operator_ratio", SeriesKind::asserted);
  for (double band : scales) {
    const auto sym = psdo_symbol(pr, system, band, family.seed);
    const double out_band = sym.left_invariant() ? band : sum_cutoff(system.group, band, sym.x_band);
    const auto src_eval = evaluator(system, band);
    const auto dst_eval = evaluator(system, out_band);
    Extremes e;
    for (const auto& f : family.generate(band)) {
      FourierCoefficients af = sym.left_invariant() ? apply_multiplier(sym.multiplier(), f)
                                                    : forward_transform(quantize(sym, f, sym.grid), out_band);
      e.add(dst_eval.norm(af, target), src_eval.norm(f, source));
    }
    if (e.count > 0) push(ratio, band, e.max, e.count);
  }
  r.series = {ratio};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

std::vector<ProbeReport> probe_function_space_identities(const TestFamily& family, const IdentityParams& pr,
                                                         const std::vector<double>& scales) {
  check_scales(scales);
  check_p(pr.p, "p");
  if (!(pr.q > 0)) throw ParameterError("q must be positive");
  const auto& system = family.system;
  const auto op = BaseOperator::sublaplacian;
  std::vector<ProbeReport> out;

  auto t0 = Clock::now();
  auto sandwich = start("function_space_identities", "triebel_besov_sandwich", &family);
  sandwich.params = {{"p", pr.p}, {"q", pr.q}, {"r", pr.r}, {"system", system_json(system)}};
  std::vector<Series> s1{series("besov_max_over_triebel", SeriesKind::asserted),
                         series("triebel_over_besov_min", SeriesKind::asserted),
                         series("triebel_pp_over_besov_pp_max", SeriesKind::asserted),
                         series("triebel_pp_over_besov_pp_min", SeriesKind::asserted)};
  s1[0].high = s1[1].high = 1 + 1e-10;
  s1[2].low = s1[3].low = 1 - 1e-10;
  s1[2].high = s1[3].high = 1 + 1e-10;
  const auto F = NormSpec::triebel(pr.r, pr.p, pr.q, op);
  const auto Bmax = NormSpec::besov(pr.r, pr.p, std::max(pr.p, pr.q), op);
  const auto Bmin = NormSpec::besov(pr.r, pr.p, std::min(pr.p, pr.q), op);
  const auto Fpp = NormSpec::triebel(pr.r, pr.p, pr.p, op);
  const auto Bpp = NormSpec::besov(pr.r, pr.p, pr.p, op);
  for (double band : scales) {
    const auto eval = evaluator(system, band);
    std::vector<Extremes> e(3);
    for (const auto& f : family.generate(band)) {
      const double fv = eval.norm(f, F);
      e[0].add(eval.norm(f, Bmax), fv);
      e[1].add(fv, eval.norm(f, Bmin));
      e[2].add(eval.norm(f, Fpp), eval.norm(f, Bpp));
    }
    if (e[0].count == 0) continue;
    push(s1[0], band, e[0].max, e[0].count);
    push(s1[1], band, e[1].max, e[1].count);
    push(s1[2], band, e[2].max, e[2].count);
    push(s1[3], band, e[2].min, e[2].count);
  }
  sandwich.series = std::move(s1);
  sandwich.runtime_seconds = seconds_since(t0);
  out.push_back(std::move(sandwich));

  t0 = Clock::now();
  auto equiv = start("function_space_identities", "sobolev_besov_equivalence", &family);
  equiv.params = {{"p", 2.0}, {"q", 2.0}, {"orders", pr.orders}, {"mode", "sharp"}, {"system", system_json(system)}};
  std::vector<Series> s2;
  for (double s : pr.orders) {
    for (const char* which : {"max", "min"}) {
      auto ser = series("s=" + format_number(s) + ":" + which, SeriesKind::asserted);
      limit_between_one_and(ser, s, 1e-12);
      s2.push_back(ser);
    }
  }
  for (double band : scales) {
    const auto eval = evaluator(system, band);
    const auto fs = family.generate(band);
    for (size_t k = 0; k < pr.orders.size(); ++k) {
      Extremes e;
      for (const auto& f : fs)
        e.add(eval.norm(f, NormSpec::sobolev(pr.orders[k], 2.0, op)), eval.norm(f, NormSpec::besov(pr.orders[k], 2.0, 2.0, op)));
      if (e.count == 0) continue;
      push(s2[2 * k], band, e.max, e.count);
      push(s2[2 * k + 1], band, e.min, e.count);
    }
  }
  equiv.series = std::move(s2);
  equiv.runtime_seconds = seconds_since(t0);
  out.push_back(std::move(equiv));
  return out;
}

ProbeReport probe_interpolation(const TestFamily& family, const InterpolationParams& pr, const std::vector<double>& scales) {
  const auto t0 = Clock::now();
  check_scales(scales);
  if (!(pr.theta > 0 && pr.theta < 1 && pr.qbar >= 1 && pr.s > 0))
    throw ParameterError("interpolation needs 0 < theta < 1, qbar >= 1 and s > 0");
  const auto& system = family.system;
  const auto op = BaseOperator::sublaplacian;
  KFunctionalSpec spec;
  spec.x0 = NormSpec::lp(2.0);
  spec.x0.op = op;
  spec.x1 = NormSpec::sobolev(pr.s, 2.0, op);
  spec.theta = pr.theta;
  spec.qbar = pr.qbar;
  const auto besov = NormSpec::besov(pr.theta * pr.s, 2.0, pr.qbar, op);
  auto r = start("interpolation", "interpolation_k_functional", &family);
  r.params = {{"s", pr.s}, {"theta", pr.theta}, {"qbar", pr.qbar}, {"besov", besov.to_string()}, {"system", system_json(system)}};
  Series upper = series("upper_over_besov", SeriesKind::asserted), lower = series("besov_over_upper", SeriesKind::asserted);
  for (double band : scales) {
    const auto eval = evaluator(system, band);
    Extremes e;
    for (const auto& f : family.generate(band)) e.add(interpolation_norm_upper(f, spec, eval), eval.norm(f, besov));
    if (e.count == 0) continue;
    push(upper, band, e.max, e.count);
    push(lower, band, 1.0 / e.min, e.count);
  }
  r.series = {upper, lower};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

std::vector<ProbeReport> probe_symbol_order(const HoermanderSystem& system, const SymbolOrderParams& pr,
                                            const std::vector<double>& scales) {
  check_scales(scales);
  const int kappa = system.step;
  std::vector<ProbeReport> out;

  auto t0 = Clock::now();
  auto sandwich = start("symbol_order", "eigenvalue_sandwich", nullptr);
  sandwich.params = {{"kappa", kappa}, {"system", system_json(system)}};
  Series upper = series("upper", SeriesKind::asserted), lower = series("lower_inverse", SeriesKind::asserted);
  Series c = series("c", SeriesKind::info);
  upper.high = std::sqrt(2.0) * (1 + 1e-12);
  for (double band : scales) {
    const auto setup = SpectralSetup::get(system, band);
    const auto& dec = setup->decomposition(BaseOperator::sublaplacian);
    double up = 0.0, lo = 0.0;
    const auto& idx = setup->sublaplacian.indices;
    for (size_t i = 0; i < idx.size(); ++i) {
      up = std::max(up, std::sqrt(1 + dec.values[i].maxCoeff()) / idx[i].weight);
      lo = std::max(lo, std::pow(idx[i].weight, 1.0 / kappa) / std::sqrt(1 + dec.values[i].minCoeff()));
    }
    const int n = static_cast<int>(idx.size());
    push(upper, band, up, n);
    push(lower, band, lo, n);
    push(c, band, 1.0 / lo, n);
  }
  sandwich.series = {upper, lower, c};
  sandwich.runtime_seconds = seconds_since(t0);
  out.push_back(std::move(sandwich));

  t0 = Clock::now();
  auto order = start("symbol_order", "negative_power_order", nullptr);
  order.params = {{"powers", pr.powers}, {"kappa", kappa}, {"fit_min_weight", pr.fit_min_weight}, {"system", system_json(system)}};
  nlohmann::json fits = nlohmann::json::array();
  std::vector<Series> ser;
  for (double s : pr.powers) {
    auto sr = series("s=" + format_number(s), SeriesKind::asserted);
    double fit = std::numeric_limits<double>::quiet_NaN();
    for (double band : scales) {
      const auto sym = MatrixSymbol::from_multiplier(bessel_potential_symbol(SpectralSetup::get(system, band)->sublaplacian, -s));
      const auto norms = class_operator_norms(sym);
      double sup = 0.0;
      for (size_t i = 0; i < norms.size(); ++i) sup = std::max(sup, std::pow(sym.indices[i].weight, s / kappa) * norms[i]);
      push(sr, band, sup, static_cast<int>(norms.size()));
      fit = decay_exponent(sym.indices, norms, pr.fit_min_weight);
    }
    fits.push_back({{"s", s}, {"fitted_exponent", fit}, {"predicted_exponent", -s / kappa}});
    ser.push_back(std::move(sr));
  }
  order.series = std::move(ser);
  order.extra = {{"fits", fits}};
  order.runtime_seconds = seconds_since(t0);
  out.push_back(std::move(order));
  return out;
}

}  // namespace subharm
