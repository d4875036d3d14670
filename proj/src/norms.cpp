#include "subharm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace subharm {

namespace {

double parse_real(const std::string& key, const std::string& v) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError("bad value '" + v + "' for " + key);
  }
}

std::string real_text(double v) { return std::isinf(v) ? "inf" : format_number(v); }

double power_sum_norm(const std::vector<double>& a, double q) {
  if (std::isinf(q)) return a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());
  double s = 0.0;
  for (double v : a) s += std::pow(v, q);
  return std::pow(s, 1.0 / q);
}

}  // namespace

bool NormSpec::quasi() const {
  if (p < 1.0) return true;
  return (space == SpaceKind::besov || space == SpaceKind::triebel) && q < 1.0;
}

std::string NormSpec::to_string() const {
  std::ostringstream out;
  switch (space) {
    case SpaceKind::lp:
      return "L:p=" + real_text(p);
    case SpaceKind::sobolev:
      out << "S:r=" << real_text(order) << ",p=" << real_text(p);
      break;
    case SpaceKind::besov:
      out << "B:s=" << real_text(order) << ",p=" << real_text(p) << ",q=" << real_text(q);
      break;
    case SpaceKind::triebel:
      out << "F:r=" << real_text(order) << ",p=" << real_text(p) << ",q=" << real_text(q);
      break;
  }
  out << ",op=" << (op == BaseOperator::sublaplacian ? "sub" : "lap");
  if (space == SpaceKind::besov || space == SpaceKind::triebel)
    if (mode == PartitionMode::smooth) out << ",mode=smooth";
  return out.str();
}

NormSpec NormSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  NormSpec s;
  if (kind == "L") s.space = SpaceKind::lp;
  else if (kind == "S") s.space = SpaceKind::sobolev;
  else if (kind == "B") s.space = SpaceKind::besov;
  else if (kind == "F") s.space = SpaceKind::triebel;
  else throw ParseError("unknown norm kind '" + kind + "' in '" + text + "'");
  if (colon == std::string::npos) return s;
  std::istringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "p") s.p = parse_real(key, value);
    else if (key == "q") s.q = parse_real(key, value);
    else if (key == "s" || key == "r") s.order = parse_real(key, value);
    else if (key == "op") {
      if (value == "sub") s.op = BaseOperator::sublaplacian;
      else if (value == "lap") s.op = BaseOperator::laplacian;
      else throw ParseError("op must be sub or lap, got '" + value + "'");
    } else if (key == "mode") {
      if (value == "sharp") s.mode = PartitionMode::sharp;
      else if (value == "smooth") s.mode = PartitionMode::smooth;
      else throw ParseError("mode must be sharp or smooth, got '" + value + "'");
    } else {
      throw ParseError("unknown key '" + key + "' in '" + text + "'");
    }
  }
  if (!(s.p > 0) || !(s.q > 0)) throw ParseError("p and q must be positive in '" + text + "'");
  if (!std::isfinite(s.order)) throw ParseError("order must be finite in '" + text + "'");
  return s;
}

SpectralSetup::SpectralSetup(const HoermanderSystem& sys, double c)
    : system(sys),
      cutoff(c),
      laplacian(laplacian_symbol(sys.group, c)),
      sublaplacian(sublaplacian_symbol(sys, c)),
      laplacian_dec(SpectralDecomposition::of(laplacian)),
      sublaplacian_dec(SpectralDecomposition::of(sublaplacian)) {}

std::shared_ptr<const SpectralSetup> SpectralSetup::get(const HoermanderSystem& system, double cutoff) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const SpectralSetup>> cache;
  std::string key = system.group.name() + ":" + format_number(cutoff);
  for (int g : system.generators) key += ":" + std::to_string(g);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const SpectralSetup> s(new SpectralSetup(system, cutoff));
  cache.emplace(key, s);
  return s;
}

const MultiplierSymbol& SpectralSetup::symbol(BaseOperator op) const {
  return op == BaseOperator::laplacian ? laplacian : sublaplacian;
}

const SpectralDecomposition& SpectralSetup::decomposition(BaseOperator op) const {
  return op == BaseOperator::laplacian ? laplacian_dec : sublaplacian_dec;
}

MultiplierSymbol SpectralSetup::function_of(BaseOperator op, const ScalarFunction& g) const {
  return apply_scalar_function(symbol(op), decomposition(op), g);
}

const MultiplierSymbol& SpectralSetup::block(BaseOperator op, PartitionMode mode, int j) const {
  std::lock_guard lock(mutex_);
  const auto key = std::make_tuple(static_cast<int>(op), static_cast<int>(mode), j);
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return *it->second;
  const DyadicPartition partition{mode};
  auto sym = std::make_unique<MultiplierSymbol>(
      function_of(op, [j, &partition](double t) { return partition.block_of_lambda(j, t); }));
  return *blocks_.emplace(key, std::move(sym)).first->second;
}

int SpectralSetup::last_block(PartitionMode mode) const { return DyadicPartition{mode}.last_block(cutoff); }

NormEvaluator::NormEvaluator(const HoermanderSystem& system, double cutoff, GridPtr eval_grid)
    : setup_(SpectralSetup::get(system, cutoff)), grid_(std::move(eval_grid)) {
  if (!(grid_->group() == system.group)) throw ParameterError("evaluation grid lives on another group");
}

FourierCoefficients NormEvaluator::fit(const FourierCoefficients& f) const {
  if (f.cutoff > setup_->cutoff * (1 + 1e-12))
    throw BandExceeded("function cutoff " + format_number(f.cutoff) + " exceeds evaluator cutoff " +
                       format_number(setup_->cutoff));
  return f;
}

double lp_norm(const GroupFunction& f, double p) {
  const auto a = f.samples.cwiseAbs();
  if (std::isinf(p)) return a.size() ? a.maxCoeff() : 0.0;
  const RVector& w = f.grid->weights();
  if (p == 2.0) return std::sqrt((w.array() * a.array().square()).sum());
  return std::pow((w.array() * a.array().pow(p)).sum(), 1.0 / p);
}

double NormEvaluator::lp(const FourierCoefficients& f, double p) const {
  if (p == 2.0) return plancherel_norm(f);
  return lp_norm(inverse_transform(fit(f), grid_), p);
}

double NormEvaluator::sobolev(const FourierCoefficients& f, const NormSpec& spec) const {
  if (spec.order == 0.0) return lp(f, spec.p);
  const double s = spec.order;
  const auto potential = setup_->function_of(spec.op, [s](double t) { return std::pow(1.0 + t, 0.5 * s); });
  return lp(apply_multiplier(potential, fit(f)), spec.p);
}

std::vector<FourierCoefficients> NormEvaluator::blocks(const FourierCoefficients& f, BaseOperator op,
                                                       PartitionMode mode) const {
  const auto g = fit(f);
  std::vector<FourierCoefficients> out;
  const int last = setup_->last_block(mode);
  for (int j = 0; j <= last; ++j) out.push_back(apply_multiplier(setup_->block(op, mode, j), g));
  return out;
}

std::vector<double> NormEvaluator::block_norms(const FourierCoefficients& f, const NormSpec& spec) const {
  std::vector<double> out;
  const auto pieces = blocks(f, spec.op, spec.mode);
  for (size_t j = 0; j < pieces.size(); ++j)
    out.push_back(std::pow(2.0, spec.order * static_cast<double>(j)) * lp(pieces[j], spec.p));
  return out;
}

double NormEvaluator::besov(const FourierCoefficients& f, const NormSpec& spec) const {
  return power_sum_norm(block_norms(f, spec), spec.q);
}

double NormEvaluator::triebel(const FourierCoefficients& f, const NormSpec& spec) const {
  const auto pieces = blocks(f, spec.op, spec.mode);
  RVector acc = RVector::Zero(static_cast<Eigen::Index>(grid_->size()));
  for (size_t j = 0; j < pieces.size(); ++j) {
    const double scale = std::pow(2.0, spec.order * static_cast<double>(j));
    const RVector a = scale * inverse_transform(pieces[j], grid_).samples.cwiseAbs();
    if (std::isinf(spec.q)) acc = acc.cwiseMax(a);
    else acc += a.array().pow(spec.q).matrix();
  }
  if (!std::isinf(spec.q)) acc = acc.array().pow(1.0 / spec.q).matrix();
  return lp_norm(GroupFunction{grid_, acc.cast<cplx>()}, spec.p);
}

double NormEvaluator::norm(const FourierCoefficients& f, const NormSpec& spec) const {
  switch (spec.space) {
    case SpaceKind::lp: return lp(f, spec.p);
    case SpaceKind::sobolev: return sobolev(f, spec);
    case SpaceKind::besov: return besov(f, spec);
    case SpaceKind::triebel: return triebel(f, spec);
  }
  return 0.0;
}

double function_norm(const GroupFunction& f, const NormSpec& spec, const HoermanderSystem& system) {
  if (spec.space == SpaceKind::lp) return lp_norm(f, spec.p);
  const double band = f.grid->band();
  const NormEvaluator eval(system, band, f.grid);
  return eval.norm(forward_transform(f, band), spec);
}

double sobolev_norm(const GroupFunction& f, const NormSpec& spec, const HoermanderSystem& system) {
  if (spec.space != SpaceKind::sobolev) throw ParameterError("not a Sobolev norm: " + spec.to_string());
  return function_norm(f, spec, system);
}

double besov_norm(const GroupFunction& f, const NormSpec& spec, const HoermanderSystem& system) {
  if (spec.space != SpaceKind::besov) throw ParameterError("not a Besov norm: " + spec.to_string());
  return function_norm(f, spec, system);
}

double triebel_norm(const GroupFunction& f, const NormSpec& spec, const HoermanderSystem& system) {
  if (spec.space != SpaceKind::triebel) throw ParameterError("not a Triebel-Lizorkin norm: " + spec.to_string());
  return function_norm(f, spec, system);
}

double KSplits::k_upper(double t) const {
  double k = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < norm0.size(); ++i) k = std::min(k, norm0[i] + t * norm1[i]);
  return k;
}

KSplits k_splits(const FourierCoefficients& f, const KFunctionalSpec& spec, const NormEvaluator& eval) {
  const auto pieces = eval.blocks(f, spec.x0.op, PartitionMode::sharp);
  KSplits out;
  FourierCoefficients low(f.group, f.cutoff);
  for (size_t cut = 0; cut <= pieces.size(); ++cut) {
    if (cut > 0) low = low + pieces[cut - 1];
    const FourierCoefficients high = f - low;
    out.norm0.push_back(eval.norm(high, spec.x0));
    out.norm1.push_back(eval.norm(low, spec.x1));
    out.norm0.push_back(eval.norm(low, spec.x0));
    out.norm1.push_back(eval.norm(high, spec.x1));
  }
  return out;
}

double k_functional_upper(const FourierCoefficients& f, double t, const KFunctionalSpec& spec,
                          const NormEvaluator& eval) {
  return k_splits(f, spec, eval).k_upper(t);
}

double interpolation_norm_upper(const KSplits& splits, const KFunctionalSpec& spec) {
  if (!(spec.theta > 0 && spec.theta < 1)) throw ParameterError("theta must lie strictly inside (0, 1)");
  const double dlog = std::log(2.0) / spec.per_octave;
  double acc = 0.0;
  for (int k = spec.t_min_exp * spec.per_octave; k <= spec.t_max_exp * spec.per_octave; ++k) {
    const double t = std::exp2(static_cast<double>(k) / spec.per_octave);
    const double v = std::pow(t, -spec.theta) * splits.k_upper(t);
    if (std::isinf(spec.qbar)) acc = std::max(acc, v);
    else acc += std::pow(v, spec.qbar) * dlog;
  }
  return std::isinf(spec.qbar) ? acc : std::pow(acc, 1.0 / spec.qbar);
}

double interpolation_norm_upper(const FourierCoefficients& f, const KFunctionalSpec& spec, const NormEvaluator& eval) {
  return interpolation_norm_upper(k_splits(f, spec, eval), spec);
}

}  // namespace subharm
