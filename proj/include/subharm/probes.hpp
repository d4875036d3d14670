#pragma once

#include <optional>

#include "subharm/harness.hpp"
#include "subharm/pseudodiff.hpp"

namespace subharm {

/// Nikolskii: per scale t, members projected onto the window [t/2, t) of
/// (1 + L)^{1/2}; constant sup ||f||_q / (t^{Q(1/p-1/q)} ||f||_p).
struct NikolskiiParams {
  double p = 2.0;
  double q = 4.0;
};
ProbeReport probe_nikolskii(const TestFamily& family, const NikolskiiParams& params, const std::vector<double>& scales);

/// Items of the Besov embedding theorem; scales are bands.
struct EmbeddingParams {
  std::vector<int> items{1, 2, 3, 4, 5};
  double p = 2.0;
  double r = 1.0;
  double q1 = 1.0;
  double q2 = 2.0;
  double epsilon = 0.5;
  double p1 = 2.0;
  double p2 = 4.0;
  double q = 1.0;
  /// Target integrability for item 5.
  double q_target = 4.0;
  PartitionMode mode = PartitionMode::sharp;
};
std::vector<ProbeReport> probe_embedding_chain(const TestFamily& family, const EmbeddingParams& params,
                                               const std::vector<double>& scales);

/// F^0_{p,2} / L^p, largest and (inverted) smallest over the family.
ProbeReport probe_littlewood_paley(const TestFamily& family, double p, const std::vector<double>& scales,
                                   PartitionMode mode = PartitionMode::sharp);

struct ComparisonParams {
  double p = 2.0;
  double q = 2.0;
  double s = 2.0;
  PartitionMode mode = PartitionMode::sharp;
};

/// L^p_s -> L^{p,L}_s -> L^p_{s'} with s' = s/kappa - k(1 - 1/kappa)|1/2 - 1/p|.
ProbeReport probe_sobolev_comparison(const TestFamily& family, const ComparisonParams& params,
                                     const std::vector<double>& scales);
/// The same chain for B_{p,q}; records the block overlap radius.
ProbeReport probe_besov_comparison(const TestFamily& family, const ComparisonParams& params,
                                   const std::vector<double>& scales);

/// Symbol registry for the boundedness probes, as "name" or "name:arg":
///   identity; bessel:t = (1 + L)^{t/2}; elliptic_bessel:t = (1 + L_G)^{t/2};
///   transfer:s = (1 + L_G)^{s/(2 kappa)} (1 + L)^{-s/2};
///   random:m = random Hermitian blocks scaled by <xi>^m (seeded);
///   mihlin:a = cos(a log(1 + L)).
/// `perturb` > 0 multiplies the symbol by (1 + perturb Re chi_{1/2}(x)) (su2)
/// or (1 + perturb cos x_1) (torus), making it x-dependent.
/// The report carries the margin nu - [n(1 - rho)|1/p - 1/2| - theta/kappa],
/// with p the target's and kappa = 1 when the source space is elliptic.
struct PsdoParams {
  std::string symbol = "identity";
  std::string source = "L:p=2";
  std::string target = "L:p=2";
  double perturb = 0.0;
  double rho = 1.0;
  double delta = 0.0;
  double order = 0.0;   // nu
  double theta = 0.0;   // smoothing order of the source space
  std::string tag = "psdo_sobolev";
};
MatrixSymbol psdo_symbol(const PsdoParams& params, const HoermanderSystem& system, double cutoff,
                         std::uint64_t seed);
ProbeReport probe_psdo_boundedness(const TestFamily& family, const PsdoParams& params,
                                   const std::vector<double>& scales);

/// Exact relations between the scales of spaces: B_{p,max(p,q)} <= F_{p,q} <=
/// B_{p,min(p,q)}, F_{p,p} = B_{p,p}, and H^s against B^s_{2,2}.
struct IdentityParams {
  double p = 2.0;
  double q = 2.0;
  double r = 1.0;
  std::vector<double> orders{-2.0, -1.0, 1.0, 2.0};
};
std::vector<ProbeReport> probe_function_space_identities(const TestFamily& family, const IdentityParams& params,
                                                         const std::vector<double>& scales);

/// Upper bound for the (theta, qbar) interpolation norm of (L^2, H^{s,L})
/// against the B^{theta s}_{2,qbar} norm.
struct InterpolationParams {
  double s = 2.0;
  double theta = 0.5;
  double qbar = 2.0;
};
ProbeReport probe_interpolation(const TestFamily& family, const InterpolationParams& params,
                                const std::vector<double>& scales);

/// Eigenvalue sandwich <xi>^{1/kappa} <~ (1 + nu^2)^{1/2} <= sqrt 2 <xi>, and
/// the order -s/kappa of (1 + L)^{-s/2}; scales are bands, no family.
struct SymbolOrderParams {
  std::vector<double> powers{1.0, 2.0};
  double fit_min_weight = 2.0;
};
std::vector<ProbeReport> probe_symbol_order(const HoermanderSystem& system, const SymbolOrderParams& params,
                                            const std::vector<double>& scales);

}  // namespace subharm
