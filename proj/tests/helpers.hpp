#pragma once

#include <random>

#include "subharm/fourier.hpp"

namespace testing_helpers {

inline subharm::FourierCoefficients random_coefficients(const subharm::CompactGroup& g, double cutoff,
                                                         unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  subharm::FourierCoefficients c(g, cutoff);
  for (auto& b : c.blocks)
    for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = subharm::cplx(n(rng), n(rng));
  return c;
}

inline double max_diff(const subharm::FourierCoefficients& a, const subharm::FourierCoefficients& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, (a.blocks[i] - b.blocks[i]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace testing_helpers
