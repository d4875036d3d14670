#pragma once

#include <random>

#include <Eigen/Dense>

#include "subharm/dual.hpp"

namespace subharm {

/// A point of the group. Torus points are angle vectors in [0, 2pi)^n; SU(2)
/// points are unitary matrices [[a, b], [-conj(b), conj(a)]].
struct GroupPoint {
  RVector x;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
};

GroupPoint identity_point(const CompactGroup& group);
GroupPoint multiply(const CompactGroup& group, const GroupPoint& a, const GroupPoint& b);
GroupPoint inverse(const CompactGroup& group, const GroupPoint& a);

/// exp(t X_j) for the 1-based basis element X_j.
GroupPoint exp_generator(const CompactGroup& group, int j, double t);

/// exp(alpha X_3) exp(beta X_2) exp(gamma X_3).
GroupPoint euler_point(double alpha, double beta, double gamma);
RVector euler_angles(const GroupPoint& g);

GroupPoint random_point(const CompactGroup& group, std::mt19937_64& rng);

/// Angular momentum matrices J_1, J_2, J_3 for spin twice_spin/2 in the weight
/// basis ordered m = l, l-1, ..., -l.
CMatrix spin_matrix(int twice_spin, int axis);

/// d(xi)(X_j): torus i k_j; SU(2) -i J_j.
CMatrix derived_representation(const CompactGroup& group, const DualIndex& xi, int j);

/// The Wigner matrix d^l(beta) = exp(-i beta J_2), real orthogonal.
RMatrix wigner_small_d(int twice_spin, double beta);

/// D^l(U) by the explicit binomial sum in the entries of U.
CMatrix wigner_explicit(int twice_spin, const Eigen::Matrix2cd& u);

/// D^l(U) through Euler angles and the spectral form of exp(-i beta J_2).
CMatrix wigner_euler(int twice_spin, const Eigen::Matrix2cd& u);

/// Spins up to this value use the explicit sum; larger spins use the Euler form.
constexpr int kExplicitSumMaxTwiceSpin = 24;

CMatrix representation_matrix(const CompactGroup& group, const DualIndex& xi, const GroupPoint& g);

}  // namespace subharm
