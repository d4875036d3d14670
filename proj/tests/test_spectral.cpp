#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "subharm/spectral.hpp"

using namespace subharm;
using namespace testing_helpers;

namespace {

const HoermanderSystem& su2_sub() {
  static const auto s = HoermanderSystem::make(CompactGroup::su2(), {1, 2});
  return s;
}

CMatrix block_of(const MultiplierSymbol& s, const DualIndex& xi) { return s.blocks[static_cast<size_t>(s.find(xi))]; }

RMatrix diag(std::initializer_list<double> v) {
  RVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

}  // namespace

TEST_CASE("Laplacian symbols") {
  const auto lap = laplacian_symbol(CompactGroup::su2(), 5.0);
  CHECK((block_of(lap, spin_index(2)) - 2.0 * CMatrix::Identity(3, 3)).norm() == 0.0);
  CHECK(block_of(lap, spin_index(0))(0, 0) == 0.0);
  const auto tl = laplacian_symbol(CompactGroup::torus(1), 4.0);
  CHECK(block_of(tl, torus_index({3}))(0, 0) == 9.0);
}

TEST_CASE("sub-Laplacian symbols") {
  const auto sub = sublaplacian_symbol(su2_sub(), 12.0);
  CHECK((block_of(sub, spin_index(2)).real() - diag({1, 2, 1})).norm() < 1e-14);
  CHECK((block_of(sub, spin_index(1)).real() - diag({0.5, 0.5})).norm() < 1e-14);
  for (size_t i = 0; i < sub.size(); ++i) {
    const auto& xi = sub.indices[i];
    const CMatrix& b = sub.blocks[i];
    CHECK((b - b.adjoint()).norm() < 1e-12);
    for (int r = 0; r < xi.dim; ++r) {
      const double m = xi.spin() - r;
      CHECK(std::abs(b(r, r) - (xi.lambda - m * m)) < 1e-12);
    }
  }
  const auto t2 = sublaplacian_symbol(HoermanderSystem::full(CompactGroup::torus(2)), 6.0);
  CHECK(block_of(t2, torus_index({2, -3}))(0, 0).real() == 13.0);
}

TEST_CASE("sub-Laplacian applied to a character matches finite differences") {
  const auto su2 = CompactGroup::su2();
  const double band = 3.0;
  const auto grid = QuadratureGrid::get(su2, band);
  const auto chi = character_coefficients(su2, band, spin_index(2));
  const auto lf = inverse_transform(apply_multiplier(sublaplacian_symbol(su2_sub(), band), chi), grid);
  const double h = 1e-3;
  for (size_t x = 0; x < grid->size(); x += 11) {
    const auto p = grid->node(x);
    auto chi_at = [&](const GroupPoint& q) { return representation_matrix(su2, spin_index(2), q).trace(); };
    cplx acc = 0;
    for (int j : {1, 2}) {
      const cplx fp = chi_at(multiply(su2, p, exp_generator(su2, j, h)));
      const cplx fm = chi_at(multiply(su2, p, exp_generator(su2, j, -h)));
      acc -= (fp - 2.0 * chi_at(p) + fm) / (h * h);
    }
    CHECK(std::abs(acc - lf.samples(static_cast<Eigen::Index>(x))) < 1e-5);
  }
}

TEST_CASE("spectral decomposition and functional calculus") {
  const auto sub = sublaplacian_symbol(su2_sub(), 8.0);
  const auto dec = SpectralDecomposition::of(sub);
  CHECK(dec.reconstruction_error(sub) < 1e-10);
  for (const auto& v : dec.values)
    for (Eigen::Index i = 1; i < v.size(); ++i) CHECK(v(i - 1) <= v(i));

  const auto ones = apply_scalar_function(sub, [](double) { return 1.0; });
  for (size_t i = 0; i < ones.size(); ++i) CHECK((ones.blocks[i] - CMatrix::Identity(ones.indices[i].dim, ones.indices[i].dim)).norm() == 0.0);
  const auto same = apply_scalar_function(sub, [](double t) { return t; });
  for (size_t i = 0; i < same.size(); ++i) CHECK((same.blocks[i] - sub.blocks[i]).norm() < 1e-12);

  const auto win = apply_scalar_function(sub, [](double t) {
    const double mu = std::sqrt(1 + t);
    return mu >= 1 && mu < 2 ? 1.0 : 0.0;
  });
  CHECK((block_of(win, spin_index(2)) - CMatrix::Identity(3, 3)).norm() == 0.0);
  const auto shifted = apply_scalar_function(sub, [](double t) { return 1 + t; });
  CHECK((block_of(shifted, spin_index(2)).real() - diag({2, 3, 2})).norm() < 1e-14);

  CHECK_THROWS_AS(apply_scalar_function(sub, [](double t) { return std::pow(t, -0.5); }), DomainError);

  // A non-diagonal Hermitian symbol exercises the dense path.
  MultiplierSymbol dense = sub;
  for (size_t i = 0; i < dense.size(); ++i) {
    const int d = dense.indices[i].dim;
    CMatrix u = CMatrix::Random(d, d);
    u = Eigen::HouseholderQR<CMatrix>(u).householderQ();
    dense.blocks[i] = u * sub.blocks[i] * u.adjoint();
  }
  auto g = [](double t) { return std::exp(-0.3 * t); };
  auto h = [](double t) { return std::pow(1 + t, 0.7); };
  const auto gh = apply_scalar_function(dense, [&](double t) { return g(t) * h(t); });
  const auto ga = apply_scalar_function(dense, g), ha = apply_scalar_function(dense, h);
  for (size_t i = 0; i < dense.size(); ++i) CHECK((gh.blocks[i] - ga.blocks[i] * ha.blocks[i]).norm() < 1e-10);
  CHECK(SpectralDecomposition::of(dense).reconstruction_error(dense) < 1e-10);
}

TEST_CASE("degenerate eigenvalues are never split") {
  MultiplierSymbol s(CompactGroup::su2(), 2.0);
  CMatrix& b = s.blocks[2];  // spin 1
  b = CMatrix::Zero(3, 3);
  b.diagonal() << 3.0, 3.0 + 1e-12, 8.0;
  const auto p = dyadic_projection_symbol(s, 1, DyadicPartition{});
  CHECK(p.blocks[2](0, 0) == p.blocks[2](1, 1));
}

TEST_CASE("Bessel potentials") {
  const auto sub = sublaplacian_symbol(su2_sub(), 6.0);
  const auto b0 = bessel_potential_symbol(sub, 0.0);
  for (size_t i = 0; i < b0.size(); ++i) CHECK((b0.blocks[i] - CMatrix::Identity(b0.indices[i].dim, b0.indices[i].dim)).norm() == 0);
  const auto b1 = bessel_potential_symbol(sub, 1.0);
  CHECK((block_of(b1, spin_index(1)) - std::sqrt(1.5) * CMatrix::Identity(2, 2)).norm() < 1e-14);
  const auto b2 = bessel_potential_symbol(sub, 2.0);
  for (size_t i = 0; i < b2.size(); ++i) {
    const CMatrix expect = CMatrix::Identity(b2.indices[i].dim, b2.indices[i].dim) + sub.blocks[i];
    CHECK((b2.blocks[i] - expect).norm() < 1e-12);
  }
}

TEST_CASE("sharp dyadic projections") {
  const auto sub = sublaplacian_symbol(su2_sub(), 20.0);
  const DyadicPartition sharp;
  CHECK((block_of(dyadic_projection_symbol(sub, 0, sharp), spin_index(2)) - CMatrix::Identity(3, 3)).norm() == 0);
  const auto t1 = laplacian_symbol(CompactGroup::torus(1), 20.0);
  CHECK(block_of(dyadic_projection_symbol(t1, 1, sharp), torus_index({2}))(0, 0) == 1.0);

  for (const auto* sym : {&sub, &t1}) {
    const int last = sharp.last_block(20.0);
    std::vector<MultiplierSymbol> p;
    for (int l = 0; l <= last + 1; ++l) p.push_back(dyadic_projection_symbol(*sym, l, sharp));
    for (size_t i = 0; i < sym->size(); ++i) {
      const int d = sym->indices[i].dim;
      CMatrix total = CMatrix::Zero(d, d);
      for (size_t l = 0; l < p.size(); ++l) {
        const CMatrix& pl = p[l].blocks[i];
        total += pl;
        CHECK((pl * pl - pl).norm() < 1e-10);
        CHECK((pl - pl.adjoint()).norm() < 1e-10);
        for (size_t k = l + 1; k < p.size(); ++k) CHECK((pl * p[k].blocks[i]).norm() < 1e-10);
      }
      CHECK((total - CMatrix::Identity(d, d)).norm() < 1e-10);
    }
  }
  // Left-closed windows: mu = 2 exactly belongs to block 1.
  CHECK(DyadicPartition::sharp_block(3.0) == 1);
  CHECK(DyadicPartition::sharp_block(3.0 - 1e-12) == 1);
  CHECK(DyadicPartition::sharp_block(2.9) == 0);
  CHECK(DyadicPartition::sharp_block(0.0) == 0);
}

TEST_CASE("smooth partition of unity") {
  const DyadicPartition smooth{PartitionMode::smooth};
  CHECK(DyadicPartition::profile(0.5) == 1.0);
  CHECK(DyadicPartition::profile(-1.0) == 1.0);
  CHECK(DyadicPartition::profile(2.0) == 0.0);
  CHECK(DyadicPartition::profile(-3.0) == 0.0);
  for (double t = 1.0; t < 600.0; t *= 1.0137) {
    double s = 0;
    for (int j = 0; j <= smooth.last_block(t) + 2; ++j) s += smooth.block(j, t);
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
  // |psi_j^{(a)}| <= C_a 2^{-aj}: the scaled sup is the same for every j >= 1.
  for (int a = 1; a <= 2; ++a) {
    std::vector<double> scaled;
    for (int j = 1; j <= 6; ++j) {
      const double h = std::ldexp(1e-4, j);
      double sup = 0;
      for (double t = std::ldexp(1.0, j - 1); t <= std::ldexp(1.0, j + 1); t += h) {
        const double d = a == 1 ? (smooth.block(j, t + h) - smooth.block(j, t - h)) / (2 * h)
                                : (smooth.block(j, t + h) - 2 * smooth.block(j, t) + smooth.block(j, t - h)) / (h * h);
        sup = std::max(sup, std::abs(d));
      }
      scaled.push_back(sup * std::ldexp(1.0, a * j));
    }
    for (double v : scaled) CHECK(v == doctest::Approx(scaled[0]).epsilon(0.02));
  }
  const auto sub = sublaplacian_symbol(su2_sub(), 10.0);
  MultiplierSymbol total(sub.group, sub.cutoff);
  for (int j = 0; j <= smooth.last_block(10.0); ++j) {
    const auto p = dyadic_projection_symbol(sub, j, smooth);
    for (size_t i = 0; i < total.size(); ++i) total.blocks[i] += p.blocks[i];
  }
  for (size_t i = 0; i < total.size(); ++i)
    CHECK((total.blocks[i] - CMatrix::Identity(total.indices[i].dim, total.indices[i].dim)).norm() < 1e-12);
}

TEST_CASE("block overlap radius by support arithmetic") {
  CHECK(block_overlap_radius() == 2);
  const DyadicPartition smooth{PartitionMode::smooth}, sharp;
  // Sampling cross-check: psi~_j psi_j' vanishes for |j - j'| >= 2.
  for (int j = 0; j < 8; ++j)
    for (int jp = 0; jp < 8; ++jp)
      if (std::abs(j - jp) >= 2)
        for (double t = 1.0; t < 1024; t *= 1.01) CHECK(smooth.block(j, t) * sharp.block(jp, t) == 0.0);
  bool adjacent_meet = false;
  for (double t = 1.0; t < 16; t *= 1.01) adjacent_meet |= smooth.block(2, t) * sharp.block(1, t) != 0.0;
  CHECK(adjacent_meet);
}

TEST_CASE("Bessel potentials commute with dyadic projections") {
  const auto sub = sublaplacian_symbol(su2_sub(), 10.0);
  const auto b = bessel_potential_symbol(sub, 1.3);
  for (auto mode : {PartitionMode::sharp, PartitionMode::smooth}) {
    for (int l = 0; l < 4; ++l) {
      const auto p = dyadic_projection_symbol(sub, l, DyadicPartition{mode});
      for (size_t i = 0; i < sub.size(); ++i)
        CHECK((b.blocks[i] * p.blocks[i] - p.blocks[i] * b.blocks[i]).norm() < 1e-10);
    }
  }
}

TEST_CASE("apply_multiplier") {
  const auto g = CompactGroup::su2();
  const auto c = random_coefficients(g, 5.0, 3);
  CHECK(max_diff(apply_multiplier(MultiplierSymbol::identity(g, 5.0), c), c) == 0.0);
  CHECK(plancherel_norm(apply_multiplier(MultiplierSymbol(g, 5.0), c)) == 0.0);
  CHECK_THROWS_AS(apply_multiplier(MultiplierSymbol::identity(g, 3.0), c), CutoffMismatch);
  CHECK_NOTHROW(apply_multiplier(MultiplierSymbol::identity(g, 8.0), c));
}

TEST_CASE("scalar function registry") {
  CHECK(scalar_function_from_name("identity")(3.0) == 3.0);
  CHECK(scalar_function_from_name("bessel:2")(3.0) == doctest::Approx(4.0));
  CHECK(scalar_function_from_name("heat:0.5")(2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(scalar_function_from_name("dyadic:1")(3.0) == 1.0);
  CHECK(scalar_function_from_name("dyadic:1")(2.0) == 0.0);
  CHECK(scalar_function_from_name("smooth:0")(0.0) == 1.0);
  CHECK_THROWS_AS(scalar_function_from_name("cosh:1"), ParseError);
  CHECK_THROWS_AS(scalar_function_from_name("dyadic:1.5"), ParseError);
  CHECK_THROWS_AS(scalar_function_from_name("bessel:x"), ParseError);
}
