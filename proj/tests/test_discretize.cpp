#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ptspec/dense_eigen.hpp"
#include "ptspec/grid.hpp"
#include "ptspec/hamiltonian.hpp"

using namespace ptspec;

namespace {

const Potential kFree = Potential::custom("free", [](double) { return cplx{}; });

Potential random_pt_polynomial(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c2 = 1.0 + std::fabs(u(rng));
  const double c4 = 0.2 * std::fabs(u(rng));
  const double d1 = u(rng);
  const double d3 = u(rng);
  return Potential::custom("random pt", [=](double x) {
    const double ax = std::fabs(x);
    const double s = x < 0 ? -1.0 : 1.0;
    return cplx(c2 * ax * ax + c4 * ax * ax * ax * ax, s * (d1 * ax + d3 * ax * ax * ax));
  });
}

}  // namespace

TEST(Grid, SymmetricExample) {
  const Grid g = build_grid({-10.0, 10.0, 2001, true, std::nullopt});
  EXPECT_EQ(g.kind(), GridKind::FullLineBox);
  EXPECT_NEAR(g.spacing(), 0.01, 1e-15);
  EXPECT_EQ(g.x(1000), 0.0);
  for (int j = 0; j < g.size(); ++j) EXPECT_EQ(g.x(j), -g.x(g.size() - 1 - j));
}

TEST(Grid, HalfLineExample) {
  const Grid g = build_grid({0.01, 20.0, 2000, false, 0.01});
  EXPECT_EQ(g.kind(), GridKind::HalfLineCutoff);
  EXPECT_EQ(g.x(0), 0.01);
  EXPECT_EQ(g.cutoff().value(), 0.01);
  EXPECT_DOUBLE_EQ(g.x(g.size() - 1), 20.0);
}

TEST(Grid, EvenSymmetricRejected) {
  EXPECT_THROW(build_grid({-5.0, 5.0, 4, true, std::nullopt}), DomainError);
}

TEST(Grid, InconsistentBoundsRejected) {
  EXPECT_THROW(build_grid({5.0, -5.0, 11, false, std::nullopt}), DomainError);
  EXPECT_THROW(build_grid({-5.0, 5.0, 2, false, std::nullopt}), DomainError);
  EXPECT_THROW(Grid::half_line(0.0, 10.0, 100), DomainError);
  EXPECT_THROW(build_grid({-4.0, 5.0, 11, true, std::nullopt}), DomainError);
}

TEST(Grid, RefineCoarsenEnlarge) {
  const Grid g = Grid::full_line(10.0, 801);
  EXPECT_EQ(g.refined().size(), 1601);
  EXPECT_EQ(g.coarsened().size(), 401);
  const Grid big = g.enlarged(1.25);
  EXPECT_EQ(big.size(), 1001);
  EXPECT_DOUBLE_EQ(big.spacing(), g.spacing());
  EXPECT_DOUBLE_EQ(big.x_max(), 12.5);
  const Grid h = Grid::half_line(0.01, 10.0, 1001).enlarged(1.25);
  EXPECT_EQ(h.x_min(), 0.01);
  EXPECT_EQ(h.size(), 1251);
}

TEST(Hamiltonian, FreeLaplacianThreeInteriorNodes) {
  const BandedMatrix m = assemble_hamiltonian(kFree, Grid::interval(0.0, 4.0, 5));
  ASSERT_EQ(m.order(), 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double expect = i == j ? 2.0 : (std::abs(i - j) == 1 ? -1.0 : 0.0);
      EXPECT_EQ(m(i, j), cplx(expect));
    }
  }
}

TEST(Hamiltonian, DiagonalCarriesPotential) {
  const Potential v = Potential::custom("x^2", [](double x) { return cplx(x * x); });
  const Grid g = Grid::full_line(2.0, 9);
  const BandedMatrix m = assemble_hamiltonian(v, g);
  const double h = g.spacing();
  for (int i = 0; i < m.order(); ++i) {
    const double x = g.x(i + 1);
    EXPECT_DOUBLE_EQ(m(i, i).real(), 2.0 / (h * h) + x * x);
  }
}

TEST(Hamiltonian, FivePointInteriorRows) {
  const Grid g = Grid::interval(0.0, 8.0, 9);
  const BandedMatrix m = assemble_hamiltonian(kFree, g, Stencil::FivePoint);
  ASSERT_EQ(m.bandwidth(), 2);
  const double c = 1.0 / 12.0;
  EXPECT_DOUBLE_EQ(m(3, 3).real(), 30 * c);
  EXPECT_DOUBLE_EQ(m(3, 4).real(), -16 * c);
  EXPECT_DOUBLE_EQ(m(3, 5).real(), c);
  EXPECT_DOUBLE_EQ(m(0, 0).real(), 29 * c);
  EXPECT_DOUBLE_EQ(m(6, 6).real(), 29 * c);
}

TEST(Hamiltonian, ComplexSymmetric) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const Potential v = random_pt_polynomial(rng);
    for (Stencil s : {Stencil::ThreePoint, Stencil::FivePoint}) {
      const BandedMatrix m = assemble_hamiltonian(v, Grid::full_line(4.0, 41), s);
      for (int i = 0; i < m.order(); ++i) {
        for (int j = 0; j < m.order(); ++j) EXPECT_EQ(m(i, j), m(j, i));
      }
    }
  }
}

TEST(Hamiltonian, RealPotentialGivesExactPtSymmetry) {
  const Potential v = Potential::custom("x^2", [](double x) { return cplx(x * x); });
  const BandedMatrix m = assemble_hamiltonian(v, Grid::full_line(10.0, 201));
  EXPECT_TRUE(m.is_real());
  EXPECT_TRUE(m.is_pt_symmetric());
}

TEST(Hamiltonian, ImaginaryCubicExactPtSymmetryByComparison) {
  const Potential v = Potential::custom("ix^3", [](double x) {
    const double ax = std::fabs(x);
    return cplx(0.0, (x < 0 ? -1.0 : 1.0) * ax * ax * ax);
  });
  for (Stencil s : {Stencil::ThreePoint, Stencil::FivePoint}) {
    const BandedMatrix m = assemble_hamiltonian(v, Grid::full_line(5.0, 101), s);
    const int n = m.order();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) EXPECT_EQ(m(i, j), std::conj(m(n - 1 - i, n - 1 - j)));
    }
    EXPECT_EQ(m.pt_defect(), 0.0);
  }
}

TEST(Hamiltonian, BuiltinFamiliesExactPtSymmetry) {
  for (Family f : builtin_families()) {
    if (is_singular_family(f)) continue;
    for (Stencil s : {Stencil::ThreePoint, Stencil::FivePoint}) {
      const BandedMatrix m = assemble_hamiltonian(Potential::make(f), Grid::full_line(7.0, 141), s);
      EXPECT_TRUE(m.is_pt_symmetric()) << family_name(f);
    }
  }
}

TEST(Hamiltonian, RandomPtPotentialsExactPtSymmetry) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const Potential v = random_pt_polynomial(rng);
    const BandedMatrix m = assemble_hamiltonian(v, Grid::full_line(3.0, 61), Stencil::FivePoint);
    EXPECT_TRUE(m.is_pt_symmetric());
  }
}

TEST(Hamiltonian, SingularNodeNamed) {
  const Potential v = Potential::make(Family::InversePower1);
  try {
    assemble_hamiltonian(v, Grid::full_line(1.0, 11));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("node 5"), std::string::npos) << e.what();
  }
}

TEST(Hamiltonian, SingularWallNodeAllowed) {
  const Potential v = Potential::make(Family::InversePower1);
  EXPECT_NO_THROW(assemble_hamiltonian(v, Grid::interval(0.0, 2.0, 21)));
}

// Observed convergence order of the free box spectrum k^2 on [0, pi].
TEST(Hamiltonian, FreeBoxConvergenceOrder) {
  for (Stencil s : {Stencil::ThreePoint, Stencil::FivePoint}) {
    std::vector<double> err;
    for (int n : {81, 161}) {
      const Spectrum sp = dense_eigenvalues(assemble_hamiltonian(kFree, Grid::interval(0.0, std::numbers::pi, n), s));
      double e = 0.0;
      for (int k = 1; k <= 3; ++k) e = std::max(e, std::fabs(sp.values[k - 1].real() - k * k));
      err.push_back(e);
    }
    const double order = std::log2(err[0] / err[1]);
    EXPECT_GE(order, s == Stencil::ThreePoint ? 1.9 : 3.8) << stencil_name(s);
  }
}
