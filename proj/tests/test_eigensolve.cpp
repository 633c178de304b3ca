#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ptspec/analysis.hpp"
#include "ptspec/classify.hpp"
#include "ptspec/dense_eigen.hpp"
#include "ptspec/shooting.hpp"

using namespace ptspec;

namespace {

const Potential kHarmonic = Potential::custom("x^2", [](double x) { return cplx(x * x); });

Potential pt_polynomial(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c2 = 1.0 + std::fabs(u(rng));
  const double d1 = u(rng);
  const double d3 = 0.5 * u(rng);
  return Potential::custom("random pt", [=](double x) {
    const double ax = std::fabs(x);
    const double s = x < 0 ? -1.0 : 1.0;
    return cplx(c2 * ax * ax, s * (d1 * ax + d3 * ax * ax * ax));
  });
}

// Largest distance in a greedy one-to-one matching of `a` against conj(a).
double conjugate_closure_defect(const std::vector<cplx>& a) {
  std::vector<bool> used(a.size(), false);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t best = a.size();
    double d = INFINITY;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (used[j]) continue;
      const double dj = std::abs(a[i] - std::conj(a[j]));
      if (dj < d) {
        d = dj;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace

TEST(DenseEigen, Exchange2x2) {
  BandedMatrix m(2, 1);
  m.band(1)[0] = 1.0;
  const Spectrum s = dense_eigenvalues(m);
  ASSERT_EQ(s.values.size(), 2u);
  EXPECT_NEAR(s.values[0].real(), -1.0, 1e-15);
  EXPECT_NEAR(s.values[1].real(), 1.0, 1e-15);
}

TEST(DenseEigen, ComplexDiagonal) {
  BandedMatrix m(2, 0);
  m.band(0) = {cplx(1.0, 2.0), cplx(3.0, 0.0)};
  const Spectrum s = dense_eigenvalues(m);
  EXPECT_EQ(s.route, EigenRoute::GeneralComplex);
  EXPECT_LT(std::abs(s.values[0] - cplx(1.0, 2.0)), 1e-15);
  EXPECT_LT(std::abs(s.values[1] - cplx(3.0, 0.0)), 1e-15);
}

TEST(DenseEigen, HarmonicLowestSix) {
  const Spectrum s = dense_eigenvalues(assemble_hamiltonian(kHarmonic, Grid::full_line(10.0, 2001)));
  EXPECT_EQ(s.route, EigenRoute::RealSymmetric);
  for (int k = 0; k < 6; ++k) {
    EXPECT_LT(std::fabs(s.values[k].real() - (2 * k + 1)) / (2 * k + 1), 5e-4) << k;
    EXPECT_EQ(s.values[k].imag(), 0.0);
  }
}

TEST(DenseEigen, SortedByRealThenImaginary) {
  std::mt19937_64 rng(5);
  const BandedMatrix m = assemble_hamiltonian(pt_polynomial(rng), Grid::full_line(4.0, 81));
  const Spectrum s = dense_eigenvalues(m);
  for (std::size_t k = 1; k < s.values.size(); ++k) {
    const cplx a = s.values[k - 1];
    const cplx b = s.values[k];
    EXPECT_TRUE(a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag()));
  }
}

TEST(DenseEigen, BackwardErrorOfSpotCheckedPairs) {
  const Potential v = Potential::make(Family::PoeschlTeller1);
  const BandedMatrix m = assemble_hamiltonian(v, Grid::full_line(15.0, 401), Stencil::FivePoint);
  DenseOptions o;
  o.want_vectors = true;
  const Spectrum s = dense_eigenvalues(m, o);
  for (std::size_t k : {0u, 1u, 2u, 50u, 200u}) {
    EXPECT_LE(backward_error(m, s.values[k], s.vectors[k]), 1e-10) << k;
  }
}

TEST(DenseEigen, GeneralPathAgreesWithStructuredRoute) {
  const Potential v = Potential::make(Family::CubicOsc);
  const BandedMatrix m = assemble_hamiltonian(v, Grid::full_line(6.0, 121), Stencil::FivePoint);
  const Spectrum a = dense_eigenvalues(m);
  DenseOptions o;
  o.path = EigenPath::General;
  const Spectrum b = dense_eigenvalues(m, o);
  EXPECT_EQ(a.route, EigenRoute::PTReal);
  EXPECT_EQ(b.route, EigenRoute::GeneralComplex);
  for (int k = 0; k < 5; ++k) EXPECT_LT(std::abs(a.values[k] - b.values[k]), 1e-8) << k;
}

TEST(DenseEigen, DenseCapEnforcedOnDenseRoutes) {
  const BandedMatrix m = assemble_hamiltonian(Potential::make(Family::CubicOsc), Grid::full_line(5.0, 51));
  DenseOptions o;
  o.dense_cap = 10;
  EXPECT_THROW(dense_eigenvalues(m, o), SolverError);
  const BandedMatrix r = assemble_hamiltonian(kHarmonic, Grid::full_line(5.0, 51));
  EXPECT_NO_THROW(dense_eigenvalues(r, o));
}

TEST(DenseEigen, ConjugationClosureForRandomPtMatrices) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 12; ++trial) {
    const Potential v = pt_polynomial(rng);
    const Stencil st = trial % 2 ? Stencil::FivePoint : Stencil::ThreePoint;
    const BandedMatrix m = assemble_hamiltonian(v, Grid::full_line(5.0, 201 + 2 * trial), st);
    ASSERT_TRUE(m.is_pt_symmetric());
    EXPECT_LT(conjugate_closure_defect(dense_eigenvalues(m).values), 1e-9) << trial;
  }
}

TEST(Shooting, HarmonicGroundStateResidual) {
  const Grid g = Grid::full_line(10.0, 801);
  EXPECT_LT(std::abs(shooting_residual(kHarmonic, g, 1.0)), 1e-6);
  EXPECT_GT(std::abs(shooting_residual(kHarmonic, g, 0.0)), 1e-2);
  const cplx r = shooting_residual(kHarmonic, g, {1.0, 0.5});
  EXPECT_GT(std::abs(r), 1e-3);
  EXPECT_NE(r.imag(), 0.0);
}

TEST(Shooting, RefineHarmonicFromBelow) {
  const cplx e = refine_eigen_shooting(kHarmonic, Grid::full_line(10.0, 801), 0.9);
  EXPECT_NEAR(e.real(), 1.0, 1e-8);
  EXPECT_NEAR(e.imag(), 0.0, 1e-8);
}

TEST(Shooting, RefinePoeschlTeller2Ground) {
  const Potential v = Potential::make(Family::PoeschlTeller2, {{"mu", 1.0}, {"lambdatilde", 3.0}});
  const cplx e = refine_eigen_shooting(v, Grid::full_line(15.0, 601), -3.7);
  EXPECT_NEAR(e.real(), -3.75, 1e-6);
  EXPECT_NEAR(e.imag(), 0.0, 1e-6);
}

// Both engines on H = p^2 + i x^3; the matrix value seeds the shooting.
TEST(Shooting, ImaginaryCubicGroundStateCrossValidated) {
  const Potential v = Potential::make(Family::CubicOsc, {{"mu", 0.0}, {"g", 1.0}});
  const Grid g = Grid::full_line(8.0, 801);
  const Spectrum s = dense_eigenvalues(assemble_hamiltonian(v, g, Stencil::FivePoint));
  const cplx e = refine_eigen_shooting(v, g, s.values[0]);
  EXPECT_NEAR(e.real(), 1.15627, 1e-5);
  EXPECT_LT(std::fabs(e.imag()), 1e-8);
  EXPECT_LT(std::abs(e - s.values[0]), 1e-4);
}

TEST(Shooting, NonFiniteEnergyRejected) {
  EXPECT_THROW(shooting_residual(kHarmonic, Grid::full_line(5.0, 101), {NAN, 0.0}), DomainError);
}

TEST(Shooting, RefinementFailureReported) {
  ShootingOptions o;
  o.search_radius = 1e-3;
  EXPECT_THROW(refine_eigen_shooting(kHarmonic, Grid::full_line(10.0, 401), 2.0, o), SolverError);
}

TEST(Shooting, MatchingNodeAtWellBottom) {
  const Grid g = Grid::full_line(10.0, 401);
  EXPECT_EQ(default_matching_node(kHarmonic, g), 200);
  const Potential shifted = Potential::custom("(x-2)^2", [](double x) { return cplx((x - 2) * (x - 2)); });
  EXPECT_NEAR(g.x(default_matching_node(shifted, g)), 2.0, 1e-12);
}

TEST(Shooting, RectangleScanFindsHarmonicLevels) {
  const auto roots = rectangle_scan(kHarmonic, Grid::full_line(8.0, 321), {0.0, -0.5}, {6.0, 0.5}, 31, 5);
  ASSERT_GE(roots.size(), 3u);
  EXPECT_NEAR(roots[0].real(), 1.0, 1e-6);
  EXPECT_NEAR(roots[1].real(), 3.0, 1e-6);
  EXPECT_NEAR(roots[2].real(), 5.0, 1e-6);
}

TEST(Classify, NearlyRealValuesAreReal) {
  Spectrum s;
  s.values = {1.0, {2.0, 1e-12}};
  const SpectrumReport r = classify_spectrum(s);
  EXPECT_EQ(r.entries[0].cls, EigenClass::Real);
  EXPECT_EQ(r.entries[1].cls, EigenClass::Real);
}

TEST(Classify, ConjugatePairAndReal) {
  Spectrum s;
  s.values = {{1.0, -1.0}, {1.0, 1.0}, 3.0};
  const SpectrumReport r = classify_spectrum(s);
  EXPECT_EQ(r.entries[0].cls, EigenClass::ConjugatePair);
  EXPECT_EQ(r.entries[1].cls, EigenClass::ConjugatePair);
  EXPECT_EQ(r.entries[0].partner, 1);
  EXPECT_EQ(r.entries[1].partner, 0);
  EXPECT_EQ(r.entries[2].cls, EigenClass::Real);
  EXPECT_EQ(r.count(EigenClass::ConjugatePair), 2);
}

TEST(Classify, UnpartneredComplexValue) {
  Spectrum s;
  s.values = {{1.0, 1.0}, {5.0, -2.0}};
  const SpectrumReport r = classify_spectrum(s);
  EXPECT_EQ(r.entries[0].cls, EigenClass::Complex);
  EXPECT_EQ(r.entries[1].cls, EigenClass::Complex);
}

TEST(Classify, PairPartnersAreConjugateWithinTolerance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  Spectrum s;
  for (int k = 0; k < 40; ++k) {
    const cplx z{u(rng), u(rng)};
    s.values.push_back(z);
    s.values.push_back(std::conj(z) + cplx(1e-9, 0.0));
  }
  const SpectrumReport r = classify_spectrum(s);
  for (const auto& e : r.entries) {
    ASSERT_EQ(e.cls, EigenClass::ConjugatePair);
    const cplx p = r.entries[static_cast<std::size_t>(e.partner)].energy;
    EXPECT_LT(std::abs(e.energy - std::conj(p)), 1e-4 * (1 + std::abs(e.energy)));
  }
}

TEST(Classify, BoundaryMassFlagsSpurious) {
  Spectrum s;
  s.values = {1.0, 2.0};
  std::vector<cplx> centre(100, 0.0);
  centre[50] = 1.0;
  std::vector<cplx> edge(100, 0.0);
  edge[1] = 1.0;
  s.vectors = {centre, edge};
  s.condition = {1.0, 1.0};
  const SpectrumReport r = classify_spectrum(s);
  EXPECT_EQ(r.entries[0].cls, EigenClass::Real);
  EXPECT_EQ(r.entries[1].cls, EigenClass::Spurious);
  EXPECT_NEAR(r.entries[1].boundary_mass, 1.0, 1e-15);
  ClassifyContext half;
  half.left_edge_open = false;
  EXPECT_EQ(classify_spectrum(s, {}, half).entries[1].cls, EigenClass::Real);
}

TEST(Classify, ImaginaryCubicBoxSpectrum) {
  const Potential v = Potential::make(Family::CubicOsc, {{"mu", 0.0}, {"g", 1.0}});
  SolverOptions o;
  const SpectrumReport r = analyze_spectrum(v, Grid::full_line(8.0, 401), o);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(r.entries[static_cast<std::size_t>(k)].cls, EigenClass::Real) << k;
  // Box modes dominate the middle of the spectrum; the lattice mirror
  // images of the low levels at the top end stay real.
  EXPECT_GT(2 * r.count(EigenClass::Spurious), static_cast<int>(r.entries.size()));
  for (const auto& e : r.entries) {
    if (e.energy.real() > 100.0 && e.energy.real() < 2000.0) {
      EXPECT_NE(e.cls, EigenClass::Real) << e.energy;
    }
  }
}

TEST(Classify, HarmonicSuiteHasNoFalseFlags) {
  const SpectrumReport r = analyze_spectrum(kHarmonic, Grid::full_line(10.0, 801));
  for (int k = 0; k < 10; ++k) {
    const auto& e = r.entries[static_cast<std::size_t>(k)];
    EXPECT_EQ(e.cls, EigenClass::Real) << k << " " << e.note;
    EXPECT_NEAR(e.energy.real(), 2 * k + 1, 1e-3);
  }
}

TEST(Classify, RealConfiningWellRetainedLevelsReal) {
  const Potential v = Potential::custom("x^4 + x^2", [](double x) { return cplx(x * x * x * x + x * x); });
  const SpectrumReport r = analyze_spectrum(v, Grid::full_line(6.0, 301));
  for (const SpectrumEntry* e : r.retained()) EXPECT_LT(std::fabs(e->energy.imag()), 1e-12);
}

TEST(Classify, RichardsonFormula) {
  EXPECT_DOUBLE_EQ(richardson(1.0, 2.0, 2).real(), (4.0 - 2.0) / 3.0);
  EXPECT_DOUBLE_EQ(richardson(1.0, 2.0, 4).real(), (16.0 - 2.0) / 15.0);
}

TEST(Classify, RichardsonNeedsOddNodeCount) {
  SolverOptions o;
  o.richardson = true;
  EXPECT_THROW(analyze_spectrum(kHarmonic, Grid::interval(-5.0, 5.0, 100), o), ConfigError);
  EXPECT_THROW(analyze_spectrum(kHarmonic, Grid::full_line(5.0, 103), o), ConfigError);
}

TEST(Classify, RichardsonImprovesHarmonic) {
  SolverOptions o;
  o.stencil = Stencil::ThreePoint;
  o.box_check = false;
  const Grid g = Grid::full_line(10.0, 1001);
  const SpectrumReport raw = analyze_spectrum(kHarmonic, g, o);
  o.richardson = true;
  const SpectrumReport ext = analyze_spectrum(kHarmonic, g, o);
  for (int k = 0; k < 6; ++k) {
    const auto i = static_cast<std::size_t>(k);
    EXPECT_LT(std::fabs(ext.entries[i].energy.real() - (2 * k + 1)),
              0.01 * std::fabs(raw.entries[i].energy.real() - (2 * k + 1)));
  }
}

// Every bound level surviving the spurious filters is reproduced by the
// independent shooting engine.
TEST(Classify, EngineAgreementPoeschlTeller1) {
  const Potential v = Potential::make(Family::PoeschlTeller1);
  const Grid g = build_grid(default_domain(Family::PoeschlTeller1));
  SolverOptions o = default_claim_solver();
  const SpectrumReport r = analyze_spectrum(v, g, o);
  const auto bound = bound_levels(r, well_profile(v, g), 8);
  ASSERT_EQ(bound.size(), 3u);
  for (std::size_t k : bound) {
    const auto& e = r.entries[k];
    ASSERT_TRUE(e.refined);
    ASSERT_TRUE(e.extrapolated.has_value());
    EXPECT_LT(std::abs(*e.extrapolated - e.energy), 1e-6);
    EXPECT_LT(std::fabs(e.energy.imag()), 1e-6);
  }
}
