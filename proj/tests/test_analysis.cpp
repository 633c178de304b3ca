#include <gtest/gtest.h>

#include <cmath>

#include "ptspec/analysis.hpp"

using namespace ptspec;

namespace {

const Potential kHarmonic = Potential::custom("x^2", [](double x) { return cplx(x * x); });

}  // namespace

TEST(WellProfile, PoeschlTeller1MinimumAtOrigin) {
  const Potential v = Potential::make(Family::PoeschlTeller1, {{"lambdatilde", 3.0}});
  const WellReport w = well_profile(v, Grid::full_line(15.0, 601));
  EXPECT_EQ(w.shape, WellShape::Well);
  ASSERT_EQ(w.minima.size(), 1u);
  EXPECT_EQ(w.minima[0].x, 0.0);
  EXPECT_NEAR(w.minima[0].value, -6.75, 1e-12);
  EXPECT_NEAR(w.asymptotic_value, 0.25, 1e-10);
  EXPECT_NEAR(w.depths[0], 7.0, 1e-10);
  EXPECT_EQ(w.im_sign_pattern, SignPattern::NonPositiveOnPositiveHalfLine);
}

TEST(WellProfile, HarmonicIsConfining) {
  const WellReport w = well_profile(kHarmonic, Grid::full_line(10.0, 801));
  EXPECT_EQ(w.shape, WellShape::Confining);
  EXPECT_TRUE(w.minima.empty());
}

TEST(WellProfile, ShiftedQuarticIsInverted) {
  const WellReport w = well_profile(Potential::make(Family::ShiftedQuartic1), Grid::full_line(8.0, 1001));
  EXPECT_EQ(w.shape, WellShape::Inverted);
  EXPECT_TRUE(w.minima.empty());
}

TEST(WellProfile, DoubleWellMinima) {
  const Potential v = Potential::custom("double well", [](double x) { return cplx(std::exp(-(x - 2) * (x - 2)) * -2.0 - std::exp(-(x + 2) * (x + 2))); });
  const WellReport w = well_profile(v, Grid::full_line(10.0, 1001));
  EXPECT_EQ(w.shape, WellShape::Well);
  ASSERT_EQ(w.minima.size(), 2u);
  EXPECT_NEAR(w.minima[0].x, -2.0, 0.02);
  EXPECT_NEAR(w.minima[1].x, 2.0, 0.02);
}

// Re V = 2/x^2 - 1/x^4 has a single stationary point on (0, inf), a maximum,
// so the lowest value over the half line sits at the cutoff wall.
TEST(WellProfile, InversePower2RealPartAgainstDenseScan) {
  const Potential v = Potential::make(Family::InversePower2, {{"lambda", 1.0}});
  const double eps = 0.01;
  const double len = 10.0;
  const int m = 100000;
  double best_x = eps;
  double best = INFINITY;
  double top_x = eps;
  double top = -INFINITY;
  for (int j = 0; j < m; ++j) {
    const double x = eps + (len - eps) * j / (m - 1);
    const double re = 2.0 / (x * x) - 1.0 / (x * x * x * x);
    if (re < best) {
      best = re;
      best_x = x;
    }
    if (re > top) {
      top = re;
      top_x = x;
    }
  }
  EXPECT_EQ(best_x, eps);
  EXPECT_NEAR(top_x, 1.0, 1e-3);

  const Grid g = Grid::half_line(eps, len, 1001);
  const WellReport w = well_profile(v, g);
  EXPECT_EQ(w.shape, WellShape::Well);
  EXPECT_TRUE(w.minima.empty());
  EXPECT_NEAR(w.asymptotic_value, 2.0 / 100.0 - 1.0 / 1e4, 1e-14);
  double grid_min_x = g.x(0);
  for (int j = 0; j < g.size(); ++j) {
    if (v.eval(g.x(j)).real() < v.eval(grid_min_x).real()) grid_min_x = g.x(j);
  }
  EXPECT_EQ(grid_min_x, best_x);
}

TEST(BoundLevels, RespectsAsymptoteAndCount) {
  const Potential v = Potential::make(Family::PoeschlTeller2);
  const Grid g = Grid::full_line(15.0, 601);
  SolverOptions o;
  const SpectrumReport r = analyze_spectrum(v, g, o);
  const WellReport w = well_profile(v, g);
  const auto all = bound_levels(r, w, 8);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_NEAR(r.entries[all[0]].energy.real(), -3.75, 1e-3);
  EXPECT_NEAR(r.entries[all[1]].energy.real(), -0.75, 1e-3);
  EXPECT_EQ(bound_levels(r, w, 1).size(), 1u);
}

TEST(Claim, RealHarmonicHasZeroShifts) {
  ClaimOptions o;
  o.levels = 6;
  const ClaimReport c = claim_check(kHarmonic, Grid::full_line(10.0, 801), o);
  EXPECT_TRUE(c.reality_verdict);
  EXPECT_TRUE(c.claim_holds);
  ASSERT_EQ(c.level_shifts.size(), 6u);
  for (const auto& s : c.level_shifts) EXPECT_EQ(s.shift, cplx{});
  for (int k = 0; k < 6; ++k) {
    EXPECT_NEAR(c.full_spectrum.entries[c.full_bound[static_cast<std::size_t>(k)]].energy.real(), 2 * k + 1, 1e-8);
  }
  EXPECT_TRUE(c.cutoff_scan.empty());
}

TEST(Claim, PoeschlTeller1RealWithShifts) {
  const Potential v = Potential::make(Family::PoeschlTeller1);
  const ClaimReport c = claim_check(v, build_grid(default_domain(Family::PoeschlTeller1)));
  EXPECT_TRUE(c.reality_verdict);
  EXPECT_TRUE(c.claim_holds);
  EXPECT_LT(c.max_bound_imag, 1e-6);
  ASSERT_EQ(c.full_bound.size(), 3u);
  EXPECT_NEAR(c.full_spectrum.entries[c.full_bound[0]].energy.real(), -3.75, 1e-6);
  EXPECT_NEAR(c.full_spectrum.entries[c.full_bound[1]].energy.real(), -0.75, 1e-6);
  ASSERT_FALSE(c.level_shifts.empty());
  EXPECT_GT(std::abs(c.level_shifts[0].shift), 0.1);
  ASSERT_TRUE(c.symmetry.pt_residual.has_value());
  EXPECT_EQ(*c.symmetry.pt_residual, 0.0);
}

TEST(Claim, CubicOscillatorReal) {
  const Potential v = Potential::make(Family::CubicOsc, {{"mu", 1.0}, {"g", 1.0}});
  ClaimOptions o;
  o.levels = 4;
  const ClaimReport c = claim_check(v, Grid::full_line(8.0, 641), o);
  EXPECT_TRUE(c.reality_verdict);
  EXPECT_TRUE(c.claim_holds);
  EXPECT_EQ(c.full_bound.size(), 4u);
}

TEST(Claim, NonPtPotentialFails) {
  const Potential v = Potential::custom("x^2 + i x^2", [](double x) { return cplx(x * x, x * x); });
  ClaimOptions o;
  o.levels = 3;
  const ClaimReport c = claim_check(v, Grid::full_line(8.0, 321), o);
  EXPECT_FALSE(c.reality_verdict);
  EXPECT_FALSE(c.claim_holds);
  EXPECT_GT(c.max_bound_imag, 0.1);
}

TEST(Claim, CutoffScanOnSingularHalfLine) {
  const Potential v = Potential::make(Family::InversePower1);
  ClaimOptions o;
  o.levels = 3;
  o.solver.refine = false;
  const ClaimReport c = claim_check(v, Grid::half_line(0.01, 10.0, 801), o);
  ASSERT_EQ(c.cutoff_scan.size(), 3u);
  EXPECT_EQ(c.cutoff_scan[0].cutoff, 1e-1);
  EXPECT_EQ(c.cutoff_scan[1].cutoff, 1e-2);
  EXPECT_EQ(c.cutoff_scan[2].cutoff, 1e-3);
  EXPECT_EQ(c.cutoff_scan[2].spectrum.x_min, 1e-3);
}

TEST(Claim, InvalidLevels) {
  ClaimOptions o;
  o.levels = 0;
  EXPECT_THROW(claim_check(kHarmonic, Grid::full_line(5.0, 101), o), ConfigError);
}

TEST(Claim, ErrorsCarryLabel) {
  const Potential v = Potential::make(Family::InversePower1);
  try {
    claim_check(v, Grid::full_line(1.0, 11));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find(v.label()), std::string::npos) << e.what();
  }
}

TEST(Partners, ShiftedHarmonicPair) {
  const auto [vm, vp] = susy_partner_pair(Superpotential::make(SuperpotentialKind::Linear));
  PartnerOptions o;
  o.levels = 8;
  const PartnerReport r = partner_isospectrality(vm, vp, Grid::full_line(10.0, 801), o);
  ASSERT_EQ(r.unpaired_minus.size(), 1u);
  EXPECT_TRUE(r.unpaired_plus.empty());
  EXPECT_NEAR(r.minus.entries[r.unpaired_minus[0]].energy.real(), 0.0, 5e-4);
  ASSERT_GE(r.matches.size(), 6u);
  for (std::size_t k = 0; k < r.matches.size(); ++k) {
    EXPECT_NEAR(r.plus.entries[r.matches[k].plus].energy.real(), 2.0 * (k + 1), 5e-4);
  }
  EXPECT_LT(r.max_mismatch, 5e-4);
}

TEST(Partners, PoeschlTellerPair) {
  const auto [vm, vp] = susy_partner_pair(Superpotential::make(SuperpotentialKind::Scarf));
  const PartnerReport r = partner_isospectrality(vm, vp, build_grid(default_domain(Family::PoeschlTeller1)));
  ASSERT_GE(r.matches.size(), 2u);
  EXPECT_LT(r.max_mismatch, 5e-4);
  EXPECT_EQ(r.unpaired_minus.size(), 1u);
}

TEST(Partners, ShiftedQuarticPair) {
  const PartnerReport r = partner_isospectrality(Potential::make(Family::ShiftedQuartic1),
                                                 Potential::make(Family::ShiftedQuartic2),
                                                 build_grid(default_domain(Family::ShiftedQuartic1)));
  ASSERT_GE(r.matches.size(), 5u);
  EXPECT_LT(r.max_mismatch, 5e-3);
}
