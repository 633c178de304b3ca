#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ptspec/dynamics.hpp"

using namespace ptspec;

namespace {

const Potential kHarmonic = Potential::custom("x^2", [](double x) { return cplx(x * x); });

}  // namespace

TEST(Packet, NormalizedWithZeroWalls) {
  const Grid g = Grid::full_line(10.0, 401);
  const WaveState s = gaussian_packet(g, 1.0, 2.0, 0.7);
  EXPECT_NEAR(norm(g, s.psi), 1.0, 1e-14);
  EXPECT_EQ(s.psi.front(), cplx{});
  EXPECT_EQ(s.psi.back(), cplx{});
  EXPECT_THROW(gaussian_packet(g, 0.0, 0.0, 0.0), ConfigError);
}

TEST(CrankNicolson, RealPotentialConservesNorm) {
  const Grid g = Grid::full_line(10.0, 401);
  const TimeSeries ts = crank_nicolson_propagate(kHarmonic, g, gaussian_packet(g, 1.5, 1.0), 1e-3, 10000);
  ASSERT_EQ(ts.samples.size(), 10001u);
  for (const auto& s : ts.samples) EXPECT_NEAR(s.norm, 1.0, 1e-10);
  EXPECT_NEAR(ts.final_state.t, 10.0, 1e-9);
}

TEST(CrankNicolson, UnitarityPerThousandSteps) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const Grid g = Grid::full_line(8.0, 321);
  for (int trial = 0; trial < 4; ++trial) {
    const double c = 1.0 + std::fabs(u(rng));
    const Potential v = Potential::custom("real", [c](double x) { return cplx(c * x * x + std::cos(x)); });
    const TimeSeries ts = crank_nicolson_propagate(v, g, gaussian_packet(g, u(rng), u(rng)), 1e-3, 1000);
    EXPECT_NEAR(ts.samples.back().norm, ts.samples.front().norm, 1e-9) << trial;
  }
}

TEST(CrankNicolson, RealRunContinuityDefect) {
  const Grid g = Grid::full_line(10.0, 401);
  const TimeSeries ts = crank_nicolson_propagate(kHarmonic, g, gaussian_packet(g, 2.0, -1.0), 1e-3, 500);
  EXPECT_LT(continuity_defect(ts), 1e-9);
}

TEST(CrankNicolson, UniformSinkDecaysExponentially) {
  const Potential v = Potential::custom("sink", [](double x) { return cplx(x * x, -1.0); });
  const Grid g = Grid::full_line(10.0, 401);
  const TimeSeries ts = crank_nicolson_propagate(v, g, gaussian_packet(g), 1e-4, 10000);
  EXPECT_NEAR(ts.samples.back().t, 1.0, 1e-12);
  EXPECT_NEAR(ts.samples.back().norm, std::exp(-2.0), 1e-6);
}

TEST(CrankNicolson, AbsorptiveNormNonIncreasing) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  const Grid g = Grid::full_line(8.0, 321);
  for (int trial = 0; trial < 3; ++trial) {
    const double s = u(rng);
    const Potential v =
        Potential::custom("absorptive", [s](double x) { return cplx(x * x, -s * std::exp(-x * x)); });
    const TimeSeries ts = crank_nicolson_propagate(v, g, gaussian_packet(g, 1.0, 0.5), 1e-3, 2000);
    for (std::size_t k = 1; k < ts.samples.size(); ++k) {
      ASSERT_LE(ts.samples[k].norm, ts.samples[k - 1].norm + 1e-10) << trial << " step " << k;
    }
  }
}

TEST(CrankNicolson, PoeschlTellerOffCentreContinuity) {
  const Potential v = Potential::make(Family::PoeschlTeller1);
  const Grid g = Grid::full_line(15.0, 1501);
  const TimeSeries ts = crank_nicolson_propagate(v, g, gaussian_packet(g, 2.0), 1e-3, 1000);
  EXPECT_LT(continuity_defect(ts), 1e-3);
}

TEST(CrankNicolson, PtSymmetricStateBalance) {
  const Potential v = Potential::make(Family::PoeschlTeller1);
  const Grid g = Grid::full_line(15.0, 1501);
  const TimeSeries ts = crank_nicolson_propagate(v, g, gaussian_packet(g), 1e-3, 10);
  EXPECT_LT(std::fabs(ts.samples.front().dn_dt), 1e-8);
  EXPECT_LT(std::fabs(ts.samples.front().sink_integral), 1e-8);
}

TEST(CrankNicolson, SinkMatchesNormDerivative) {
  const Potential v = Potential::make(Family::CubicOsc);
  const Grid g = Grid::full_line(8.0, 801);
  const TimeSeries ts = crank_nicolson_propagate(v, g, gaussian_packet(g, 1.0), 1e-4, 200);
  for (const auto& s : ts.samples) EXPECT_NEAR(s.dn_dt, s.sink_integral, 1e-3 * s.norm);
}

TEST(CrankNicolson, InvalidArguments) {
  const Grid g = Grid::full_line(5.0, 101);
  const WaveState s = gaussian_packet(g);
  EXPECT_THROW(crank_nicolson_propagate(kHarmonic, g, s, 0.0, 10), ConfigError);
  EXPECT_THROW(crank_nicolson_propagate(kHarmonic, g, s, 1e-3, -1), ConfigError);
  EXPECT_THROW(crank_nicolson_propagate(kHarmonic, g, WaveState{{1.0, 2.0}, 0.0}, 1e-3, 10), ConfigError);
  const TimeSeries one = crank_nicolson_propagate(kHarmonic, g, s, 1e-3, 1);
  EXPECT_THROW(continuity_defect(one), ConfigError);
}
