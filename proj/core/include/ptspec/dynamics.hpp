#pragma once

#include <span>
#include <vector>

#include "ptspec/grid.hpp"
#include "ptspec/potentials.hpp"
#include "ptspec/types.hpp"

namespace ptspec {

/// Wave function samples on every grid node (the two wall nodes stay zero).
struct WaveState {
  std::vector<cplx> psi;
  double t = 0.0;
};

/// Gaussian exp(-(x - x0)^2 / (2 width^2) + i k0 x), zero on the walls,
/// normalized so that h sum |psi|^2 = 1.
WaveState gaussian_packet(const Grid& grid, double x0 = 0.0, double k0 = 0.0, double width = 1.0);

/// N = h sum |psi_j|^2.
double norm(const Grid& grid, std::span<const cplx> psi);

struct TimeSample {
  double t = 0.0;
  double norm = 0.0;
  double dn_dt = 0.0;          ///< centered difference (N_{k+1} - N_{k-1}) / (2 dt)
  double sink_integral = 0.0;  ///< -2 h sum V_I |psi|^2, V_I = -Im V
  double max_defect = 0.0;     ///< max_j |dP/dt + dS/dx + 2 V_I P|
};

struct TimeSeries {
  double dt = 0.0;
  std::vector<TimeSample> samples;  ///< k = 0 .. steps
  WaveState final_state;
};

/// Crank-Nicolson: (I + i dt/2 H) psi+ = (I - i dt/2 H) psi with the
/// three-point H and Dirichlet walls. One extra step backwards from psi0 and
/// one past the last step supply the centered time differences, so every
/// recorded step has a centered dN/dt. The current is the staggered flux
/// S_{j+1/2} = 2 Im(conj(psi_j) psi_{j+1}) / h.
TimeSeries crank_nicolson_propagate(const Potential& spec, const Grid& grid, const WaveState& psi0,
                                    double dt, int steps);

/// max_k |dN/dt - sink| / max(N, 1e-30). Needs at least 3 samples.
double continuity_defect(const TimeSeries& series);

}  // namespace ptspec
