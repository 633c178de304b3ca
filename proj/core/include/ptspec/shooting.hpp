#pragma once

#include <vector>

#include "ptspec/grid.hpp"
#include "ptspec/potentials.hpp"
#include "ptspec/types.hpp"

namespace ptspec {

struct ShootingOptions {
  /// Minimum RK4 substeps per grid cell; 0 picks ceil(h / 0.0025). Cells
  /// where |V| is large get more so that dx^2 |V| stays small.
  int substeps = 0;
  /// Matching node index; negative selects it automatically.
  int matching_node = -1;
  int max_iterations = 50;
  /// Convergence: |dE| < step_tol * max(1, |E|) and |residual| < residual_tol.
  double step_tol = 1e-10;
  double residual_tol = 1e-8;
  /// Refinement may not wander further than this from E0; 0 means
  /// 1 + 0.1 |E0|.
  double search_radius = 0.0;
};

struct RefineResult {
  cplx energy;
  cplx residual;
  int iterations = 0;
};

/// Two-sided shooting for -u'' + (V - E) u = 0 with u = 0 at both grid ends.
/// Potential samples are cached at construction, so one Shooter serves many
/// energies. Immutable and safe to share between threads.
class Shooter {
 public:
  Shooter(const Potential& spec, const Grid& grid, const ShootingOptions& opts = {});

  /// Normalized Wronskian at the matching node:
  /// (u_L u_R' - u_L' u_R) / (|(u_L, u_L')| |(u_R, u_R')|).
  cplx residual(cplx energy) const;

  /// Complex secant iteration on residual(). Throws SolverError when it
  /// fails to converge in max_iterations or leaves the search radius.
  RefineResult refine(cplx e0) const;

  int matching_node() const noexcept { return match_; }
  const Grid& grid() const noexcept { return grid_; }

 private:
  Grid grid_;
  ShootingOptions opts_;
  int match_ = 0;
  std::vector<int> cell_steps_;
  std::vector<std::size_t> cell_offset_;
  std::vector<cplx> fine_v_;  // V at every half substep
};

/// Matching node: the deepest interior strict local minimum of Re V, or the
/// node nearest the grid midpoint when Re V has none.
int default_matching_node(const Potential& spec, const Grid& grid);

cplx shooting_residual(const Potential& spec, const Grid& grid, cplx energy,
                       const ShootingOptions& opts = {});

cplx refine_eigen_shooting(const Potential& spec, const Grid& grid, cplx e0,
                           const ShootingOptions& opts = {});

/// Validation mode: samples |residual| on an nre x nim lattice over the
/// rectangle, refines every lattice local minimum and returns the distinct
/// converged roots sorted by (Re, Im).
std::vector<cplx> rectangle_scan(const Potential& spec, const Grid& grid, cplx lower_left,
                                 cplx upper_right, int nre, int nim,
                                 const ShootingOptions& opts = {});

}  // namespace ptspec
