#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptspec/dense_eigen.hpp"
#include "ptspec/grid.hpp"
#include "ptspec/hamiltonian.hpp"
#include "ptspec/potentials.hpp"
#include "ptspec/shooting.hpp"

namespace ptspec {

enum class EigenClass {
  Real,
  ConjugatePair,  ///< non-real, matched with a partner near its conjugate
  Complex,        ///< non-real without a conjugate partner
  Spurious,       ///< box or discretization artifact
};

std::string_view eigen_class_name(EigenClass c);

struct ClassifyOptions {
  double tau_raw = 1e-4;      ///< reality tolerance for matrix output
  double tau_refined = 1e-7;  ///< reality tolerance after shooting refinement
  double edge_fraction = 0.05;
  double boundary_mass_threshold = 0.1;
  double box_factor = 1.25;
  /// Box drift and conditioning thresholds are drift_factor * tau_raw (1 + |E|).
  double drift_factor = 100.0;
};

/// Extra evidence for classification. Every field is optional.
struct ClassifyContext {
  /// Spectrum of the same problem on a box enlarged at fixed spacing.
  const Spectrum* enlarged = nullptr;
  /// Which ends of the eigenvectors count as the open box edge.
  bool left_edge_open = true;
  bool right_edge_open = true;
  /// Improved energies (extrapolated or refined) used for the reality and
  /// pairing tests; empty means the raw values. Spurious tests always use
  /// the raw values, which share the enlarged box's discretization.
  std::vector<cplx> estimates;
  /// Entries refined by shooting use tau_refined; empty means none.
  std::vector<bool> refined;
};

struct SpectrumEntry {
  cplx energy;                      ///< best estimate
  cplx raw_energy;                  ///< dense-matrix value on the requested grid
  std::optional<cplx> extrapolated; ///< Richardson value when available
  EigenClass cls = EigenClass::Real;
  int partner = -1;                                   ///< ConjugatePair partner index
  double boundary_mass = 0.0;                         ///< in [0, 1]; 0 without vectors
  double box_stability = 0.0;                         ///< drift against the enlarged box; 0 without one
  double condition = 1.0;
  bool refined = false;
  std::string note;  ///< reason for Spurious, or a refinement failure
};

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;
  EigenRoute route = EigenRoute::GeneralComplex;
  GridKind grid_kind = GridKind::Interval;
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 0;
  Stencil stencil = Stencil::ThreePoint;
  bool richardson = false;
  bool box_checked = false;
  bool refined = false;

  /// Entries that are not Spurious, with |E| below `cap`.
  std::vector<const SpectrumEntry*> retained(double cap = std::numeric_limits<double>::infinity()) const;
  int count(EigenClass c) const;
};

/// Classification of a spectrum, entry order preserved. Real when
/// |Im E| < tau (1 + |Re E|); Spurious when the boundary mass, the box drift or
/// kappa eps ||M|| exceeds its threshold; conjugate pairs are matched greedily
/// by |E - conj E'| over all candidate pairs; remaining non-real entries are
/// Complex.
SpectrumReport classify_spectrum(const Spectrum& s, const ClassifyOptions& opts = {},
                                 const ClassifyContext& ctx = {});

struct SolverOptions {
  Stencil stencil = Stencil::FivePoint;
  /// Combine grid n with its (n + 1)/2 coarsening (needs odd n).
  bool richardson = false;
  bool box_check = true;
  bool refine = false;
  /// Refinement and "retained" use only |E| below this.
  double energy_cap = std::numeric_limits<double>::infinity();
  /// Upper bound on shooting refinements (lowest retained levels first).
  int max_refine = 64;
  DenseOptions dense;
  ClassifyOptions classify;
  ShootingOptions shooting;
};

/// Full pipeline: assemble, dense solve with eigenvectors, optional
/// Richardson extrapolation, enlarged-box drift, classification and optional
/// shooting refinement of retained levels.
SpectrumReport analyze_spectrum(const Potential& spec, const Grid& grid,
                                const SolverOptions& opts = {});

/// Richardson combination (2^p E_fine - E_coarse) / (2^p - 1).
cplx richardson(cplx fine, cplx coarse, int order);

}  // namespace ptspec
