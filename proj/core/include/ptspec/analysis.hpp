#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptspec/classify.hpp"
#include "ptspec/grid.hpp"
#include "ptspec/potentials.hpp"

namespace ptspec {

enum class WellShape {
  Well,       ///< Re V dips below its value at the open box edge
  Confining,  ///< Re V still rising at every open edge
  Inverted,   ///< Re V at the open edge is its minimum over the grid
};

std::string_view well_shape_name(WellShape shape);

struct WellMinimum {
  double x = 0.0;
  double value = 0.0;  ///< Re V(x)
};

struct WellReport {
  WellShape shape = WellShape::Well;
  /// Strict discrete local minima of Re V below asymptotic_value; empty for
  /// Confining and Inverted shapes.
  std::vector<WellMinimum> minima;
  /// Lowest Re V over the open box edges (the far end of a half line).
  double asymptotic_value = 0.0;
  std::vector<double> depths;  ///< asymptotic_value - minimum value, per minimum
  SignPattern im_sign_pattern = SignPattern::Zero;
};

/// Minima from sign changes of the first difference of Re V. The shape is
/// Confining when Re V at each open edge exceeds its value at 90% of the way
/// out by more than 1e-3 (1 + |Re V(edge)|), Inverted when the edge value is
/// the grid minimum, and Well otherwise.
WellReport well_profile(const Potential& spec, const Grid& grid);

/// Default domain per family: half line [0.01, 10] with 1001 nodes for the
/// inverse-power families, [-8, 8] with 1001 for the shifted quartics,
/// [-15, 15] with 601 for Poeschl-Teller and [-10, 10] with 801 otherwise.
DomainSpec default_domain(Family family);

/// Solver defaults for claim checks: five-point stencil, Richardson, box
/// check and shooting refinement.
SolverOptions default_claim_solver();

/// Bound levels of a classified spectrum: entries that are not Spurious,
/// lie below the well's asymptotic value when the shape is Well, and are
/// among the lowest `levels` by Re E. Returns indices into rep.entries.
std::vector<std::size_t> bound_levels(const SpectrumReport& rep, const WellReport& well, int levels);

struct ClaimOptions {
  SolverOptions solver = default_claim_solver();
  int levels = 8;
  /// Reality threshold for the central claim |Im E| < claim_tolerance.
  double claim_tolerance = 1e-6;
  /// Half-line grids of singular families: rerun the full spectrum at each
  /// cutoff with x_max and n unchanged.
  bool cutoff_scan = true;
  std::vector<double> cutoffs{1e-1, 1e-2, 1e-3};
};

struct LevelShift {
  int k = 0;
  cplx full;
  cplx realpart;
  cplx shift;  ///< full - realpart
};

struct CutoffSpectrum {
  double cutoff = 0.0;
  SpectrumReport spectrum;
  std::vector<std::size_t> bound;
  bool reality_verdict = true;
};

struct ClaimReport {
  std::string label;
  Grid grid = Grid::interval(0.0, 1.0, 3);
  int levels = 0;
  SymmetryReport symmetry;
  WellReport well;
  SpectrumReport full_spectrum;
  SpectrumReport realpart_spectrum;
  std::vector<std::size_t> full_bound;      ///< indices into full_spectrum.entries
  std::vector<std::size_t> realpart_bound;  ///< indices into realpart_spectrum.entries
  /// Every bound entry of full_spectrum is Real (vacuously true when none).
  bool reality_verdict = true;
  /// Largest |Im E| over the bound entries; 0 when there are none.
  double max_bound_imag = 0.0;
  /// max_bound_imag < claim_tolerance.
  bool claim_holds = true;
  double claim_tolerance = 1e-6;
  std::vector<LevelShift> level_shifts;
  std::vector<CutoffSpectrum> cutoff_scan;
};

/// Symmetry, well profile, full and real-part spectra on the same grid with
/// the same solver, verdict and level shifts matched by ascending Re E.
/// Solver errors are rethrown with the potential label prepended.
ClaimReport claim_check(const Potential& spec, const Grid& grid, const ClaimOptions& opts = {});

struct PartnerOptions {
  SolverOptions solver = default_claim_solver();
  int levels = 10;
  /// Two levels pair up only when |E- - E+| < pair_tolerance (1 + |E|).
  double pair_tolerance = 1e-2;
};

struct PartnerMatch {
  std::size_t minus = 0;  ///< index into minus.entries
  std::size_t plus = 0;   ///< index into plus.entries
  double mismatch = 0.0;
};

struct PartnerReport {
  SpectrumReport minus;
  SpectrumReport plus;
  std::vector<std::size_t> minus_bound;
  std::vector<std::size_t> plus_bound;
  std::vector<PartnerMatch> matches;  ///< ordered by Re E of the minus level
  std::vector<std::size_t> unpaired_minus;
  std::vector<std::size_t> unpaired_plus;
  double max_mismatch = 0.0;
};

/// Greedy matching (smallest |E- - E+| first) of the bound levels of both
/// partners. Only levels at or below the lower of the two highest bound
/// energies take part, so truncating the level lists does not create
/// unpaired states at the top.
PartnerReport partner_isospectrality(const Potential& v_minus, const Potential& v_plus,
                                     const Grid& grid, const PartnerOptions& opts = {});

}  // namespace ptspec
