#include "ptspec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "ptspec/hamiltonian.hpp"

namespace ptspec {

namespace {

// Re V at every node, NaN at singular nodes.
std::vector<double> real_profile(const Potential& spec, const Grid& grid) {
  std::vector<double> re(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    re[static_cast<std::size_t>(j)] =
        spec.is_singular_at(x) ? std::numeric_limits<double>::quiet_NaN() : spec.eval(x).real();
  }
  return re;
}

// Node at fraction `f` of the way from `from` to `to`.
int node_between(int from, int to, double f) {
  return from + static_cast<int>(std::lround(f * (to - from)));
}

template <class Fn>
auto with_context(const std::string& label, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw DomainError(label + ": " + e.what());
  } catch (const SolverError& e) {
    throw SolverError(label + ": " + e.what());
  }
}

bool verdict(const SpectrumReport& rep, const std::vector<std::size_t>& bound) {
  return std::all_of(bound.begin(), bound.end(),
                     [&](std::size_t k) { return rep.entries[k].cls == EigenClass::Real; });
}

}  // namespace

std::string_view well_shape_name(WellShape shape) {
  switch (shape) {
    case WellShape::Well: return "well";
    case WellShape::Confining: return "confining";
    case WellShape::Inverted: return "inverted";
  }
  return "well";
}

WellReport well_profile(const Potential& spec, const Grid& grid) {
  const std::vector<double> re = real_profile(spec, grid);
  const int n = grid.size();
  const bool half = grid.kind() == GridKind::HalfLineCutoff;

  // Open edges and their anchors (grid centre, or the cutoff on a half line).
  std::vector<std::pair<int, int>> edges;  // (edge node, anchor node)
  if (half) {
    edges.emplace_back(n - 1, 0);
  } else {
    edges.emplace_back(0, (n - 1) / 2);
    edges.emplace_back(n - 1, (n - 1) / 2);
  }

  WellReport rep;
  rep.im_sign_pattern = imaginary_sign_pattern(spec, grid);
  rep.asymptotic_value = std::numeric_limits<double>::infinity();
  bool confining = true;
  for (const auto& [edge, anchor] : edges) {
    const double ve = re[static_cast<std::size_t>(edge)];
    rep.asymptotic_value = std::min(rep.asymptotic_value, ve);
    const double vi = re[static_cast<std::size_t>(node_between(anchor, edge, 0.9))];
    if (!(ve - vi > 1e-3 * (1.0 + std::fabs(ve)))) confining = false;
  }

  double lowest = std::numeric_limits<double>::infinity();
  for (double v : re) {
    if (!std::isnan(v)) lowest = std::min(lowest, v);
  }

  if (confining) {
    rep.shape = WellShape::Confining;
    return rep;
  }
  if (rep.asymptotic_value <= lowest) {
    rep.shape = WellShape::Inverted;
    return rep;
  }
  rep.shape = WellShape::Well;
  for (int j = 1; j < n - 1; ++j) {
    const double l = re[static_cast<std::size_t>(j - 1)];
    const double c = re[static_cast<std::size_t>(j)];
    const double r = re[static_cast<std::size_t>(j + 1)];
    if (std::isnan(l) || std::isnan(c) || std::isnan(r)) continue;
    if (c - l < 0.0 && r - c > 0.0 && c < rep.asymptotic_value) {
      rep.minima.push_back({grid.x(j), c});
      rep.depths.push_back(rep.asymptotic_value - c);
    }
  }
  return rep;
}

DomainSpec default_domain(Family family) {
  DomainSpec d;
  switch (family) {
    case Family::InversePower1:
    case Family::InversePower2:
      d.x_min = 1e-2;
      d.x_max = 10.0;
      d.n = 1001;
      d.cutoff = 1e-2;
      return d;
    case Family::ShiftedQuartic1:
    case Family::ShiftedQuartic2:
      d.x_min = -8.0;
      d.x_max = 8.0;
      d.n = 1001;
      break;
    case Family::PoeschlTeller1:
    case Family::PoeschlTeller2:
      d.x_min = -15.0;
      d.x_max = 15.0;
      d.n = 601;
      break;
    default:
      d.x_min = -10.0;
      d.x_max = 10.0;
      d.n = 801;
      break;
  }
  d.symmetric = true;
  return d;
}

SolverOptions default_claim_solver() {
  SolverOptions s;
  s.stencil = Stencil::FivePoint;
  s.richardson = true;
  s.box_check = true;
  s.refine = true;
  s.max_refine = 32;
  return s;
}

std::vector<std::size_t> bound_levels(const SpectrumReport& rep, const WellReport& well, int levels) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < rep.entries.size() && static_cast<int>(out.size()) < levels; ++k) {
    const SpectrumEntry& e = rep.entries[k];
    if (e.cls == EigenClass::Spurious) continue;
    if (well.shape == WellShape::Well && !(e.energy.real() < well.asymptotic_value)) continue;
    out.push_back(k);
  }
  return out;
}

ClaimReport claim_check(const Potential& spec, const Grid& grid, const ClaimOptions& opts) {
  if (opts.levels < 1) throw ConfigError("claim check: levels must be >= 1");
  ClaimReport rep;
  rep.label = spec.label();
  rep.grid = grid;
  rep.levels = opts.levels;
  rep.claim_tolerance = opts.claim_tolerance;

  with_context(rep.label, [&] {
    rep.symmetry = symmetry_report(spec, grid);
    rep.well = well_profile(spec, grid);
    rep.full_spectrum = analyze_spectrum(spec, grid, opts.solver);
    rep.realpart_spectrum = analyze_spectrum(spec.real_part(), grid, opts.solver);
    return 0;
  });

  // The real-part problem shares the real part of V, hence the same well.
  rep.full_bound = bound_levels(rep.full_spectrum, rep.well, opts.levels);
  rep.realpart_bound = bound_levels(rep.realpart_spectrum, rep.well, opts.levels);
  rep.reality_verdict = verdict(rep.full_spectrum, rep.full_bound);
  for (std::size_t k : rep.full_bound) {
    rep.max_bound_imag = std::max(rep.max_bound_imag, std::fabs(rep.full_spectrum.entries[k].energy.imag()));
  }
  rep.claim_holds = rep.max_bound_imag < opts.claim_tolerance;

  const std::size_t matched = std::min(rep.full_bound.size(), rep.realpart_bound.size());
  for (std::size_t k = 0; k < matched; ++k) {
    LevelShift s;
    s.k = static_cast<int>(k);
    s.full = rep.full_spectrum.entries[rep.full_bound[k]].energy;
    s.realpart = rep.realpart_spectrum.entries[rep.realpart_bound[k]].energy;
    s.shift = s.full - s.realpart;
    rep.level_shifts.push_back(s);
  }

  if (opts.cutoff_scan && grid.kind() == GridKind::HalfLineCutoff && is_singular_family(spec.family())) {
    SolverOptions scan = opts.solver;
    scan.richardson = false;
    scan.refine = false;
    for (double eps : opts.cutoffs) {
      CutoffSpectrum c;
      c.cutoff = eps;
      with_context(rep.label + " (cutoff " + std::to_string(eps) + ")", [&] {
        const Grid g = Grid::half_line(eps, grid.x_max(), grid.size());
        c.spectrum = analyze_spectrum(spec, g, scan);
        c.bound = bound_levels(c.spectrum, well_profile(spec, g), opts.levels);
        return 0;
      });
      c.reality_verdict = verdict(c.spectrum, c.bound);
      rep.cutoff_scan.push_back(std::move(c));
    }
  }
  return rep;
}

PartnerReport partner_isospectrality(const Potential& v_minus, const Potential& v_plus,
                                     const Grid& grid, const PartnerOptions& opts) {
  if (opts.levels < 1) throw ConfigError("partner check: levels must be >= 1");
  PartnerReport rep;
  with_context(v_minus.label(), [&] {
    rep.minus = analyze_spectrum(v_minus, grid, opts.solver);
    rep.minus_bound = bound_levels(rep.minus, well_profile(v_minus, grid), opts.levels);
    return 0;
  });
  with_context(v_plus.label(), [&] {
    rep.plus = analyze_spectrum(v_plus, grid, opts.solver);
    rep.plus_bound = bound_levels(rep.plus, well_profile(v_plus, grid), opts.levels);
    return 0;
  });

  auto energy = [](const SpectrumReport& r, std::size_t k) { return r.entries[k].energy; };
  auto top = [&](const SpectrumReport& r, const std::vector<std::size_t>& b) {
    return b.empty() ? -std::numeric_limits<double>::infinity() : energy(r, b.back()).real();
  };
  // Bound lists are sorted by Re E; the top entry of the shorter window
  // caps both lists. A level just above the cap may still pair with one
  // just below it.
  const double cap_minus = top(rep.minus, rep.minus_bound);
  const double cap_plus = top(rep.plus, rep.plus_bound);
  const bool minus_full = static_cast<int>(rep.minus_bound.size()) == opts.levels;
  const bool plus_full = static_cast<int>(rep.plus_bound.size()) == opts.levels;
  double cap = std::numeric_limits<double>::infinity();
  if (minus_full) cap = std::min(cap, cap_minus);
  if (plus_full) cap = std::min(cap, cap_plus);

  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  for (std::size_t k : rep.minus_bound) {
    const cplx e = energy(rep.minus, k);
    if (e.real() <= cap + opts.pair_tolerance * (1.0 + std::abs(e))) a.push_back(k);
  }
  for (std::size_t k : rep.plus_bound) {
    const cplx e = energy(rep.plus, k);
    if (e.real() <= cap + opts.pair_tolerance * (1.0 + std::abs(e))) b.push_back(k);
  }

  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const cplx ei = energy(rep.minus, a[i]);
      const cplx ej = energy(rep.plus, b[j]);
      const double d = std::abs(ei - ej);
      if (d < opts.pair_tolerance * (1.0 + std::max(std::abs(ei), std::abs(ej)))) {
        candidates.emplace_back(d, i, j);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  for (const auto& [d, i, j] : candidates) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    rep.matches.push_back({a[i], b[j], d});
    rep.max_mismatch = std::max(rep.max_mismatch, d);
  }
  std::sort(rep.matches.begin(), rep.matches.end(),
            [](const PartnerMatch& x, const PartnerMatch& y) { return x.minus < y.minus; });
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!used_a[i]) rep.unpaired_minus.push_back(a[i]);
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!used_b[j]) rep.unpaired_plus.push_back(b[j]);
  }
  return rep;
}

}  // namespace ptspec
