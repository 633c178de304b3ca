#include "ptspec/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

namespace ptspec {

namespace {

double edge_mass(const std::vector<cplx>& v, double fraction, bool left, bool right) {
  const std::size_t len = v.size();
  if (len == 0) return 0.0;
  const std::size_t count =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(fraction * static_cast<double>(len))),
                              1, len);
  double total = 0.0;
  for (const cplx& z : v) total += std::norm(z);
  if (!(total > 0.0)) return 0.0;
  double edge = 0.0;
  std::vector<bool> counted(len, false);
  if (left) {
    for (std::size_t i = 0; i < count; ++i) counted[i] = true;
  }
  if (right) {
    for (std::size_t i = len - count; i < len; ++i) counted[i] = true;
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (counted[i]) edge += std::norm(v[i]);
  }
  return std::min(1.0, edge / total);
}

double nearest_distance(cplx e, const std::vector<cplx>& others) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& o : others) best = std::min(best, std::abs(e - o));
  return best;
}

std::string format_note(const char* what, double value, double threshold) {
  std::ostringstream os;
  os.precision(3);
  os << what << ' ' << value << " > " << threshold;
  return os.str();
}

}  // namespace

std::string_view eigen_class_name(EigenClass c) {
  switch (c) {
    case EigenClass::Real: return "real";
    case EigenClass::ConjugatePair: return "conjugate-pair";
    case EigenClass::Complex: return "complex";
    case EigenClass::Spurious: return "spurious";
  }
  return "spurious";
}

std::vector<const SpectrumEntry*> SpectrumReport::retained(double cap) const {
  std::vector<const SpectrumEntry*> out;
  for (const auto& e : entries) {
    if (e.cls != EigenClass::Spurious && std::abs(e.energy) < cap) out.push_back(&e);
  }
  return out;
}

int SpectrumReport::count(EigenClass c) const {
  return static_cast<int>(
      std::count_if(entries.begin(), entries.end(), [c](const SpectrumEntry& e) { return e.cls == c; }));
}

cplx richardson(cplx fine, cplx coarse, int order) {
  const double f = std::ldexp(1.0, order);
  return (f * fine - coarse) / (f - 1.0);
}

SpectrumReport classify_spectrum(const Spectrum& s, const ClassifyOptions& opts,
                                 const ClassifyContext& ctx) {
  const std::size_t m = s.values.size();
  SpectrumReport rep;
  rep.route = s.route;
  rep.entries.resize(m);
  rep.box_checked = ctx.enlarged != nullptr;
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> tau(m, opts.tau_raw);
  for (std::size_t k = 0; k < m; ++k) {
    SpectrumEntry& e = rep.entries[k];
    e.raw_energy = s.values[k];
    e.energy = ctx.estimates.size() == m ? ctx.estimates[k] : s.values[k];
    e.refined = ctx.refined.size() == m && ctx.refined[k];
    if (e.refined) tau[k] = opts.tau_refined;
    if (k < s.condition.size()) e.condition = s.condition[k];

    const double threshold = opts.drift_factor * opts.tau_raw * (1.0 + std::abs(e.raw_energy));
    bool spurious = false;
    if (k < s.vectors.size()) {
      e.boundary_mass =
          edge_mass(s.vectors[k], opts.edge_fraction, ctx.left_edge_open, ctx.right_edge_open);
      if (e.boundary_mass > opts.boundary_mass_threshold) {
        spurious = true;
        e.note = format_note("boundary mass", e.boundary_mass, opts.boundary_mass_threshold);
      }
    }
    if (ctx.enlarged != nullptr) {
      e.box_stability = nearest_distance(e.raw_energy, ctx.enlarged->values);
      if (!spurious && e.box_stability > threshold) {
        spurious = true;
        e.note = format_note("box drift", e.box_stability, threshold);
      }
    }
    const double sensitivity = e.condition * eps * s.matrix_norm;
    if (!spurious && sensitivity > threshold) {
      spurious = true;
      e.note = format_note("eigenvalue sensitivity", sensitivity, threshold);
    }
    if (spurious) {
      e.cls = EigenClass::Spurious;
    } else if (std::fabs(e.energy.imag()) < tau[k] * (1.0 + std::fabs(e.energy.real()))) {
      e.cls = EigenClass::Real;
    } else {
      e.cls = EigenClass::Complex;
    }
  }

  // Greedy global matching of conjugate partners among non-real entries.
  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    if (rep.entries[i].cls != EigenClass::Complex) continue;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (rep.entries[j].cls != EigenClass::Complex) continue;
      const cplx ei = rep.entries[i].energy;
      const cplx ej = rep.entries[j].energy;
      const double d = std::abs(ei - std::conj(ej));
      const double tol = std::max(tau[i], tau[j]) * (1.0 + std::max(std::abs(ei), std::abs(ej)));
      if (d < tol) candidates.emplace_back(d, i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [d, i, j] : candidates) {
    auto& a = rep.entries[i];
    auto& b = rep.entries[j];
    if (a.cls != EigenClass::Complex || b.cls != EigenClass::Complex) continue;
    a.cls = EigenClass::ConjugatePair;
    b.cls = EigenClass::ConjugatePair;
    a.partner = static_cast<int>(j);
    b.partner = static_cast<int>(i);
  }
  return rep;
}

namespace {

// Richardson values for the fine levels whose nearest coarse level is a
// mutual nearest neighbour.
std::vector<std::optional<cplx>> extrapolate(const std::vector<cplx>& fine,
                                             const std::vector<cplx>& coarse, int order) {
  std::vector<std::optional<cplx>> out(fine.size());
  if (coarse.empty()) return out;
  auto nearest = [](cplx e, const std::vector<cplx>& pool) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const double d = std::abs(e - pool[k]);
      if (d < dist) {
        dist = d;
        best = k;
      }
    }
    return best;
  };
  for (std::size_t k = 0; k < fine.size(); ++k) {
    const std::size_t c = nearest(fine[k], coarse);
    if (nearest(coarse[c], fine) != k) continue;
    out[k] = richardson(fine[k], coarse[c], order);
  }
  return out;
}

void reorder(SpectrumReport& rep) {
  const std::size_t m = rep.entries.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const cplx x = rep.entries[a].energy;
    const cplx y = rep.entries[b].energy;
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  std::vector<int> where(m);
  for (std::size_t k = 0; k < m; ++k) where[idx[k]] = static_cast<int>(k);
  std::vector<SpectrumEntry> sorted;
  sorted.reserve(m);
  for (std::size_t k : idx) {
    SpectrumEntry e = std::move(rep.entries[k]);
    if (e.partner >= 0) e.partner = where[static_cast<std::size_t>(e.partner)];
    sorted.push_back(std::move(e));
  }
  rep.entries = std::move(sorted);
}

}  // namespace

SpectrumReport analyze_spectrum(const Potential& spec, const Grid& grid, const SolverOptions& opts) {
  DenseOptions dense = opts.dense;
  dense.want_vectors = true;
  const BandedMatrix h = assemble_hamiltonian(spec, grid, opts.stencil);
  const Spectrum fine = dense_eigenvalues(h, dense);
  const std::size_t m = fine.values.size();

  std::vector<std::optional<cplx>> extrapolated(m);
  if (opts.richardson) {
    if (grid.size() % 2 == 0) {
      throw ConfigError("Richardson extrapolation needs an odd node count, got " +
                        std::to_string(grid.size()));
    }
    if (grid.kind() == GridKind::FullLineBox && grid.size() % 4 != 1) {
      throw ConfigError("Richardson extrapolation on a symmetric box needs n = 1 (mod 4) so the "
                        "coarse grid keeps the node at x = 0, got " + std::to_string(grid.size()));
    }
    DenseOptions coarse_opts = opts.dense;
    coarse_opts.want_vectors = false;
    const Spectrum coarse =
        dense_eigenvalues(assemble_hamiltonian(spec, grid.coarsened(), opts.stencil), coarse_opts);
    extrapolated = extrapolate(fine.values, coarse.values, stencil_order(opts.stencil));
  }

  std::optional<Spectrum> enlarged;
  if (opts.box_check) {
    const Grid big = grid.enlarged(opts.classify.box_factor);
    DenseOptions big_opts = opts.dense;
    big_opts.want_vectors = false;
    const BandedMatrix hb = assemble_hamiltonian(spec, big, opts.stencil);
    // The banded real route has no dense cap; dense routes skip the check
    // rather than fail when the enlarged box no longer fits.
    const bool fits = hb.order() <= big_opts.dense_cap ||
                      (big_opts.path == EigenPath::Auto && hb.is_real());
    if (fits) enlarged = dense_eigenvalues(hb, big_opts);
  }

  ClassifyContext ctx;
  ctx.enlarged = enlarged ? &*enlarged : nullptr;
  ctx.left_edge_open = grid.kind() != GridKind::HalfLineCutoff;
  ctx.right_edge_open = true;
  ctx.estimates.resize(m);
  for (std::size_t k = 0; k < m; ++k) ctx.estimates[k] = extrapolated[k].value_or(fine.values[k]);

  SpectrumReport rep = classify_spectrum(fine, opts.classify, ctx);

  std::vector<std::string> refine_notes(m);
  if (opts.refine) {
    const Shooter shooter(spec, grid, opts.shooting);
    ctx.refined.assign(m, false);
    int done = 0;
    for (std::size_t k = 0; k < m && done < opts.max_refine; ++k) {
      const SpectrumEntry& e = rep.entries[k];
      if (e.cls == EigenClass::Spurious || !(std::abs(e.energy) < opts.energy_cap)) continue;
      ++done;
      try {
        ctx.estimates[k] = shooter.refine(e.energy).energy;
        ctx.refined[k] = true;
      } catch (const SolverError& err) {
        refine_notes[k] = err.what();
      }
    }
    rep = classify_spectrum(fine, opts.classify, ctx);
  }

  for (std::size_t k = 0; k < m; ++k) {
    rep.entries[k].extrapolated = extrapolated[k];
    if (!refine_notes[k].empty()) {
      auto& note = rep.entries[k].note;
      note = note.empty() ? refine_notes[k] : note + "; " + refine_notes[k];
    }
  }
  rep.grid_kind = grid.kind();
  rep.x_min = grid.x_min();
  rep.x_max = grid.x_max();
  rep.n = grid.size();
  rep.stencil = opts.stencil;
  rep.richardson = opts.richardson;
  rep.refined = opts.refine;
  reorder(rep);
  return rep;
}

}  // namespace ptspec
