#include "ptspec/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptspec/hamiltonian.hpp"

namespace ptspec {

namespace {

constexpr double kBaseStep = 0.0025;
constexpr double kStiffness = 0.05;  // target dx sqrt|V| per substep
constexpr int kMaxSubsteps = 200000;
constexpr double kRescale = 1e100;

struct State {
  cplx u;
  cplx p;
};

double magnitude(const State& s) { return std::sqrt(std::norm(s.u) + std::norm(s.p)); }

State rk4(State y, double d, cplx f0, cplx fm, cplx f1) {
  const cplx k1u = y.p;
  const cplx k1p = f0 * y.u;
  const cplx k2u = y.p + 0.5 * d * k1p;
  const cplx k2p = fm * (y.u + 0.5 * d * k1u);
  const cplx k3u = y.p + 0.5 * d * k2p;
  const cplx k3p = fm * (y.u + 0.5 * d * k2u);
  const cplx k4u = y.p + d * k3p;
  const cplx k4p = f1 * (y.u + d * k3u);
  y.u += d / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  y.p += d / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  return y;
}

void rescale(State& s) {
  const double m = magnitude(s);
  if (m > kRescale) {
    s.u /= m;
    s.p /= m;
  }
}

void check_finite(const State& s, double x) {
  if (!std::isfinite(s.u.real()) || !std::isfinite(s.u.imag()) || !std::isfinite(s.p.real()) ||
      !std::isfinite(s.p.imag())) {
    std::ostringstream os;
    os << "shooting: non-finite solution near x = " << x;
    throw SolverError(os.str());
  }
}

}  // namespace

int default_matching_node(const Potential& spec, const Grid& grid) {
  const auto v = sample_potential(spec, grid);
  const int n = grid.size();
  int best = -1;
  for (int j = 1; j < n - 1; ++j) {
    const double c = v[static_cast<std::size_t>(j)].real();
    const bool interior_wall_l = j - 1 == 0 && spec.is_singular_at(grid.x(0));
    const bool interior_wall_r = j + 1 == n - 1 && spec.is_singular_at(grid.x(n - 1));
    if (interior_wall_l || interior_wall_r) continue;
    if (c < v[static_cast<std::size_t>(j - 1)].real() && c < v[static_cast<std::size_t>(j + 1)].real()) {
      if (best < 0 || c < v[static_cast<std::size_t>(best)].real()) best = j;
    }
  }
  if (best >= 1 && best <= n - 2) return best;
  return (n - 1) / 2;
}

Shooter::Shooter(const Potential& spec, const Grid& grid, const ShootingOptions& opts)
    : grid_(grid), opts_(opts) {
  const int n = grid.size();
  const double h = grid.spacing();
  match_ = opts.matching_node >= 0 ? opts.matching_node : default_matching_node(spec, grid);
  match_ = std::clamp(match_, 1, n - 2);

  const auto nodes = sample_potential(spec, grid);
  const int base = opts.substeps > 0 ? opts.substeps
                                     : std::max(1, static_cast<int>(std::ceil(h / kBaseStep - 1e-9)));
  cell_steps_.resize(static_cast<std::size_t>(n - 1));
  cell_offset_.resize(static_cast<std::size_t>(n));
  std::size_t total = 0;
  for (int j = 0; j < n - 1; ++j) {
    const double vmax = std::max(std::abs(nodes[static_cast<std::size_t>(j)]),
                                 std::abs(nodes[static_cast<std::size_t>(j + 1)]));
    const double stiff = std::ceil(h * std::sqrt(vmax) / kStiffness);
    const int s = static_cast<int>(std::clamp(std::max<double>(base, stiff), 1.0,
                                              static_cast<double>(kMaxSubsteps)));
    cell_steps_[static_cast<std::size_t>(j)] = s;
    cell_offset_[static_cast<std::size_t>(j)] = total;
    total += static_cast<std::size_t>(2 * s + 1);
  }
  cell_offset_[static_cast<std::size_t>(n - 1)] = total;

  fine_v_.resize(total);
  for (int j = 0; j < n - 1; ++j) {
    const int s = cell_steps_[static_cast<std::size_t>(j)];
    const std::size_t off = cell_offset_[static_cast<std::size_t>(j)];
    const double x0 = grid.x(j);
    const double x1 = grid.x(j + 1);
    fine_v_[off] = nodes[static_cast<std::size_t>(j)];
    fine_v_[off + static_cast<std::size_t>(2 * s)] = nodes[static_cast<std::size_t>(j + 1)];
    for (int k = 1; k < 2 * s; ++k) {
      const double x = x0 + (x1 - x0) * (static_cast<double>(k) / (2.0 * s));
      fine_v_[off + static_cast<std::size_t>(k)] = spec.eval(x);
    }
  }
}

cplx Shooter::residual(cplx e) const {
  if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
    throw DomainError("shooting: non-finite energy");
  }
  const int n = grid_.size();
  const double h = grid_.spacing();

  State left{0.0, h};
  for (int j = 0; j < match_; ++j) {
    const int s = cell_steps_[static_cast<std::size_t>(j)];
    const cplx* v = fine_v_.data() + cell_offset_[static_cast<std::size_t>(j)];
    const double d = h / s;
    for (int k = 0; k < s; ++k) {
      left = rk4(left, d, v[2 * k] - e, v[2 * k + 1] - e, v[2 * k + 2] - e);
    }
    rescale(left);
    check_finite(left, grid_.x(j + 1));
  }

  State right{0.0, -h};
  for (int j = n - 2; j >= match_; --j) {
    const int s = cell_steps_[static_cast<std::size_t>(j)];
    const cplx* v = fine_v_.data() + cell_offset_[static_cast<std::size_t>(j)];
    const double d = -h / s;
    for (int k = s; k > 0; --k) {
      right = rk4(right, d, v[2 * k] - e, v[2 * k - 1] - e, v[2 * k - 2] - e);
    }
    rescale(right);
    check_finite(right, grid_.x(j));
  }

  const cplx w = left.u * right.p - left.p * right.u;
  const double scale = magnitude(left) * magnitude(right);
  if (!(scale > 0.0)) throw SolverError("shooting: vanishing solution at the matching node");
  return w / scale;
}

RefineResult Shooter::refine(cplx e0) const {
  const double radius = opts_.search_radius > 0.0 ? opts_.search_radius : 1.0 + 0.1 * std::abs(e0);
  cplx ea = e0;
  cplx ra = residual(ea);
  cplx eb = e0 + 1e-6 * std::max(1.0, std::abs(e0));
  cplx rb = residual(eb);
  for (int it = 1; it <= opts_.max_iterations; ++it) {
    const cplx denom = rb - ra;
    if (denom == cplx{}) {
      if (std::abs(rb) < opts_.residual_tol) return {eb, rb, it};
      break;
    }
    const cplx ec = eb - rb * (eb - ea) / denom;
    if (!std::isfinite(ec.real()) || !std::isfinite(ec.imag()) || std::abs(ec - e0) > radius) {
      std::ostringstream os;
      os << "shooting refinement from E0 = " << e0 << " left the search radius " << radius;
      throw SolverError(os.str());
    }
    const cplx rc = residual(ec);
    const double step = std::abs(ec - eb);
    ea = eb;
    ra = rb;
    eb = ec;
    rb = rc;
    if (step < opts_.step_tol * std::max(1.0, std::abs(eb)) && std::abs(rb) < opts_.residual_tol) {
      return {eb, rb, it};
    }
  }
  std::ostringstream os;
  os << "shooting refinement from E0 = " << e0 << " did not converge in " << opts_.max_iterations
     << " iterations";
  throw SolverError(os.str());
}

cplx shooting_residual(const Potential& spec, const Grid& grid, cplx energy,
                       const ShootingOptions& opts) {
  return Shooter(spec, grid, opts).residual(energy);
}

cplx refine_eigen_shooting(const Potential& spec, const Grid& grid, cplx e0,
                           const ShootingOptions& opts) {
  return Shooter(spec, grid, opts).refine(e0).energy;
}

std::vector<cplx> rectangle_scan(const Potential& spec, const Grid& grid, cplx lower_left,
                                 cplx upper_right, int nre, int nim, const ShootingOptions& opts) {
  if (nre < 3 || nim < 1) throw ConfigError("rectangle scan: need nre >= 3 and nim >= 1");
  const Shooter shooter(spec, grid, opts);
  const double re0 = lower_left.real();
  const double re1 = upper_right.real();
  const double im0 = lower_left.imag();
  const double im1 = upper_right.imag();
  const double dre = (re1 - re0) / (nre - 1);
  const double dim = nim > 1 ? (im1 - im0) / (nim - 1) : 0.0;

  std::vector<double> mag(static_cast<std::size_t>(nre * nim));
  auto at = [&](int a, int b) -> double& { return mag[static_cast<std::size_t>(a * nim + b)]; };
  for (int a = 0; a < nre; ++a) {
    for (int b = 0; b < nim; ++b) {
      at(a, b) = std::abs(shooter.residual({re0 + a * dre, im0 + b * dim}));
    }
  }

  ShootingOptions local = opts;
  local.search_radius = 2.0 * std::max(dre, dim) + 1e-12;
  const Shooter refiner(spec, grid, local);
  std::vector<cplx> roots;
  for (int a = 0; a < nre; ++a) {
    for (int b = 0; b < nim; ++b) {
      bool is_min = true;
      for (int da = -1; da <= 1 && is_min; ++da) {
        for (int db = -1; db <= 1; ++db) {
          if (da == 0 && db == 0) continue;
          const int aa = a + da;
          const int bb = b + db;
          if (aa < 0 || aa >= nre || bb < 0 || bb >= nim) continue;
          if (at(aa, bb) < at(a, b)) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;
      try {
        const cplx e = refiner.refine({re0 + a * dre, im0 + b * dim}).energy;
        if (e.real() < re0 - dre || e.real() > re1 + dre) continue;
        const double merge = 1e-7 * std::max(1.0, std::abs(e));
        const bool dup = std::any_of(roots.begin(), roots.end(),
                                     [&](cplx r) { return std::abs(r - e) < merge; });
        if (!dup) roots.push_back(e);
      } catch (const SolverError&) {
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

}  // namespace ptspec
