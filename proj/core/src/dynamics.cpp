#include "ptspec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptspec/hamiltonian.hpp"

namespace ptspec {

namespace {

// LU factors of tridiag(off, diag, off) for repeated solves.
class Tridiagonal {
 public:
  Tridiagonal(std::vector<cplx> diag, cplx off) : off_(off), inv_(diag.size()), upper_(diag.size()) {
    const std::size_t m = diag.size();
    double scale = std::abs(off);
    for (const cplx& d : diag) scale = std::max(scale, std::abs(d));
    const double tiny = 1e3 * std::numeric_limits<double>::epsilon() * scale;
    for (std::size_t i = 0; i < m; ++i) {
      const cplx piv = i == 0 ? diag[0] : diag[i] - off_ * upper_[i - 1];
      if (!(std::abs(piv) > tiny)) {
        std::ostringstream os;
        os << "Crank-Nicolson: singular tridiagonal pivot at row " << i;
        throw SolverError(os.str());
      }
      inv_[i] = 1.0 / piv;
      upper_[i] = off_ * inv_[i];
    }
  }

  void solve(std::vector<cplx>& b) const {
    const std::size_t m = b.size();
    b[0] *= inv_[0];
    for (std::size_t i = 1; i < m; ++i) b[i] = (b[i] - off_ * b[i - 1]) * inv_[i];
    for (std::size_t i = m - 1; i-- > 0;) b[i] -= upper_[i] * b[i + 1];
  }

 private:
  cplx off_;
  std::vector<cplx> inv_;
  std::vector<cplx> upper_;
};

// One Crank-Nicolson step on the interior nodes: solves
// (I + a H) y = (I - a H) x with a = i dt / 2 (negative dt steps backwards).
class Stepper {
 public:
  Stepper(const std::vector<cplx>& v, double h, double dt)
      : v_(v), a_(cplx{0.0, 0.5 * dt}), k_(1.0 / (h * h)), lhs_(diagonal(v, h, a_), -a_ * k_) {}

  std::vector<cplx> step(const std::vector<cplx>& x) const {
    const std::size_t m = x.size();
    std::vector<cplx> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      cplx hx = (2.0 * k_ + v_[i]) * x[i];
      if (i > 0) hx -= k_ * x[i - 1];
      if (i + 1 < m) hx -= k_ * x[i + 1];
      y[i] = x[i] - a_ * hx;
    }
    lhs_.solve(y);
    return y;
  }

 private:
  static std::vector<cplx> diagonal(const std::vector<cplx>& v, double h, cplx a) {
    std::vector<cplx> d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = 1.0 + a * (2.0 / (h * h) + v[i]);
    return d;
  }

  const std::vector<cplx>& v_;
  cplx a_;
  double k_;
  Tridiagonal lhs_;
};

double interior_norm(const std::vector<cplx>& psi, double h) {
  double s = 0.0;
  for (const cplx& z : psi) s += std::norm(z);
  return h * s;
}

double sink(const std::vector<cplx>& v, const std::vector<cplx>& psi, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += v[i].imag() * std::norm(psi[i]);
  return 2.0 * h * s;
}

// Staggered flux S_{j+1/2} = 2 Im(conj(psi_j) psi_{j+1}) / h including the
// zero wall values.
double flux(const std::vector<cplx>& psi, std::ptrdiff_t j, double h) {
  const auto m = static_cast<std::ptrdiff_t>(psi.size());
  const cplx a = j >= 0 && j < m ? psi[static_cast<std::size_t>(j)] : cplx{};
  const cplx b = j + 1 >= 0 && j + 1 < m ? psi[static_cast<std::size_t>(j + 1)] : cplx{};
  return 2.0 * (std::conj(a) * b).imag() / h;
}

double local_defect(const std::vector<cplx>& v, const std::vector<cplx>& prev,
                    const std::vector<cplx>& cur, const std::vector<cplx>& next, double h, double dt) {
  double worst = 0.0;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    const auto j = static_cast<std::ptrdiff_t>(i);
    const double dp = (std::norm(next[i]) - std::norm(prev[i])) / (2.0 * dt);
    const double ds = (flux(cur, j, h) - flux(cur, j - 1, h)) / h;
    const double vi = -v[i].imag();
    worst = std::max(worst, std::fabs(dp + ds + 2.0 * vi * std::norm(cur[i])));
  }
  return worst;
}

}  // namespace

WaveState gaussian_packet(const Grid& grid, double x0, double k0, double width) {
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(x0) || !std::isfinite(k0)) {
    throw ConfigError("gaussian packet: need finite x0, k0 and width > 0");
  }
  const int n = grid.size();
  WaveState s;
  s.psi.assign(static_cast<std::size_t>(n), cplx{});
  for (int j = 1; j < n - 1; ++j) {
    const double x = grid.x(j);
    const double d = (x - x0) / width;
    s.psi[static_cast<std::size_t>(j)] = std::exp(-0.5 * d * d) * std::polar(1.0, k0 * x);
  }
  const double nrm = norm(grid, s.psi);
  if (!(nrm > 0.0)) throw ConfigError("gaussian packet vanishes on the grid");
  const double f = 1.0 / std::sqrt(nrm);
  for (cplx& z : s.psi) z *= f;
  return s;
}

double norm(const Grid& grid, std::span<const cplx> psi) {
  double s = 0.0;
  for (const cplx& z : psi) s += std::norm(z);
  return grid.spacing() * s;
}

TimeSeries crank_nicolson_propagate(const Potential& spec, const Grid& grid, const WaveState& psi0,
                                    double dt, int steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("propagate: dt must be positive");
  if (steps < 0) throw ConfigError("propagate: steps must be non-negative");
  const int n = grid.size();
  if (static_cast<int>(psi0.psi.size()) != n) {
    throw ConfigError("propagate: initial state has " + std::to_string(psi0.psi.size()) +
                      " samples for a grid of " + std::to_string(n));
  }
  const double h = grid.spacing();
  const auto all = sample_potential(spec, grid);
  const std::vector<cplx> v(all.begin() + 1, all.end() - 1);

  const Stepper forward(v, h, dt);
  const Stepper backward(v, h, -dt);

  std::vector<cplx> cur(psi0.psi.begin() + 1, psi0.psi.end() - 1);
  if (!(interior_norm(cur, h) > 0.0)) throw ConfigError("propagate: initial state has zero norm");
  std::vector<cplx> prev = backward.step(cur);
  std::vector<cplx> next = forward.step(cur);

  TimeSeries out;
  out.dt = dt;
  out.samples.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    TimeSample s;
    s.t = psi0.t + k * dt;
    s.norm = interior_norm(cur, h);
    s.dn_dt = (interior_norm(next, h) - interior_norm(prev, h)) / (2.0 * dt);
    s.sink_integral = sink(v, cur, h);
    s.max_defect = local_defect(v, prev, cur, next, h, dt);
    if (!std::isfinite(s.norm)) {
      throw SolverError("Crank-Nicolson: non-finite norm at step " + std::to_string(k));
    }
    out.samples.push_back(s);
    if (k == steps) break;
    prev = std::move(cur);
    cur = std::move(next);
    next = forward.step(cur);
  }

  out.final_state.t = psi0.t + steps * dt;
  out.final_state.psi.assign(static_cast<std::size_t>(n), cplx{});
  std::copy(cur.begin(), cur.end(), out.final_state.psi.begin() + 1);
  return out;
}

double continuity_defect(const TimeSeries& series) {
  if (series.samples.size() < 3) throw ConfigError("continuity defect needs at least 3 samples");
  double worst = 0.0;
  for (const auto& s : series.samples) {
    worst = std::max(worst, std::fabs(s.dn_dt - s.sink_integral) / std::max(s.norm, 1e-30));
  }
  return worst;
}

}  // namespace ptspec
