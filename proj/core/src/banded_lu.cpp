#include "ptspec/banded_lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptspec {

BandedLU::BandedLU(const BandedMatrix& a, cplx shift)
    : m_(a.order()),
      bw_(a.bandwidth()),
      width_(static_cast<std::size_t>(3 * a.bandwidth() + 1)),
      data_(static_cast<std::size_t>(a.order()) * width_, cplx{}),
      pivots_(static_cast<std::size_t>(a.order()), 0) {
  for (int i = 0; i < m_; ++i) {
    for (int j = std::max(0, i - bw_); j <= std::min(m_ - 1, i + bw_); ++j) {
      at(i, j) = a(i, j) - (i == j ? shift : cplx{});
    }
  }
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(a.norm_inf(), 1e-300);
  min_pivot_ = std::numeric_limits<double>::infinity();

  for (int k = 0; k < m_; ++k) {
    const int last = std::min(m_ - 1, k + bw_);
    int p = k;
    double best = std::abs(at(k, k));
    for (int i = k + 1; i <= last; ++i) {
      const double mag = std::abs(at(i, k));
      if (mag > best) {
        best = mag;
        p = i;
      }
    }
    pivots_[static_cast<std::size_t>(k)] = p;
    const int right = std::min(m_ - 1, k + 2 * bw_);
    if (p != k) {
      for (int j = k; j <= right; ++j) std::swap(at(k, j), at(p, j));
    }
    if (std::abs(at(k, k)) == 0.0) at(k, k) = tiny;
    min_pivot_ = std::min(min_pivot_, std::abs(at(k, k)));
    const cplx inv = 1.0 / at(k, k);
    for (int i = k + 1; i <= last; ++i) {
      const cplx l = at(i, k) * inv;
      at(i, k) = l;
      if (l == cplx{}) continue;
      for (int j = k + 1; j <= right; ++j) at(i, j) -= l * at(k, j);
    }
  }
}

void BandedLU::solve(std::span<cplx> b) const {
  if (static_cast<int>(b.size()) != m_) throw DomainError("banded LU: size mismatch");
  for (int k = 0; k < m_; ++k) {
    const int p = pivots_[static_cast<std::size_t>(k)];
    if (p != k) std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
    const cplx bk = b[static_cast<std::size_t>(k)];
    for (int i = k + 1; i <= std::min(m_ - 1, k + bw_); ++i) {
      b[static_cast<std::size_t>(i)] -= at(i, k) * bk;
    }
  }
  for (int i = m_ - 1; i >= 0; --i) {
    cplx s = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= std::min(m_ - 1, i + 2 * bw_); ++j) {
      s -= at(i, j) * b[static_cast<std::size_t>(j)];
    }
    b[static_cast<std::size_t>(i)] = s / at(i, i);
  }
}

namespace {

void normalize(std::vector<cplx>& v) {
  double big = 0.0;
  for (const cplx& z : v) big = std::max({big, std::fabs(z.real()), std::fabs(z.imag())});
  if (!(big > 0.0) || !std::isfinite(big)) throw SolverError("inverse iteration: degenerate iterate");
  for (cplx& z : v) z /= big;
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  s = std::sqrt(s);
  if (!(s > 0.0) || !std::isfinite(s)) throw SolverError("inverse iteration: degenerate iterate");
  for (cplx& z : v) z /= s;
}

}  // namespace

std::vector<cplx> inverse_iteration(const BandedMatrix& a, cplx e, int iterations) {
  const BandedLU lu(a, e);
  const int m = a.order();
  std::vector<cplx> v(static_cast<std::size_t>(m));
  // Deterministic start with no special symmetry under index reversal.
  for (int i = 0; i < m; ++i) {
    v[static_cast<std::size_t>(i)] = cplx(1.0 + 0.37 * std::sin(1.7 * i + 0.3), 0.21 * std::cos(0.9 * i));
  }
  normalize(v);
  for (int it = 0; it < std::max(1, iterations); ++it) {
    lu.solve(v);
    normalize(v);
  }
  return v;
}

}  // namespace ptspec
