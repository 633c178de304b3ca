#include "ptspec/dense_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lapack.hpp"
#include "ptspec/banded_lu.hpp"

namespace ptspec {

namespace {

void check_cap(int order, const DenseOptions& opts) {
  if (order > opts.dense_cap) {
    throw SolverError("dense eigensolver: matrix order " + std::to_string(order) +
                      " exceeds dense cap " + std::to_string(opts.dense_cap));
  }
}

[[noreturn]] void qr_failed(const char* routine, int info, int order) {
  throw SolverError(std::string("dense eigensolver: ") + routine +
                    " did not converge; eigenvalues with index " + std::to_string(info - 1) +
                    " .. " + std::to_string(order - 1) + " unresolved");
}

std::vector<cplx> real_symmetric(const BandedMatrix& m) {
  const int n = m.order();
  const int kd = m.bandwidth();
  const int ldab = kd + 1;
  std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
  // Upper storage: AB(kd + i - j, j) = A(i, j) for i <= j.
  for (int k = 0; k <= kd; ++k) {
    const auto& b = m.band(k);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::size_t j = i + static_cast<std::size_t>(k);
      ab[static_cast<std::size_t>(kd - k) + j * ldab] = b[i].real();
    }
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> work(static_cast<std::size_t>(std::max(1, 3 * n - 2)));
  double z = 0.0;
  const int ldz = 1;
  int info = 0;
  dsbev_("N", "U", &n, &kd, ab.data(), &ldab, w.data(), &z, &ldz, work.data(), &info, 1, 1);
  if (info < 0) throw SolverError("dense eigensolver: dsbev argument error " + std::to_string(-info));
  if (info > 0) qr_failed("dsbev", info, n);
  return {w.begin(), w.end()};
}

// Real matrix R = Q^H M Q for the unitary Q whose columns are e_c (odd order
// only), (e_i + e_i')/sqrt2 and i (e_i - e_i')/sqrt2 with i' = n - 1 - i.
// J conj(M) J == M makes R exactly real up to rounding in the products.
std::vector<double> pt_real_form(const BandedMatrix& m) {
  const int n = m.order();
  const int half = n / 2;
  const bool centre = n % 2 == 1;
  const double r = 1.0 / std::sqrt(2.0);

  struct Coef {
    int col;
    cplx q;
  };
  auto basis = [&](int i, Coef* out) -> int {
    if (centre && i == half) {
      out[0] = {0, 1.0};
      return 1;
    }
    const int pair = i < half ? i : n - 1 - i;        // 0 .. half-1
    const int dist = half - pair;                      // 1 .. half
    const int base = centre ? 2 * dist - 1 : 2 * dist - 2;
    const bool low = i < half;
    out[0] = {base, r};
    out[1] = {base + 1, low ? cplx(0.0, r) : cplx(0.0, -r)};
    return 2;
  };

  std::vector<double> rm(static_cast<std::size_t>(n) * n, 0.0);
  const int bw = m.bandwidth();
  for (int j = 0; j < n; ++j) {
    Coef bj[2];
    const int nj = basis(j, bj);
    for (int i = std::max(0, j - bw); i <= std::min(n - 1, j + bw); ++i) {
      const cplx v = m(i, j);
      Coef bi[2];
      const int ni = basis(i, bi);
      for (int a = 0; a < ni; ++a) {
        for (int b = 0; b < nj; ++b) {
          rm[static_cast<std::size_t>(bi[a].col) + static_cast<std::size_t>(bj[b].col) * n] +=
              (std::conj(bi[a].q) * v * bj[b].q).real();
        }
      }
    }
  }
  return rm;
}

std::vector<cplx> real_nonsymmetric(std::vector<double>& a, int n) {
  int ilo = 1;
  int ihi = n;
  int info = 0;
  std::vector<double> scale(static_cast<std::size_t>(n));
  dgebal_("B", &n, a.data(), &n, &ilo, &ihi, scale.data(), &info, 1);
  if (info != 0) throw SolverError("dense eigensolver: dgebal failed");

  std::vector<double> tau(static_cast<std::size_t>(std::max(1, n - 1)));
  int lwork = -1;
  double query = 0.0;
  dgehrd_(&n, &ilo, &ihi, a.data(), &n, tau.data(), &query, &lwork, &info);
  lwork = std::max(1, static_cast<int>(query));
  std::vector<double> work(static_cast<std::size_t>(lwork));
  dgehrd_(&n, &ilo, &ihi, a.data(), &n, tau.data(), work.data(), &lwork, &info);
  if (info != 0) throw SolverError("dense eigensolver: dgehrd failed");

  std::vector<double> wr(static_cast<std::size_t>(n));
  std::vector<double> wi(static_cast<std::size_t>(n));
  double z = 0.0;
  const int ldz = 1;
  lwork = -1;
  dhseqr_("E", "N", &n, &ilo, &ihi, a.data(), &n, wr.data(), wi.data(), &z, &ldz, &query, &lwork,
          &info, 1, 1);
  lwork = std::max(n, static_cast<int>(query));
  work.assign(static_cast<std::size_t>(lwork), 0.0);
  dhseqr_("E", "N", &n, &ilo, &ihi, a.data(), &n, wr.data(), wi.data(), &z, &ldz, work.data(),
          &lwork, &info, 1, 1);
  if (info > 0) qr_failed("dhseqr", info, n);
  if (info < 0) throw SolverError("dense eigensolver: dhseqr argument error");

  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = {wr[static_cast<std::size_t>(k)], wi[static_cast<std::size_t>(k)]};
  return out;
}

std::vector<cplx> general_complex(const BandedMatrix& m) {
  const int n = m.order();
  std::vector<cplx> a = m.dense();
  int ilo = 1;
  int ihi = n;
  int info = 0;
  std::vector<double> scale(static_cast<std::size_t>(n));
  // A tridiagonal matrix is already Hessenberg; scaling alone keeps it so.
  const bool hessenberg = m.bandwidth() <= 1;
  zgebal_(hessenberg ? "S" : "B", &n, a.data(), &n, &ilo, &ihi, scale.data(), &info, 1);
  if (info != 0) throw SolverError("dense eigensolver: zgebal failed");

  int lwork = -1;
  cplx query{};
  if (!hessenberg) {
    std::vector<cplx> tau(static_cast<std::size_t>(std::max(1, n - 1)));
    zgehrd_(&n, &ilo, &ihi, a.data(), &n, tau.data(), &query, &lwork, &info);
    lwork = std::max(1, static_cast<int>(query.real()));
    std::vector<cplx> work(static_cast<std::size_t>(lwork));
    zgehrd_(&n, &ilo, &ihi, a.data(), &n, tau.data(), work.data(), &lwork, &info);
    if (info != 0) throw SolverError("dense eigensolver: zgehrd failed");
  }

  std::vector<cplx> w(static_cast<std::size_t>(n));
  cplx z{};
  const int ldz = 1;
  lwork = -1;
  zhseqr_("E", "N", &n, &ilo, &ihi, a.data(), &n, w.data(), &z, &ldz, &query, &lwork, &info, 1, 1);
  lwork = std::max(n, static_cast<int>(query.real()));
  std::vector<cplx> work(static_cast<std::size_t>(lwork));
  zhseqr_("E", "N", &n, &ilo, &ihi, a.data(), &n, w.data(), &z, &ldz, work.data(), &lwork, &info,
          1, 1);
  if (info > 0) qr_failed("zhseqr", info, n);
  if (info < 0) throw SolverError("dense eigensolver: zhseqr argument error");
  return w;
}

}  // namespace

std::string_view eigen_route_name(EigenRoute r) {
  switch (r) {
    case EigenRoute::RealSymmetric: return "real-symmetric";
    case EigenRoute::PTReal: return "pt-real";
    case EigenRoute::GeneralComplex: return "general-complex";
  }
  return "general-complex";
}

void sort_spectrum(Spectrum& s) {
  std::vector<std::size_t> idx(s.values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const cplx x = s.values[a];
    const cplx y = s.values[b];
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  auto permute = [&](auto& v) {
    if (v.size() != idx.size()) return;
    std::remove_reference_t<decltype(v)> out;
    out.reserve(v.size());
    for (std::size_t k : idx) out.push_back(std::move(v[k]));
    v = std::move(out);
  };
  permute(s.values);
  permute(s.vectors);
  permute(s.condition);
}

double backward_error(const BandedMatrix& m, cplx e, const std::vector<cplx>& v) {
  const auto mv = m.multiply(v);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += std::norm(mv[i] - e * v[i]);
    den += std::norm(v[i]);
  }
  return std::sqrt(num) / (std::max(m.norm_inf(), 1e-300) * std::sqrt(den));
}

Spectrum dense_eigenvalues(const BandedMatrix& m, const DenseOptions& opts) {
  Spectrum s;
  s.matrix_norm = m.norm_inf();
  const int n = m.order();

  if (opts.path == EigenPath::Auto && m.is_real()) {
    s.route = EigenRoute::RealSymmetric;
    s.values = real_symmetric(m);
  } else if (opts.path == EigenPath::Auto && m.is_pt_symmetric()) {
    check_cap(n, opts);
    s.route = EigenRoute::PTReal;
    auto r = pt_real_form(m);
    s.values = real_nonsymmetric(r, n);
  } else {
    check_cap(n, opts);
    s.route = EigenRoute::GeneralComplex;
    s.values = general_complex(m);
  }

  for (const cplx& e : s.values) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      throw SolverError("dense eigensolver: non-finite eigenvalue");
    }
  }

  if (opts.want_vectors) {
    s.vectors.reserve(s.values.size());
    s.condition.reserve(s.values.size());
    for (const cplx& e : s.values) {
      auto v = inverse_iteration(m, e, opts.inverse_iterations);
      cplx xtx{};
      for (const cplx& z : v) xtx += z * z;
      s.condition.push_back(1.0 / std::max(std::abs(xtx), 1e-300));
      s.vectors.push_back(std::move(v));
    }
  }
  sort_spectrum(s);
  return s;
}

}  // namespace ptspec
