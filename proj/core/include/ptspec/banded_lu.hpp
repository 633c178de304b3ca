#pragma once

#include <span>
#include <vector>

#include "ptspec/hamiltonian.hpp"
#include "ptspec/types.hpp"

namespace ptspec {

/// LU factorization of (A - shift I) for a symmetric banded A, with partial
/// pivoting. Exactly zero pivots are replaced by eps * ||A||, which is what
/// inverse iteration needs when the shift is an eigenvalue.
class BandedLU {
 public:
  BandedLU(const BandedMatrix& a, cplx shift);

  /// Overwrites `rhs` with the solution.
  void solve(std::span<cplx> rhs) const;

  int order() const noexcept { return m_; }
  double min_pivot() const noexcept { return min_pivot_; }

 private:
  cplx& at(int i, int j) { return data_[static_cast<std::size_t>(i) * width_ + (j - i + bw_)]; }
  const cplx& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * width_ + (j - i + bw_)];
  }

  int m_;
  int bw_;
  std::size_t width_;
  std::vector<cplx> data_;
  std::vector<int> pivots_;
  double min_pivot_ = 0.0;
};

/// Right eigenvector for the eigenvalue estimate `e` by shifted inverse
/// iteration from a fixed start vector. Returned with unit 2-norm.
std::vector<cplx> inverse_iteration(const BandedMatrix& a, cplx e, int iterations = 3);

}  // namespace ptspec
