#include "ptspec/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ptspec {

std::string_view stencil_name(Stencil s) {
  return s == Stencil::ThreePoint ? "3pt" : "5pt";
}

int stencil_order(Stencil s) { return s == Stencil::ThreePoint ? 2 : 4; }

BandedMatrix::BandedMatrix(int order, int bandwidth) : order_(order), bandwidth_(bandwidth) {
  if (order < 1) throw DomainError("banded matrix: order must be >= 1");
  if (bandwidth < 0) throw DomainError("banded matrix: negative bandwidth");
  bandwidth_ = std::min(bandwidth, order - 1);
  for (int k = 0; k <= bandwidth_; ++k) {
    bands_.emplace_back(static_cast<std::size_t>(order - k), cplx{});
  }
}

cplx BandedMatrix::operator()(int i, int j) const {
  const int k = std::abs(i - j);
  if (k > bandwidth_) return {};
  return bands_[static_cast<std::size_t>(k)][static_cast<std::size_t>(std::min(i, j))];
}

std::vector<cplx> BandedMatrix::dense() const {
  const auto m = static_cast<std::size_t>(order_);
  std::vector<cplx> a(m * m, cplx{});
  for (int k = 0; k <= bandwidth_; ++k) {
    const auto& b = bands_[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[i + (i + k) * m] = b[i];
      a[(i + k) + i * m] = b[i];
    }
  }
  return a;
}

std::vector<cplx> BandedMatrix::multiply(std::span<const cplx> v) const {
  if (static_cast<int>(v.size()) != order_) throw DomainError("banded matrix: size mismatch");
  std::vector<cplx> out(v.size(), cplx{});
  const auto& d = bands_[0];
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = d[i] * v[i];
  for (int k = 1; k <= bandwidth_; ++k) {
    const auto& b = bands_[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < b.size(); ++i) {
      out[i] += b[i] * v[i + k];
      out[i + k] += b[i] * v[i];
    }
  }
  return out;
}

double BandedMatrix::norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < order_; ++i) {
    double row = 0.0;
    for (int j = std::max(0, i - bandwidth_); j <= std::min(order_ - 1, i + bandwidth_); ++j) {
      row += std::abs((*this)(i, j));
    }
    best = std::max(best, row);
  }
  return best;
}

bool BandedMatrix::is_real() const {
  for (const auto& b : bands_) {
    for (const cplx& z : b) {
      if (z.imag() != 0.0) return false;
    }
  }
  return true;
}

bool BandedMatrix::is_pt_symmetric() const {
  for (int k = 0; k <= bandwidth_; ++k) {
    const auto& b = bands_[static_cast<std::size_t>(k)];
    const std::size_t len = b.size();
    for (std::size_t i = 0; i < len; ++i) {
      const cplx mirror = std::conj(b[len - 1 - i]);
      if (b[i].real() != mirror.real() || b[i].imag() != mirror.imag()) return false;
    }
  }
  return true;
}

double BandedMatrix::pt_defect() const {
  double worst = 0.0;
  for (int k = 0; k <= bandwidth_; ++k) {
    const auto& b = bands_[static_cast<std::size_t>(k)];
    const std::size_t len = b.size();
    for (std::size_t i = 0; i < len; ++i) {
      worst = std::max(worst, std::abs(b[i] - std::conj(b[len - 1 - i])));
    }
  }
  return worst;
}

std::vector<cplx> sample_potential(const Potential& spec, const Grid& grid) {
  std::vector<cplx> v(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    const bool wall = j == 0 || j == grid.size() - 1;
    if (wall && spec.is_singular_at(x)) {
      v[static_cast<std::size_t>(j)] = cplx{};
      continue;
    }
    try {
      v[static_cast<std::size_t>(j)] = spec.eval(x);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "node " << j << " (x = " << x << "): " << e.what();
      throw DomainError(os.str());
    }
  }
  return v;
}

BandedMatrix assemble_hamiltonian(const Potential& spec, const Grid& grid, Stencil stencil) {
  const int m = grid.interior_size();
  const double h = grid.spacing();
  const double ih2 = 1.0 / (h * h);
  std::vector<cplx> v(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const int j = i + 1;
    const double x = grid.x(j);
    try {
      v[static_cast<std::size_t>(i)] = spec.eval(x);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "assemble_hamiltonian: node " << j << " (x = " << x << "): " << e.what();
      throw DomainError(os.str());
    }
  }

  if (stencil == Stencil::ThreePoint) {
    BandedMatrix a(m, 1);
    for (int i = 0; i < m; ++i) {
      a.band(0)[static_cast<std::size_t>(i)] = 2.0 * ih2 + v[static_cast<std::size_t>(i)];
    }
    if (a.bandwidth() >= 1) {
      for (auto& z : a.band(1)) z = -ih2;
    }
    return a;
  }

  const double c = ih2 / 12.0;
  BandedMatrix a(m, 2);
  for (int i = 0; i < m; ++i) {
    const double wall = (i == 0 ? 1.0 : 0.0) + (i == m - 1 ? 1.0 : 0.0);
    a.band(0)[static_cast<std::size_t>(i)] = (30.0 - wall) * c + v[static_cast<std::size_t>(i)];
  }
  if (a.bandwidth() >= 1) {
    for (auto& z : a.band(1)) z = -16.0 * c;
  }
  if (a.bandwidth() >= 2) {
    for (auto& z : a.band(2)) z = c;
  }
  return a;
}

}  // namespace ptspec
