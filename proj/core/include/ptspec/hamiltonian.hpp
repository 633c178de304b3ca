#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ptspec/grid.hpp"
#include "ptspec/potentials.hpp"
#include "ptspec/types.hpp"

namespace ptspec {

enum class Stencil { ThreePoint, FivePoint };

std::string_view stencil_name(Stencil s);
/// Formal order of accuracy: 2 or 4.
int stencil_order(Stencil s);

/// Complex symmetric banded matrix (equal to its plain transpose). Only the
/// main diagonal and the upper diagonals are stored: band(k)[i] is entry
/// (i, i + k) == (i + k, i).
class BandedMatrix {
 public:
  BandedMatrix(int order, int bandwidth);

  int order() const noexcept { return order_; }
  int bandwidth() const noexcept { return bandwidth_; }

  std::vector<cplx>& band(int k) { return bands_.at(static_cast<std::size_t>(k)); }
  const std::vector<cplx>& band(int k) const { return bands_.at(static_cast<std::size_t>(k)); }

  /// Entry (i, j); zero outside the band.
  cplx operator()(int i, int j) const;

  /// Column-major dense copy.
  std::vector<cplx> dense() const;
  std::vector<cplx> multiply(std::span<const cplx> v) const;

  /// Max absolute row sum.
  double norm_inf() const;
  bool is_real() const;
  /// J conj(M) J == M with J the index reversal, compared bit for bit.
  bool is_pt_symmetric() const;
  /// Largest |M - J conj(M) J| entry.
  double pt_defect() const;

 private:
  int order_;
  int bandwidth_;
  std::vector<std::vector<cplx>> bands_;
};

/// V at every grid node (including the two boundary nodes when regular).
/// Throws DomainError naming the offending node.
std::vector<cplx> sample_potential(const Potential& spec, const Grid& grid);

/// -d^2/dx^2 + V on the interior nodes with Dirichlet ends. The five-point
/// rows next to each wall use an odd ghost value u(-h) = -u(h), which keeps
/// the matrix symmetric and leaves 29/(12 h^2) on the corner diagonals.
BandedMatrix assemble_hamiltonian(const Potential& spec, const Grid& grid,
                                  Stencil stencil = Stencil::ThreePoint);

}  // namespace ptspec
