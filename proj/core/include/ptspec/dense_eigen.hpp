#pragma once

#include <string_view>
#include <vector>

#include "ptspec/hamiltonian.hpp"
#include "ptspec/types.hpp"

namespace ptspec {

/// Auto picks the cheapest exact route for the matrix structure; General
/// forces complex Hessenberg QR regardless of structure.
enum class EigenPath { Auto, General };

/// Route actually taken.
enum class EigenRoute {
  RealSymmetric,  ///< real symmetric band solver
  PTReal,         ///< exact PT structure mapped to a real matrix, real QR
  GeneralComplex, ///< balancing, Hessenberg reduction, complex shifted QR
};

std::string_view eigen_route_name(EigenRoute r);

struct DenseOptions {
  EigenPath path = EigenPath::Auto;
  /// Largest matrix order accepted by the dense QR routes.
  int dense_cap = 4000;
  bool want_vectors = false;
  int inverse_iterations = 3;
};

/// Eigenvalues sorted by real part, ties by imaginary part. When vectors were
/// requested, vectors[k] (unit norm) and condition[k] belong to values[k].
struct Spectrum {
  std::vector<cplx> values;
  std::vector<std::vector<cplx>> vectors;
  /// ||x||^2 / |x^T x|, the eigenvalue condition number of a complex
  /// symmetric matrix (left and right vectors coincide up to conjugation).
  std::vector<double> condition;
  EigenRoute route = EigenRoute::GeneralComplex;
  double matrix_norm = 0.0;
};

/// All eigenvalues of `m`. Throws SolverError when QR fails to converge
/// (naming the eigenvalue index) or when the order exceeds the dense cap on a
/// dense route.
Spectrum dense_eigenvalues(const BandedMatrix& m, const DenseOptions& opts = {});

/// Sorts by (Re, Im) keeping vectors and condition numbers aligned.
void sort_spectrum(Spectrum& s);

/// ||M v - E v|| / (||M||_inf ||v||).
double backward_error(const BandedMatrix& m, cplx e, const std::vector<cplx>& v);

}  // namespace ptspec
