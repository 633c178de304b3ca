#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ptspec {

enum class GridKind {
  FullLineBox,     ///< symmetric box [-L, L], odd node count, x = 0 is a node
  HalfLineCutoff,  ///< [eps, x_max] with Dirichlet wall at the cutoff eps
  Interval,        ///< any other box [x_min, x_max]
};

std::string grid_kind_name(GridKind kind);

/// Request for a uniform grid. Setting `symmetric` demands a FullLineBox;
/// setting `cutoff` demands a HalfLineCutoff with x_min == *cutoff.
struct DomainSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  int n = 2001;
  bool symmetric = false;
  std::optional<double> cutoff;
};

/// Uniform grid x_j = x_min + j h, j = 0..n-1. The two end nodes carry the
/// Dirichlet condition; operators act on the n - 2 interior nodes.
class Grid {
 public:
  static Grid full_line(double half_width, int n);
  static Grid half_line(double cutoff, double x_max, int n);
  static Grid interval(double x_min, double x_max, int n);

  double x(int j) const;
  int size() const noexcept { return n_; }
  int interior_size() const noexcept { return n_ - 2; }
  double spacing() const noexcept { return h_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  GridKind kind() const noexcept { return kind_; }
  std::optional<double> cutoff() const;
  bool is_symmetric() const noexcept { return kind_ == GridKind::FullLineBox; }

  std::vector<double> nodes() const;

  /// Same box, 2n - 1 nodes (every old node kept).
  Grid refined() const;
  /// Same box, (n + 1) / 2 nodes; requires odd n.
  Grid coarsened() const;
  /// Box scaled by `factor` about its inner anchor (the origin for a
  /// symmetric box, the cutoff for a half line) at unchanged spacing.
  Grid enlarged(double factor) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(GridKind kind, double x_min, double x_max, int n);

  GridKind kind_ = GridKind::Interval;
  double x_min_ = 0.0;
  double x_max_ = 1.0;
  int n_ = 3;
  double h_ = 0.5;
};

Grid build_grid(const DomainSpec& domain);

}  // namespace ptspec
