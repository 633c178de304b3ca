#include "ptspec/grid.hpp"

#include <cmath>
#include <sstream>

#include "ptspec/types.hpp"

namespace ptspec {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("grid: " + what);
}

}  // namespace

std::string grid_kind_name(GridKind kind) {
  switch (kind) {
    case GridKind::FullLineBox: return "full-line";
    case GridKind::HalfLineCutoff: return "half-line";
    case GridKind::Interval: return "interval";
  }
  return "interval";
}

Grid::Grid(GridKind kind, double x_min, double x_max, int n)
    : kind_(kind), x_min_(x_min), x_max_(x_max), n_(n) {
  require(std::isfinite(x_min) && std::isfinite(x_max), "non-finite bounds");
  require(n >= 3, "need at least 3 nodes, got " + std::to_string(n));
  require(x_min < x_max, "x_min must be below x_max");
  if (kind == GridKind::FullLineBox) {
    require(n % 2 == 1, "symmetric grid needs an odd node count, got " + std::to_string(n));
  }
  h_ = (x_max - x_min) / (n - 1);
  require(h_ > 0.0, "spacing underflow");
}

Grid Grid::full_line(double half_width, int n) {
  require(half_width > 0.0, "half width must be positive");
  return Grid(GridKind::FullLineBox, -half_width, half_width, n);
}

Grid Grid::half_line(double cutoff, double x_max, int n) {
  require(cutoff > 0.0, "half-line cutoff must be positive");
  return Grid(GridKind::HalfLineCutoff, cutoff, x_max, n);
}

Grid Grid::interval(double x_min, double x_max, int n) {
  return Grid(GridKind::Interval, x_min, x_max, n);
}

double Grid::x(int j) const {
  if (kind_ == GridKind::FullLineBox) {
    // Integer offsets from the centre keep x_{n-1-j} == -x_j bit for bit.
    const int centre = (n_ - 1) / 2;
    return static_cast<double>(j - centre) * h_;
  }
  if (j == n_ - 1) return x_max_;
  return x_min_ + static_cast<double>(j) * h_;
}

std::optional<double> Grid::cutoff() const {
  if (kind_ == GridKind::HalfLineCutoff) return x_min_;
  return std::nullopt;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) xs[static_cast<std::size_t>(j)] = x(j);
  return xs;
}

Grid Grid::refined() const { return Grid(kind_, x_min_, x_max_, 2 * n_ - 1); }

Grid Grid::coarsened() const {
  require(n_ % 2 == 1, "coarsening needs an odd node count");
  require(n_ >= 5, "grid too small to coarsen");
  return Grid(kind_, x_min_, x_max_, (n_ + 1) / 2);
}

Grid Grid::enlarged(double factor) const {
  require(factor >= 1.0, "enlargement factor must be >= 1");
  switch (kind_) {
    case GridKind::FullLineBox: {
      const int half_cells = (n_ - 1) / 2;
      const int grown = static_cast<int>(std::lround(half_cells * factor));
      return Grid(kind_, -grown * h_, grown * h_, 2 * grown + 1);
    }
    case GridKind::HalfLineCutoff:
    case GridKind::Interval: {
      const int cells = static_cast<int>(std::lround((n_ - 1) * factor));
      return Grid(kind_, x_min_, x_min_ + cells * h_, cells + 1);
    }
  }
  return *this;
}

Grid build_grid(const DomainSpec& domain) {
  if (domain.cutoff) {
    require(!domain.symmetric, "a half-line grid cannot be symmetric");
    require(domain.x_min == *domain.cutoff, "half-line grid must start at the cutoff");
    return Grid::half_line(*domain.cutoff, domain.x_max, domain.n);
  }
  if (domain.symmetric) {
    if (domain.x_min != -domain.x_max) {
      std::ostringstream os;
      os << "symmetric grid needs x_min == -x_max, got [" << domain.x_min << ", " << domain.x_max
         << "]";
      throw DomainError("grid: " + os.str());
    }
    return Grid::full_line(domain.x_max, domain.n);
  }
  if (domain.x_min == -domain.x_max && domain.n % 2 == 1 && domain.n >= 3) {
    return Grid::full_line(domain.x_max, domain.n);
  }
  return Grid::interval(domain.x_min, domain.x_max, domain.n);
}

}  // namespace ptspec
