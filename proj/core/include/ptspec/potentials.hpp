#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptspec/grid.hpp"
#include "ptspec/types.hpp"

namespace ptspec {

/// Closed-form potential families. Units hbar = 1, 2m = 1, so the operator is
/// -d^2/dx^2 + V(x).
enum class Family {
  InversePower1,    ///< -lambda^2 / x^4
  InversePower2,    ///< 2/x^2 - lambda^2/x^4 + imag_sign * 4 i lambda / x^3
  ShiftedQuartic1,  ///< 2/(x+i)^2 - (x+i)^4
  ShiftedQuartic2,  ///< -4i(x-i) - (x-i)^4
  PoeschlTeller1,   ///< mu^2/4 - mu^2 [lt(lt-1)+1] sech^2 - 2 i lambda mu sech tanh
  PoeschlTeller2,   ///< mu^2/4 - mu^2 lt(lt-1) sech^2
  CubicOsc,         ///< mu x^2 + i g x^3
  QuarticOsc,       ///< a x^4 + i beta x^3 + c x^2 + i delta x
  Custom,
};

using ParamMap = std::map<std::string, double, std::less<>>;

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
/// Every family except Custom, in declaration order.
std::span<const Family> builtin_families();
/// Parameter names a family accepts. Poeschl-Teller families also accept
/// "lambdatilde" as an alternative to "lambda".
std::vector<std::string> family_parameters(Family family);
/// True for the families singular at x = 0 (half-line by default).
bool is_singular_family(Family family);

/// An immutable, cheaply copyable potential. Built-in families are evaluated
/// from their closed forms with real arithmetic arranged so that
/// V(-x) == conj(V(x)) holds bit for bit.
class Potential {
 public:
  /// Builds a built-in family, applying defaults for omitted parameters.
  /// Throws ConfigError for unknown names or values violating the family's
  /// invariants (lambda > 0, mu > 0, g >= 0, a > 0).
  static Potential make(Family family, const ParamMap& overrides = {});

  /// Arbitrary callable. `singular_points` are rejected by eval().
  static Potential custom(std::string label, std::function<cplx(double)> fn,
                          std::vector<double> singular_points = {});

  cplx operator()(double x) const { return eval(x); }
  /// Throws DomainError at singular points and for non-finite results.
  cplx eval(double x) const;

  Family family() const noexcept { return family_; }
  const std::string& label() const noexcept { return label_; }
  /// Stored parameters (Poeschl-Teller keeps lambda and mu only).
  const ParamMap& params() const noexcept { return params_; }
  double param(std::string_view name) const;
  bool is_singular_at(double x) const;
  const std::vector<double>& singular_points() const noexcept { return singular_points_; }

  /// Poeschl-Teller depth parameter, the larger root of
  /// lt (lt - 1) = lambda^2/mu^2 - 1/4, i.e. lt = 1/2 + lambda/mu.
  double lambda_tilde() const;

  /// x -> Re V(x), same domain.
  Potential real_part() const;

 private:
  Potential() = default;

  Family family_ = Family::Custom;
  std::string label_;
  ParamMap params_;
  std::shared_ptr<const std::function<cplx(double)>> custom_;
  std::vector<double> singular_points_;
};

inline cplx eval_potential(const Potential& spec, double x) { return spec.eval(x); }

// ---------------------------------------------------------------------------
// Superpotentials and partner pairs

enum class SuperpotentialKind {
  Linear,             ///< W = omega x
  InversePowerPlus,   ///< W = 1/x + i lambda / x^2
  InversePowerMinus,  ///< W = 1/x - i lambda / x^2
  ShiftedCubic1,      ///< w1 = 1/(x+i) - i (x+i)^2
  ShiftedCubic2,      ///< w2 = -[1/(x-i) - i (x-i)^2]
  Scarf,              ///< W = (mu/2) tanh(mu x) - i lambda sech(mu x)
  Sampled,            ///< cubic-spline interpolant of user samples
  Callable,           ///< user-supplied value and derivative
};

std::string_view superpotential_name(SuperpotentialKind kind);
std::optional<SuperpotentialKind> parse_superpotential(std::string_view name);
/// Closed-form kinds only, in declaration order.
std::span<const SuperpotentialKind> builtin_superpotentials();
std::vector<std::string> superpotential_parameters(SuperpotentialKind kind);

/// Complex superpotential W(x) = a(x) + i b(x) together with W'(x).
class Superpotential {
 public:
  static Superpotential make(SuperpotentialKind kind, const ParamMap& overrides = {});
  /// Both callables are required; a missing derivative is a ConfigError.
  static Superpotential from_functions(std::string label, std::function<cplx(double)> value,
                                       std::function<cplx(double)> derivative,
                                       std::vector<double> singular_points = {});
  /// Natural cubic spline through (x_k, w_k); x strictly increasing, at least
  /// four finite samples. Evaluation is restricted to [x_0, x_last].
  static Superpotential from_samples(std::span<const double> x, std::span<const cplx> w);

  cplx value(double x) const;
  cplx derivative(double x) const;
  double a(double x) const { return value(x).real(); }
  double b(double x) const { return value(x).imag(); }

  SuperpotentialKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  const ParamMap& params() const noexcept { return params_; }
  const std::vector<double>& singular_points() const noexcept { return singular_points_; }

 private:
  Superpotential() = default;
  void check_domain(double x) const;

  SuperpotentialKind kind_ = SuperpotentialKind::Callable;
  std::string label_;
  ParamMap params_;
  std::shared_ptr<const std::function<cplx(double)>> value_;
  std::shared_ptr<const std::function<cplx(double)>> derivative_;
  std::vector<double> singular_points_;
  std::optional<std::pair<double, double>> support_;
};

/// Partner pair (V-, V+) with V- = W^2 - W' and V+ = W^2 + W'.
std::pair<Potential, Potential> susy_partner_pair(const Superpotential& w);

// ---------------------------------------------------------------------------
// PT / parity diagnostics

enum class SignPattern {
  NonNegativeOnPositiveHalfLine,
  NonPositiveOnPositiveHalfLine,
  Mixed,
  Zero,
};

std::string_view sign_pattern_name(SignPattern pattern);

/// Residuals are empty (not applicable) unless the grid is symmetric.
/// Singular nodes are skipped.
struct SymmetryReport {
  std::optional<double> pt_residual;       ///< max |V(x) - conj V(-x)|
  std::optional<double> re_even_residual;  ///< max |Re V(x) - Re V(-x)|
  std::optional<double> im_odd_residual;   ///< max |Im V(x) + Im V(-x)|
  SignPattern im_sign_pattern = SignPattern::Zero;
  double max_abs_potential = 0.0;
};

/// Sign pattern of Im V over the x > 0 nodes of `grid`. Values below
/// 1e-14 max|V| count as zero.
SignPattern imaginary_sign_pattern(const Potential& spec, const Grid& grid);

SymmetryReport symmetry_report(const Potential& spec, const Grid& grid);

}  // namespace ptspec
