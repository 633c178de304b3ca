#include "ptspec/potentials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace ptspec {

namespace {

constexpr std::array<Family, 8> kBuiltin = {
    Family::InversePower1,   Family::InversePower2,  Family::ShiftedQuartic1,
    Family::ShiftedQuartic2, Family::PoeschlTeller1, Family::PoeschlTeller2,
    Family::CubicOsc,        Family::QuarticOsc,
};

ParamMap family_defaults(Family family) {
  switch (family) {
    case Family::InversePower1: return {{"lambda", 1.0}};
    case Family::InversePower2: return {{"lambda", 1.0}, {"imag_sign", -1.0}};
    case Family::ShiftedQuartic1:
    case Family::ShiftedQuartic2: return {};
    case Family::PoeschlTeller1:
    case Family::PoeschlTeller2: return {{"lambda", 2.5}, {"mu", 1.0}};
    case Family::CubicOsc: return {{"mu", 1.0}, {"g", 1.0}};
    case Family::QuarticOsc: return {{"a", 1.0}, {"beta", 1.0}, {"c", 1.0}, {"delta", 1.0}};
    case Family::Custom: return {};
  }
  return {};
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out.empty() ? "(none)" : out;
}

[[noreturn]] void config_fail(Family family, const std::string& what) {
  throw ConfigError(std::string(family_name(family)) + ": " + what);
}

struct Odd {
  double ax;
  double s;
};

// Evaluating at |x| and restoring the sign keeps odd parts exactly odd.
Odd split(double x) { return {std::fabs(x), x < 0.0 ? -1.0 : 1.0}; }

cplx eval_builtin(Family family, const ParamMap& p, double x) {
  switch (family) {
    case Family::InversePower1: {
      const double l = p.at("lambda");
      const double x2 = x * x;
      return {-l * l / (x2 * x2), 0.0};
    }
    case Family::InversePower2: {
      const double l = p.at("lambda");
      const double sign = p.at("imag_sign");
      const auto [ax, s] = split(x);
      const double x2 = ax * ax;
      return {2.0 / x2 - l * l / (x2 * x2), s * sign * 4.0 * l / (x2 * ax)};
    }
    case Family::ShiftedQuartic1: {
      const auto [ax, s] = split(x);
      const double x2 = ax * ax;
      const double r = x2 + 1.0;
      const double r2 = r * r;
      const double re = 2.0 * (x2 - 1.0) / r2 - (x2 * x2 - 6.0 * x2 + 1.0);
      const double im = -4.0 * ax / r2 - (4.0 * x2 * ax - 4.0 * ax);
      return {re, s * im};
    }
    case Family::ShiftedQuartic2: {
      const auto [ax, s] = split(x);
      const double x2 = ax * ax;
      return {-x2 * x2 + 6.0 * x2 - 5.0, s * (4.0 * x2 * ax - 8.0 * ax)};
    }
    case Family::PoeschlTeller1:
    case Family::PoeschlTeller2: {
      const double l = p.at("lambda");
      const double mu = p.at("mu");
      const double lt = 0.5 + l / mu;
      const auto [ax, s] = split(x);
      const double sech = 1.0 / std::cosh(mu * ax);
      const double sech2 = sech * sech;
      if (family == Family::PoeschlTeller2) {
        return {0.25 * mu * mu - mu * mu * lt * (lt - 1.0) * sech2, 0.0};
      }
      const double tanh = std::tanh(mu * ax);
      return {0.25 * mu * mu - mu * mu * (lt * (lt - 1.0) + 1.0) * sech2,
              s * (-2.0 * l * mu * sech * tanh)};
    }
    case Family::CubicOsc: {
      const auto [ax, s] = split(x);
      const double x2 = ax * ax;
      return {p.at("mu") * x2, s * p.at("g") * x2 * ax};
    }
    case Family::QuarticOsc: {
      const auto [ax, s] = split(x);
      const double x2 = ax * ax;
      return {p.at("a") * x2 * x2 + p.at("c") * x2,
              s * (p.at("beta") * x2 * ax + p.at("delta") * ax)};
    }
    case Family::Custom: break;
  }
  return {};
}

std::string describe(Family family, const ParamMap& p) {
  std::ostringstream os;
  os << family_name(family);
  for (const auto& [k, v] : p) os << ' ' << k << '=' << v;
  return os.str();
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::InversePower1: return "inverse-power-1";
    case Family::InversePower2: return "inverse-power-2";
    case Family::ShiftedQuartic1: return "shifted-quartic-1";
    case Family::ShiftedQuartic2: return "shifted-quartic-2";
    case Family::PoeschlTeller1: return "poeschl-teller-1";
    case Family::PoeschlTeller2: return "poeschl-teller-2";
    case Family::CubicOsc: return "cubic";
    case Family::QuarticOsc: return "quartic";
    case Family::Custom: return "custom";
  }
  return "custom";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kBuiltin) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::span<const Family> builtin_families() { return kBuiltin; }

std::vector<std::string> family_parameters(Family family) {
  std::vector<std::string> names;
  for (const auto& [k, v] : family_defaults(family)) names.push_back(k);
  if (family == Family::PoeschlTeller1 || family == Family::PoeschlTeller2) {
    names.emplace_back("lambdatilde");
  }
  return names;
}

bool is_singular_family(Family family) {
  return family == Family::InversePower1 || family == Family::InversePower2;
}

Potential Potential::make(Family family, const ParamMap& overrides) {
  if (family == Family::Custom) throw ConfigError("custom potentials are built with Potential::custom");
  ParamMap params = family_defaults(family);
  const auto allowed = family_parameters(family);
  std::optional<double> lambda_tilde;
  for (const auto& [k, v] : overrides) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      config_fail(family, "unknown parameter '" + k + "' (valid: " + join(allowed) + ")");
    }
    if (!std::isfinite(v)) config_fail(family, "parameter '" + k + "' must be finite");
    if (k == "lambdatilde") {
      lambda_tilde = v;
    } else {
      params[k] = v;
    }
  }

  auto positive = [&](const char* key) {
    if (auto it = params.find(key); it != params.end() && !(it->second > 0.0)) {
      config_fail(family, std::string(key) + " must be > 0");
    }
  };
  auto non_negative = [&](const char* key) {
    if (auto it = params.find(key); it != params.end() && !(it->second >= 0.0)) {
      config_fail(family, std::string(key) + " must be >= 0");
    }
  };

  switch (family) {
    case Family::InversePower1: positive("lambda"); break;
    case Family::InversePower2: {
      positive("lambda");
      const double s = params.at("imag_sign");
      if (s != 1.0 && s != -1.0) config_fail(family, "imag_sign must be +1 or -1");
      break;
    }
    case Family::PoeschlTeller1:
    case Family::PoeschlTeller2: {
      positive("mu");
      if (lambda_tilde) {
        const double mu = params.at("mu");
        const double from_lt = mu * (*lambda_tilde - 0.5);
        if (overrides.count("lambda") != 0) {
          const double given = params.at("lambda");
          if (std::fabs(given - from_lt) > 1e-14 * std::max(1.0, std::fabs(given))) {
            config_fail(family, "lambda and lambdatilde are inconsistent");
          }
        }
        params["lambda"] = from_lt;
      }
      positive("lambda");
      break;
    }
    case Family::CubicOsc:
      non_negative("mu");
      non_negative("g");
      break;
    case Family::QuarticOsc: positive("a"); break;
    case Family::ShiftedQuartic1:
    case Family::ShiftedQuartic2:
    case Family::Custom: break;
  }

  Potential pot;
  pot.family_ = family;
  pot.params_ = std::move(params);
  pot.label_ = describe(family, pot.params_);
  if (is_singular_family(family)) pot.singular_points_ = {0.0};
  return pot;
}

Potential Potential::custom(std::string label, std::function<cplx(double)> fn,
                            std::vector<double> singular_points) {
  if (!fn) throw ConfigError("custom potential '" + label + "' has no callable");
  Potential pot;
  pot.family_ = Family::Custom;
  pot.label_ = std::move(label);
  pot.custom_ = std::make_shared<const std::function<cplx(double)>>(std::move(fn));
  pot.singular_points_ = std::move(singular_points);
  return pot;
}

bool Potential::is_singular_at(double x) const {
  return std::find(singular_points_.begin(), singular_points_.end(), x) != singular_points_.end();
}

cplx Potential::eval(double x) const {
  if (!std::isfinite(x)) throw DomainError(label_ + ": non-finite abscissa");
  if (is_singular_at(x)) {
    std::ostringstream os;
    os << label_ << ": singular at x = " << x;
    throw DomainError(os.str());
  }
  const cplx v = family_ == Family::Custom ? (*custom_)(x) : eval_builtin(family_, params_, x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os << label_ << ": non-finite value at x = " << x;
    throw DomainError(os.str());
  }
  return v;
}

double Potential::param(std::string_view name) const {
  if (name == "lambdatilde" &&
      (family_ == Family::PoeschlTeller1 || family_ == Family::PoeschlTeller2)) {
    return lambda_tilde();
  }
  auto it = params_.find(name);
  if (it == params_.end()) {
    throw ConfigError(label_ + ": no parameter '" + std::string(name) + "'");
  }
  return it->second;
}

double Potential::lambda_tilde() const {
  if (family_ != Family::PoeschlTeller1 && family_ != Family::PoeschlTeller2) {
    throw ConfigError(label_ + ": lambdatilde is defined for Poeschl-Teller families only");
  }
  return 0.5 + params_.at("lambda") / params_.at("mu");
}

Potential Potential::real_part() const {
  Potential self = *this;
  return custom(
      "Re[" + label_ + "]", [self](double x) { return cplx(self.eval(x).real(), 0.0); },
      singular_points_);
}

std::string_view sign_pattern_name(SignPattern pattern) {
  switch (pattern) {
    case SignPattern::NonNegativeOnPositiveHalfLine: return "non-negative-on-positive-half-line";
    case SignPattern::NonPositiveOnPositiveHalfLine: return "non-positive-on-positive-half-line";
    case SignPattern::Mixed: return "mixed";
    case SignPattern::Zero: return "zero";
  }
  return "zero";
}

namespace {

struct Samples {
  std::vector<double> x;
  std::vector<cplx> v;
  double max_abs = 0.0;
};

Samples sample_regular(const Potential& spec, const Grid& grid) {
  Samples s;
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    if (spec.is_singular_at(x)) continue;
    const cplx v = spec.eval(x);
    s.x.push_back(x);
    s.v.push_back(v);
    s.max_abs = std::max(s.max_abs, std::abs(v));
  }
  return s;
}

SignPattern pattern_of(const Samples& s) {
  const double tol = 1e-14 * s.max_abs;
  bool pos = false;
  bool neg = false;
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    if (s.x[k] <= 0.0) continue;
    const double im = s.v[k].imag();
    if (im > tol) pos = true;
    if (im < -tol) neg = true;
  }
  if (pos && neg) return SignPattern::Mixed;
  if (pos) return SignPattern::NonNegativeOnPositiveHalfLine;
  if (neg) return SignPattern::NonPositiveOnPositiveHalfLine;
  return SignPattern::Zero;
}

}  // namespace

SignPattern imaginary_sign_pattern(const Potential& spec, const Grid& grid) {
  return pattern_of(sample_regular(spec, grid));
}

SymmetryReport symmetry_report(const Potential& spec, const Grid& grid) {
  const Samples s = sample_regular(spec, grid);
  SymmetryReport rep;
  rep.max_abs_potential = s.max_abs;
  rep.im_sign_pattern = pattern_of(s);
  if (!grid.is_symmetric()) return rep;

  double pt = 0.0;
  double even = 0.0;
  double odd = 0.0;
  const int n = grid.size();
  for (int j = 0; j < n; ++j) {
    const double x = grid.x(j);
    const double xm = grid.x(n - 1 - j);
    if (spec.is_singular_at(x) || spec.is_singular_at(xm)) continue;
    const cplx v = spec.eval(x);
    const cplx w = spec.eval(xm);
    pt = std::max(pt, std::abs(v - std::conj(w)));
    even = std::max(even, std::fabs(v.real() - w.real()));
    odd = std::max(odd, std::fabs(v.imag() + w.imag()));
  }
  rep.pt_residual = pt;
  rep.re_even_residual = even;
  rep.im_odd_residual = odd;
  return rep;
}

}  // namespace ptspec
