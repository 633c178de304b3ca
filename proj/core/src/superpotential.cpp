#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ptspec/potentials.hpp"

namespace ptspec {

namespace {

constexpr cplx I{0.0, 1.0};

constexpr std::array<SuperpotentialKind, 6> kBuiltinW = {
    SuperpotentialKind::Linear,        SuperpotentialKind::InversePowerPlus,
    SuperpotentialKind::InversePowerMinus, SuperpotentialKind::ShiftedCubic1,
    SuperpotentialKind::ShiftedCubic2, SuperpotentialKind::Scarf,
};

ParamMap w_defaults(SuperpotentialKind kind) {
  switch (kind) {
    case SuperpotentialKind::Linear: return {{"omega", 1.0}};
    case SuperpotentialKind::InversePowerPlus:
    case SuperpotentialKind::InversePowerMinus: return {{"lambda", 1.0}};
    case SuperpotentialKind::Scarf: return {{"lambda", 2.5}, {"mu", 1.0}};
    default: return {};
  }
}

struct SplineData {
  std::vector<double> x;
  std::vector<cplx> y;
  std::vector<cplx> m;  // second derivatives

  std::size_t segment(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t k = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    return std::min(k, x.size() - 2);
  }
  cplx value(double t) const {
    const std::size_t k = segment(t);
    const double h = x[k + 1] - x[k];
    const double a = (x[k + 1] - t) / h;
    const double b = (t - x[k]) / h;
    return a * y[k] + b * y[k + 1] +
           ((a * a * a - a) * m[k] + (b * b * b - b) * m[k + 1]) * (h * h / 6.0);
  }
  cplx derivative(double t) const {
    const std::size_t k = segment(t);
    const double h = x[k + 1] - x[k];
    const double a = (x[k + 1] - t) / h;
    const double b = (t - x[k]) / h;
    return (y[k + 1] - y[k]) / h - (3.0 * a * a - 1.0) * h / 6.0 * m[k] +
           (3.0 * b * b - 1.0) * h / 6.0 * m[k + 1];
  }
};

std::shared_ptr<const SplineData> build_spline(std::span<const double> x, std::span<const cplx> y) {
  const std::size_t n = x.size();
  auto s = std::make_shared<SplineData>();
  s->x.assign(x.begin(), x.end());
  s->y.assign(y.begin(), y.end());
  s->m.assign(n, cplx{});
  // Natural end conditions: m_0 = m_{n-1} = 0; Thomas sweep on the interior.
  std::vector<double> c(n, 0.0);
  std::vector<cplx> d(n, cplx{});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x[i] - x[i - 1];
    const double hr = x[i + 1] - x[i];
    const double diag = (hl + hr) / 3.0 - hl / 6.0 * c[i - 1];
    const cplx rhs = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl - hl / 6.0 * d[i - 1];
    c[i] = hr / 6.0 / diag;
    d[i] = rhs / diag;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    s->m[i] = d[i] - c[i] * s->m[i + 1];
  }
  return s;
}

}  // namespace

std::string_view superpotential_name(SuperpotentialKind kind) {
  switch (kind) {
    case SuperpotentialKind::Linear: return "linear";
    case SuperpotentialKind::InversePowerPlus: return "inverse-power-plus";
    case SuperpotentialKind::InversePowerMinus: return "inverse-power-minus";
    case SuperpotentialKind::ShiftedCubic1: return "shifted-cubic-1";
    case SuperpotentialKind::ShiftedCubic2: return "shifted-cubic-2";
    case SuperpotentialKind::Scarf: return "scarf";
    case SuperpotentialKind::Sampled: return "sampled";
    case SuperpotentialKind::Callable: return "callable";
  }
  return "callable";
}

std::optional<SuperpotentialKind> parse_superpotential(std::string_view name) {
  for (auto k : kBuiltinW) {
    if (superpotential_name(k) == name) return k;
  }
  return std::nullopt;
}

std::span<const SuperpotentialKind> builtin_superpotentials() { return kBuiltinW; }

std::vector<std::string> superpotential_parameters(SuperpotentialKind kind) {
  std::vector<std::string> names;
  for (const auto& [k, v] : w_defaults(kind)) names.push_back(k);
  if (kind == SuperpotentialKind::Scarf) names.emplace_back("lambdatilde");
  return names;
}

Superpotential Superpotential::make(SuperpotentialKind kind, const ParamMap& overrides) {
  if (kind == SuperpotentialKind::Sampled || kind == SuperpotentialKind::Callable) {
    throw ConfigError("superpotential: use from_samples or from_functions for this kind");
  }
  const std::string name(superpotential_name(kind));
  ParamMap p = w_defaults(kind);
  const auto allowed = superpotential_parameters(kind);
  std::optional<double> lt;
  for (const auto& [k, v] : overrides) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      std::string valid;
      for (const auto& a : allowed) valid += (valid.empty() ? "" : ", ") + a;
      throw ConfigError(name + ": unknown parameter '" + k + "' (valid: " +
                        (valid.empty() ? "(none)" : valid) + ")");
    }
    if (!std::isfinite(v)) throw ConfigError(name + ": parameter '" + k + "' must be finite");
    if (k == "lambdatilde") {
      lt = v;
    } else {
      p[k] = v;
    }
  }
  if (kind == SuperpotentialKind::Scarf) {
    if (!(p.at("mu") > 0.0)) throw ConfigError(name + ": mu must be > 0");
    if (lt) p["lambda"] = p.at("mu") * (*lt - 0.5);
  }
  if (auto it = p.find("lambda"); it != p.end() && !(it->second > 0.0)) {
    throw ConfigError(name + ": lambda must be > 0");
  }

  std::function<cplx(double)> w;
  std::function<cplx(double)> dw;
  std::vector<double> singular;
  switch (kind) {
    case SuperpotentialKind::Linear: {
      const double om = p.at("omega");
      w = [om](double x) { return cplx(om * x, 0.0); };
      dw = [om](double) { return cplx(om, 0.0); };
      break;
    }
    case SuperpotentialKind::InversePowerPlus:
    case SuperpotentialKind::InversePowerMinus: {
      const double s = kind == SuperpotentialKind::InversePowerPlus ? 1.0 : -1.0;
      const double l = p.at("lambda");
      w = [s, l](double x) { return cplx(1.0 / x, s * l / (x * x)); };
      dw = [s, l](double x) { return cplx(-1.0 / (x * x), -2.0 * s * l / (x * x * x)); };
      singular = {0.0};
      break;
    }
    case SuperpotentialKind::ShiftedCubic1:
      w = [](double x) {
        const cplx z = x + I;
        return 1.0 / z - I * z * z;
      };
      dw = [](double x) {
        const cplx z = x + I;
        return -1.0 / (z * z) - 2.0 * I * z;
      };
      break;
    case SuperpotentialKind::ShiftedCubic2:
      w = [](double x) {
        const cplx z = x - I;
        return -(1.0 / z - I * z * z);
      };
      dw = [](double x) {
        const cplx z = x - I;
        return 1.0 / (z * z) + 2.0 * I * z;
      };
      break;
    case SuperpotentialKind::Scarf: {
      const double l = p.at("lambda");
      const double mu = p.at("mu");
      w = [l, mu](double x) {
        const double sech = 1.0 / std::cosh(mu * x);
        return cplx(0.5 * mu * std::tanh(mu * x), -l * sech);
      };
      dw = [l, mu](double x) {
        const double sech = 1.0 / std::cosh(mu * x);
        return cplx(0.5 * mu * mu * sech * sech, l * mu * sech * std::tanh(mu * x));
      };
      break;
    }
    default: break;
  }

  Superpotential out = from_functions(name, std::move(w), std::move(dw), std::move(singular));
  out.kind_ = kind;
  out.params_ = std::move(p);
  std::ostringstream os;
  os << name;
  for (const auto& [k, v] : out.params_) os << ' ' << k << '=' << v;
  out.label_ = os.str();
  return out;
}

Superpotential Superpotential::from_functions(std::string label, std::function<cplx(double)> value,
                                              std::function<cplx(double)> derivative,
                                              std::vector<double> singular_points) {
  if (!value) throw ConfigError("superpotential '" + label + "': missing value function");
  if (!derivative) throw ConfigError("superpotential '" + label + "': missing derivative");
  Superpotential w;
  w.kind_ = SuperpotentialKind::Callable;
  w.label_ = std::move(label);
  w.value_ = std::make_shared<const std::function<cplx(double)>>(std::move(value));
  w.derivative_ = std::make_shared<const std::function<cplx(double)>>(std::move(derivative));
  w.singular_points_ = std::move(singular_points);
  return w;
}

Superpotential Superpotential::from_samples(std::span<const double> x, std::span<const cplx> w) {
  if (x.size() != w.size()) throw ConfigError("sampled superpotential: size mismatch");
  if (x.size() < 4) throw ConfigError("sampled superpotential: need at least 4 samples");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k]) || !std::isfinite(w[k].real()) || !std::isfinite(w[k].imag())) {
      throw ConfigError("sampled superpotential: non-finite sample");
    }
    if (k > 0 && !(x[k] > x[k - 1])) {
      throw ConfigError("sampled superpotential: abscissae must be strictly increasing");
    }
  }
  auto spline = build_spline(x, w);
  Superpotential out = from_functions(
      "sampled", [spline](double t) { return spline->value(t); },
      [spline](double t) { return spline->derivative(t); });
  out.kind_ = SuperpotentialKind::Sampled;
  out.support_ = std::make_pair(x.front(), x.back());
  return out;
}

void Superpotential::check_domain(double x) const {
  if (!std::isfinite(x)) throw DomainError(label_ + ": non-finite abscissa");
  if (std::find(singular_points_.begin(), singular_points_.end(), x) != singular_points_.end()) {
    std::ostringstream os;
    os << label_ << ": singular at x = " << x;
    throw DomainError(os.str());
  }
  if (support_ && (x < support_->first || x > support_->second)) {
    std::ostringstream os;
    os << label_ << ": x = " << x << " outside sampled range [" << support_->first << ", "
       << support_->second << "]";
    throw DomainError(os.str());
  }
}

cplx Superpotential::value(double x) const {
  check_domain(x);
  return (*value_)(x);
}

cplx Superpotential::derivative(double x) const {
  check_domain(x);
  return (*derivative_)(x);
}

std::pair<Potential, Potential> susy_partner_pair(const Superpotential& w) {
  Potential minus = Potential::custom(
      w.label() + " [W^2 - W']",
      [w](double x) {
        const cplx v = w.value(x);
        return v * v - w.derivative(x);
      },
      w.singular_points());
  Potential plus = Potential::custom(
      w.label() + " [W^2 + W']",
      [w](double x) {
        const cplx v = w.value(x);
        return v * v + w.derivative(x);
      },
      w.singular_points());
  return {std::move(minus), std::move(plus)};
}

}  // namespace ptspec
