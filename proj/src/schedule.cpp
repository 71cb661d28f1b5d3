#include "sshqt/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sshqt/interp.hpp"

namespace sshqt {

namespace {

double poly_p(double x) { return 2.0 * x * x * x - 3.0 * x * x + 1.0; }
double poly_dp(double x) { return 6.0 * x * x - 6.0 * x; }

// Interface ramp f(x) = delta + (1-2 delta)(3x^2 - 2x^3).
double ramp_f(double x, double d) { return d + (1.0 - 2.0 * d) * (3.0 * x * x - 2.0 * x * x * x); }
double ramp_df(double x, double d) { return (1.0 - 2.0 * d) * (6.0 * x - 6.0 * x * x); }

constexpr double kPi = 3.14159265358979323846;

}  // namespace

Schedule Schedule::polynomial_single(double T, double t0) {
  if (T <= 0.0 || t0 <= 0.0)
    throw std::invalid_argument("polynomial_single: T and t0 must be positive");
  Schedule s;
  s.kind_ = Kind::PolynomialSingle;
  s.T_ = T;
  s.t0_ = t0;
  s.params_ = {{"T", T}, {"t0", t0}};
  return s;
}

Schedule Schedule::sinusoidal_single(double T, double t0) {
  if (T <= 0.0 || t0 <= 0.0)
    throw std::invalid_argument("sinusoidal_single: T and t0 must be positive");
  Schedule s;
  s.kind_ = Kind::SinusoidalSingle;
  s.T_ = T;
  s.t0_ = t0;
  s.params_ = {{"T", T}, {"t0", t0}};
  return s;
}

Schedule Schedule::interface_plateau(double T, double t0, double delta) {
  if (T <= 0.0 || t0 <= 0.0)
    throw std::invalid_argument("interface_plateau: T and t0 must be positive");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("interface_plateau: delta must lie in (0, 1/2)");
  Schedule s;
  s.kind_ = Kind::InterfacePlateau;
  s.T_ = T;
  s.t0_ = t0;
  s.interface_ = true;
  s.params_ = {{"T", T}, {"t0", t0}, {"delta", delta}};
  return s;
}

Schedule Schedule::adiabatic_pump(double omega, double t0) {
  if (omega <= 0.0 || t0 <= 0.0)
    throw std::invalid_argument("adiabatic_pump: Omega and t0 must be positive");
  Schedule s;
  s.kind_ = Kind::AdiabaticPump;
  s.T_ = kPi / omega;
  s.t0_ = t0;
  s.params_ = {{"Omega", omega}, {"t0", t0}};
  return s;
}

Schedule Schedule::stirap_gaussians(double T, double t0, double omega_m, double w_frac,
                                    double delta_frac) {
  if (T <= 0.0 || t0 <= 0.0)
    throw std::invalid_argument("stirap_gaussians: T and t0 must be positive");
  if (omega_m <= 0.0 || w_frac <= 0.0)
    throw std::invalid_argument("stirap_gaussians: Omega_m and w_frac must be positive");
  Schedule s;
  s.kind_ = Kind::StirapGaussians;
  s.T_ = T;
  s.t0_ = t0;
  s.interface_ = true;
  s.params_ = {{"T", T}, {"t0", t0}, {"Omega_m", omega_m},
               {"w_frac", w_frac}, {"delta_frac", delta_frac}};
  return s;
}

Schedule Schedule::custom(std::vector<double> t, std::vector<HoppingValues> values,
                          std::vector<HoppingValues> derivatives, bool interface) {
  if (t.size() < 2 || t.size() != values.size() || t.size() != derivatives.size())
    throw std::invalid_argument("custom schedule: need matching tables with >= 2 rows");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw std::invalid_argument("custom schedule: grid must be strictly increasing");
  Schedule s;
  s.kind_ = Kind::Custom;
  s.T_ = t.back();
  s.t0_ = 1.0;
  s.interface_ = interface;
  s.grid_ = std::move(t);
  s.vals_ = std::move(values);
  s.derivs_ = std::move(derivatives);
  s.params_ = {{"T", s.T_}};
  return s;
}

Schedule Schedule::constant(const HoppingValues& h, double T, bool interface) {
  std::vector<double> t = {0.0, T};
  std::vector<HoppingValues> v = {h, h};
  std::vector<HoppingValues> d = {{0, 0, 0}, {0, 0, 0}};
  return custom(std::move(t), std::move(v), std::move(d), interface);
}

HoppingValues Schedule::value_raw(double t) const {
  switch (kind_) {
    case Kind::PolynomialSingle: {
      double p = poly_p(t / T_);
      return HoppingValues::single(t0_ * p, t0_ * (1.0 - p));
    }
    case Kind::SinusoidalSingle: {
      double w = kPi / (2.0 * T_);
      return HoppingValues::single(t0_ * std::cos(w * t), t0_ * std::sin(w * t));
    }
    case Kind::InterfacePlateau: {
      double d = params_.at("delta");
      auto t2l = [&](double s) {
        return s < T_ / 2.0 ? t0_ * ramp_f(2.0 * s / T_, d) : t0_ * ramp_f(1.0, d);
      };
      return HoppingValues::interface(t0_, t2l(t), t2l(T_ - t));
    }
    case Kind::AdiabaticPump: {
      double om = params_.at("Omega");
      return HoppingValues::single(t0_ * (1.0 + std::cos(om * t)),
                                   t0_ * (1.0 - std::cos(om * t)));
    }
    case Kind::StirapGaussians: {
      double om = params_.at("Omega_m");
      double w = params_.at("w_frac") * T_;
      double d = params_.at("delta_frac") * w / t0_;
      double s = t - T_ / 2.0;
      double l = t0_ * om * std::exp(-(s - d / 2.0) * (s - d / 2.0) / (w * w));
      double r = t0_ * om * std::exp(-(s + d / 2.0) * (s + d / 2.0) / (w * w));
      return HoppingValues::interface(t0_, l, r);
    }
    case Kind::Custom: {
      HoppingValues h;
      h.t1 = pchip_eval(grid_, &vals_[0].t1, 3, t);
      h.t2l = pchip_eval(grid_, &vals_[0].t2l, 3, t);
      h.t2r = pchip_eval(grid_, &vals_[0].t2r, 3, t);
      return h;
    }
  }
  throw std::logic_error("unreachable");
}

HoppingValues Schedule::derivative_raw(double t) const {
  switch (kind_) {
    case Kind::PolynomialSingle: {
      double dp = poly_dp(t / T_) / T_;
      return HoppingValues::single(t0_ * dp, -t0_ * dp);
    }
    case Kind::SinusoidalSingle: {
      double w = kPi / (2.0 * T_);
      return HoppingValues::single(-t0_ * w * std::sin(w * t),
                                   t0_ * w * std::cos(w * t));
    }
    case Kind::InterfacePlateau: {
      double d = params_.at("delta");
      auto dt2l = [&](double s) {
        return s < T_ / 2.0 ? t0_ * ramp_df(2.0 * s / T_, d) * 2.0 / T_ : 0.0;
      };
      return HoppingValues::interface(0.0, dt2l(t), -dt2l(T_ - t));
    }
    case Kind::AdiabaticPump: {
      double om = params_.at("Omega");
      double s = t0_ * om * std::sin(om * t);
      return HoppingValues::single(-s, s);
    }
    case Kind::StirapGaussians: {
      double om = params_.at("Omega_m");
      double w = params_.at("w_frac") * T_;
      double d = params_.at("delta_frac") * w / t0_;
      double s = t - T_ / 2.0;
      double l = t0_ * om * std::exp(-(s - d / 2.0) * (s - d / 2.0) / (w * w));
      double r = t0_ * om * std::exp(-(s + d / 2.0) * (s + d / 2.0) / (w * w));
      return HoppingValues::interface(0.0, l * (-2.0 * (s - d / 2.0) / (w * w)),
                                      r * (-2.0 * (s + d / 2.0) / (w * w)));
    }
    case Kind::Custom: {
      HoppingValues h;
      h.t1 = pchip_eval(grid_, &derivs_[0].t1, 3, t);
      h.t2l = pchip_eval(grid_, &derivs_[0].t2l, 3, t);
      h.t2r = pchip_eval(grid_, &derivs_[0].t2r, 3, t);
      return h;
    }
  }
  throw std::logic_error("unreachable");
}

HoppingValues Schedule::value(double t) const {
  return value_raw(reversed_ ? T_ - t : t);
}

HoppingValues Schedule::derivative(double t) const {
  HoppingValues d = derivative_raw(reversed_ ? T_ - t : t);
  if (reversed_) {
    d.t1 = -d.t1;
    d.t2l = -d.t2l;
    d.t2r = -d.t2r;
  }
  return d;
}

Schedule Schedule::time_reversed() const {
  Schedule s = *this;
  s.reversed_ = !s.reversed_;
  return s;
}

std::string Schedule::kind_name() const {
  switch (kind_) {
    case Kind::PolynomialSingle: return "polynomial_single";
    case Kind::SinusoidalSingle: return "sinusoidal_single";
    case Kind::InterfacePlateau: return "interface_plateau";
    case Kind::AdiabaticPump: return "adiabatic_pump";
    case Kind::StirapGaussians: return "stirap_gaussians";
    case Kind::Custom: return "custom";
  }
  return "?";
}

Schedule Schedule::from_config(const std::string& kind,
                               const std::map<std::string, double>& params) {
  static const std::vector<std::string> known = {"T", "t0", "delta", "Omega",
                                                 "Omega_m", "w_frac", "delta_frac"};
  for (const auto& [k, v] : params) {
    (void)v;
    bool ok = false;
    for (const auto& name : known) ok = ok || k == name;
    if (!ok) throw std::invalid_argument("schedule config: unknown key '" + k + "'");
  }
  auto get = [&](const std::string& k, double fallback) {
    auto it = params.find(k);
    return it == params.end() ? fallback : it->second;
  };
  auto require = [&](const std::string& k) {
    auto it = params.find(k);
    if (it == params.end())
      throw std::invalid_argument("schedule config: missing key '" + k + "'");
    return it->second;
  };
  double t0 = get("t0", 1.0);

  if (kind == "polynomial_single" || kind == "polynomial")
    return polynomial_single(require("T"), t0);
  if (kind == "sinusoidal_single" || kind == "sinusoidal")
    return sinusoidal_single(require("T"), t0);
  if (kind == "interface_plateau" || kind == "plateau")
    return interface_plateau(require("T"), t0, get("delta", 0.01));
  if (kind == "adiabatic_pump" || kind == "pump")
    return adiabatic_pump(require("Omega"), t0);
  if (kind == "stirap_gaussians" || kind == "stirap")
    return stirap_gaussians(require("T"), t0, get("Omega_m", 0.9),
                            get("w_frac", 3.0 / 16.0), get("delta_frac", 1.0 / 3.0));
  throw std::invalid_argument("schedule config: unknown kind '" + kind + "'");
}

}  // namespace sshqt
