#ifndef SSHQT_SCHEDULE_HPP
#define SSHQT_SCHEDULE_HPP

#include <map>
#include <string>
#include <vector>

namespace sshqt {

/// NN hopping amplitudes at one instant, in units of t0.
/// Single chains use t2(); interface chains distinguish t2l / t2r.
struct HoppingValues {
  double t1 = 0.0;
  double t2l = 0.0;
  double t2r = 0.0;

  double t2() const { return t2l; }

  static HoppingValues single(double t1, double t2) { return {t1, t2, t2}; }
  static HoppingValues interface(double t1, double t2l, double t2r) {
    return {t1, t2l, t2r};
  }
};

/// Time-dependent NN hopping profile on [0, T], with exact analytic first
/// derivatives.  The derivative contract matters: the drive module builds
/// d/dt of the edge mode from it, and numerical differentiation would inject
/// noise into the engineered couplings near the endpoints.
class Schedule {
 public:
  enum class Kind {
    PolynomialSingle,
    SinusoidalSingle,
    InterfacePlateau,
    AdiabaticPump,
    StirapGaussians,
    Custom
  };

  /// t1 = t0 P(t/T), t2 = t0 (1-P(t/T)), P(x) = 2x^3 - 3x^2 + 1.
  static Schedule polynomial_single(double T, double t0);
  /// t1 = t0 cos(pi t / 2T), t2 = t0 sin(pi t / 2T).
  static Schedule sinusoidal_single(double T, double t0);
  /// t1 = t0; t2l = t0 f(2t/T) for t < T/2 then held at t0 f(1);
  /// t2r(t) = t2l(T-t); f(x) = delta + (1-2 delta)(3x^2 - 2x^3).
  static Schedule interface_plateau(double T, double t0, double delta = 0.01);
  /// t1 = t0 (1 + cos Omega t), t2 = t0 (1 - cos Omega t), T = pi / Omega.
  static Schedule adiabatic_pump(double omega, double t0);
  /// t1 = t0; Gaussian pulses t2l/t2r with width w = w_frac*T and pulse delay
  /// d = delta_frac*w/t0, mapped from the centred interval [-T/2, T/2] onto
  /// the public domain [0, T].  t2r peaks before t2l (counter-intuitive order).
  static Schedule stirap_gaussians(double T, double t0, double omega_m = 0.9,
                                   double w_frac = 3.0 / 16.0,
                                   double delta_frac = 1.0 / 3.0);
  /// Tabulated schedule with monotone-cubic interpolation of values and
  /// derivatives.  Best effort; not covered by the acceptance runs.
  static Schedule custom(std::vector<double> t, std::vector<HoppingValues> values,
                         std::vector<HoppingValues> derivatives, bool interface);
  /// Hoppings frozen at a constant value over [0, T] (derivatives all zero).
  static Schedule constant(const HoppingValues& h, double T, bool interface);

  /// Builds a schedule from a kind string and a parameter map.
  /// Recognised keys: T, t0, delta, Omega, Omega_m, w_frac, delta_frac.
  static Schedule from_config(const std::string& kind,
                              const std::map<std::string, double>& params);

  Kind kind() const { return kind_; }
  double duration() const { return T_; }
  double t0() const { return t0_; }
  bool interface() const { return interface_; }
  const std::map<std::string, double>& params() const { return params_; }
  std::string kind_name() const;

  HoppingValues value(double t) const;
  HoppingValues derivative(double t) const;

  /// Same protocol run backwards: value(t) -> value(T-t), derivative negated.
  Schedule time_reversed() const;

 private:
  Schedule() = default;
  HoppingValues value_raw(double t) const;
  HoppingValues derivative_raw(double t) const;

  Kind kind_ = Kind::Custom;
  double T_ = 0.0;
  double t0_ = 1.0;
  bool interface_ = false;
  bool reversed_ = false;
  std::map<std::string, double> params_;

  // Custom tables.
  std::vector<double> grid_;
  std::vector<HoppingValues> vals_;
  std::vector<HoppingValues> derivs_;
};

/// True when all derivative components vanish exactly.
inline bool derivative_is_zero(const HoppingValues& dh) {
  return dh.t1 == 0.0 && dh.t2l == 0.0 && dh.t2r == 0.0;
}

}  // namespace sshqt

#endif
