#include "sshqt/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sshqt {

std::size_t interval_index(const std::vector<double>& x, double t) {
  if (x.size() < 2) throw std::invalid_argument("interp: need at least 2 nodes");
  auto it = std::upper_bound(x.begin(), x.end(), t);
  std::ptrdiff_t i = it - x.begin() - 1;
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(x.size()) - 2);
  return static_cast<std::size_t>(i);
}

namespace {

// Fritsch-Carlson interior slope from the two surrounding secants.
double interior_slope(double h0, double h1, double d0, double d1) {
  if (d0 * d1 <= 0.0) return 0.0;
  double w0 = 2.0 * h1 + h0;
  double w1 = h1 + 2.0 * h0;
  return (w0 + w1) / (w0 / d0 + w1 / d1);
}

// One-sided endpoint slope with the usual monotonicity clamps.
double endpoint_slope(double h0, double h1, double d0, double d1) {
  double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (d * d0 <= 0.0) return 0.0;
  if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
  return d;
}

}  // namespace

double pchip_eval(const std::vector<double>& x, const double* y, std::ptrdiff_t stride,
                  double t) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("interp: need at least 2 nodes");
  auto Y = [&](std::size_t i) { return y[static_cast<std::ptrdiff_t>(i) * stride]; };
  if (n == 2) {
    double s = (Y(1) - Y(0)) / (x[1] - x[0]);
    return Y(0) + s * (t - x[0]);
  }

  std::size_t i = interval_index(x, t);
  double h = x[i + 1] - x[i];
  double del = (Y(i + 1) - Y(i)) / h;

  double d_lo, d_hi;
  if (i == 0) {
    double h1 = x[2] - x[1];
    double del1 = (Y(2) - Y(1)) / h1;
    d_lo = endpoint_slope(h, h1, del, del1);
    d_hi = interior_slope(h, h1, del, del1);
  } else if (i == n - 2) {
    double h0 = x[i] - x[i - 1];
    double del0 = (Y(i) - Y(i - 1)) / h0;
    d_lo = interior_slope(h0, h, del0, del);
    d_hi = endpoint_slope(h, h0, del, del0);
  } else {
    double h0 = x[i] - x[i - 1];
    double del0 = (Y(i) - Y(i - 1)) / h0;
    double h1 = x[i + 2] - x[i + 1];
    double del1 = (Y(i + 2) - Y(i + 1)) / h1;
    d_lo = interior_slope(h0, h, del0, del);
    d_hi = interior_slope(h, h1, del, del1);
  }

  double s = (t - x[i]) / h;
  double s2 = s * s;
  double s3 = s2 * s;
  double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  double h10 = s3 - 2.0 * s2 + s;
  double h01 = -2.0 * s3 + 3.0 * s2;
  double h11 = s3 - s2;
  return h00 * Y(i) + h10 * h * d_lo + h01 * Y(i + 1) + h11 * h * d_hi;
}

}  // namespace sshqt
