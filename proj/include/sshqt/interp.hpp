#ifndef SSHQT_INTERP_HPP
#define SSHQT_INTERP_HPP

#include <cstddef>
#include <vector>

namespace sshqt {

/// Monotone cubic (PCHIP, Fritsch-Carlson) interpolation on a sorted grid.
/// Stateless: slopes are reconstructed locally from up to four neighbouring
/// points, so evaluation needs no precomputed coefficient table.
double pchip_eval(const std::vector<double>& x, const double* y, std::ptrdiff_t stride,
                  double t);

inline double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                         double t) {
  return pchip_eval(x, y.data(), 1, t);
}

/// Index of the interval [x[i], x[i+1]] containing t (clamped to the ends).
std::size_t interval_index(const std::vector<double>& x, double t);

}  // namespace sshqt

#endif
