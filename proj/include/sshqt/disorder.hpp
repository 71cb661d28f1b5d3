#ifndef SSHQT_DISORDER_HPP
#define SSHQT_DISORDER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "sshqt/chain.hpp"

namespace sshqt {

enum class DisorderKind { None, Diagonal, OffDiagonalNN, CorrelatedDiagonal, DriveBias };

std::string disorder_kind_name(DisorderKind k);
DisorderKind disorder_kind_from_name(const std::string& name);

struct DisorderParams {
  double alpha = 0.0;
  double gamma = 0.0;  // CorrelatedDiagonal only
};

/// One static disorder realization.  delta_h is a real symmetric matrix
/// (empty for None/DriveBias); bias is the scalar drive-bias draw (zero
/// otherwise).  Identical (kind, params, seed) regenerate bit-identically.
struct DisorderRealization {
  DisorderKind kind = DisorderKind::None;
  Eigen::MatrixXd delta_h;
  double bias = 0.0;
  std::uint64_t seed = 0;
  DisorderParams params;
};

/// On-site energies drawn i.i.d. alpha * N(0,1) (units of t0), A and B sites
/// equally affected.  Sites are drawn in storage order.
DisorderRealization diagonal_gaussian(const ChainSpec& spec, double alpha,
                                      std::uint64_t seed);

/// Every NN bond perturbed i.i.d. alpha * N(0,1), drawn in physical bond
/// order; diagonal and NNN entries untouched.
DisorderRealization offdiagonal_gaussian(const ChainSpec& spec, double alpha,
                                         std::uint64_t seed);

/// Power-law-correlated on-site energies
///   dE_n = sum_{k=1}^{NA} (alpha / k^(gamma/2)) cos(4 pi k n / S + phi_k)
/// with n the physical site position 1..S, S the total site count,
/// NA = (S+1)/2 and phi_k i.i.d. uniform on [0, 2pi).  The printed formula is
/// used verbatim; no 1/sqrt(sum k^-gamma) rescaling is applied, so the
/// per-site variance is NA * alpha^2 / 2 at gamma = 0.
DisorderRealization correlated_diagonal(const ChainSpec& spec, double alpha,
                                        double gamma, std::uint64_t seed);

/// Common stochastic bias on the NNN drive: bias = alpha * N(0,1); the
/// effective multiplier applied to every rho_n(t) is (1 + bias).  delta_h = 0.
DisorderRealization drive_bias(double alpha, std::uint64_t seed);

DisorderRealization no_disorder(const ChainSpec& spec);

DisorderRealization make_disorder(const ChainSpec& spec, DisorderKind kind,
                                  const DisorderParams& params, std::uint64_t seed);

/// JSON round-trip of the descriptor (kind, params, seed); matrix values are
/// regenerated, never stored.
std::string disorder_to_json(const DisorderRealization& d);
DisorderRealization disorder_from_json(const ChainSpec& spec, const std::string& json);

}  // namespace sshqt

#endif
