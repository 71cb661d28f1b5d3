#ifndef SSHQT_MODES_HPP
#define SSHQT_MODES_HPP

#include <Eigen/Dense>

#include "sshqt/chain.hpp"
#include "sshqt/schedule.hpp"

namespace sshqt {

/// Instantaneous zero-energy mode and its exact time derivative.
/// amplitudes covers all sites (B entries identically zero) and is unit-norm;
/// d_amplitudes is orthogonal to amplitudes (norm preservation).
struct EdgeMode {
  Eigen::VectorXd amplitudes;
  Eigen::VectorXd d_amplitudes;
  double time = 0.0;
};

/// a_n ~ (-t2)^(n-1) t1^(N-n), normalized.  The hopping-product form (rather
/// than powers of eps = -t2/t1) keeps the construction finite at schedule
/// endpoints where t1 or t2 vanishes.  Derivatives propagate analytically
/// through the normalization.  Requires not both t1 = t2 = 0.
EdgeMode zero_mode_single(const ChainSpec& spec, const HoppingValues& h,
                          const HoppingValues& dh, double time = 0.0);

/// Interface-chain zero mode: left block a_k ~ eps_l^(k-1) eps_r^N,
/// right block a_{N+k} ~ -eps_l^N eps_r^(N-k), built from hopping products.
/// Requires t2l != 0 and t2r != 0.
EdgeMode zero_mode_interface(const ChainSpec& spec, const HoppingValues& h,
                             const HoppingValues& dh, double time = 0.0);

EdgeMode zero_mode(const ChainSpec& spec, const HoppingValues& h,
                   const HoppingValues& dh, double time = 0.0);

/// ||H0 * amplitudes|| with rho = 0 and no disorder; < 1e-12 t0 for exact
/// zero modes of both chain kinds.
double zero_mode_eigencheck(const ChainSpec& spec, const HoppingValues& h);

/// Local topological basis of the interface chain (Appendix-A structure):
/// |L>, |R> are geometric A-sublattice edge modes (ratios X = -t2l/t1,
/// Y = -t2r/t1), |C> is the B-sublattice mode centred on the junction site
/// B_N.  h3 is the Hamiltonian projected onto the Loewdin-orthonormalized
/// span {L, C, R}; its only nonzero entries are the effective couplings
/// omega_l = <L|H|C>, omega_r = <C|H|R>.
struct StirapModes {
  Eigen::VectorXd L, R, C;
  Eigen::Matrix3d h3;
  double omega_l = 0.0;
  double omega_r = 0.0;
};

StirapModes stirap_basis(const ChainSpec& spec, const HoppingValues& h);

namespace detail {

/// A-sublattice amplitudes only (no interleaved B zeros); shared with the
/// drive engineering which never touches the B sites.
struct AMode {
  Eigen::VectorXd a;
  Eigen::VectorXd da;
};

AMode a_mode(const ChainSpec& spec, const HoppingValues& h, const HoppingValues& dh);

}  // namespace detail

}  // namespace sshqt

#endif
