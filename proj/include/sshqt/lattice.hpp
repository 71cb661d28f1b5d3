#ifndef SSHQT_LATTICE_HPP
#define SSHQT_LATTICE_HPP

#include <Eigen/Dense>

#include "sshqt/chain.hpp"
#include "sshqt/schedule.hpp"

namespace sshqt {

struct DisorderRealization;

/// Dense Hermitian Hamiltonian of the chain at one instant.
/// Without disorder the diagonal is zero, NN entries are real and NNN
/// entries purely imaginary (A sublattice only).
struct HamiltonianMatrix {
  Eigen::MatrixXcd matrix;
  double time = 0.0;
};

/// Single dimerized chain, Eq.-(1)-type NN terms plus i*rho NNN terms:
/// <B_n|H|A_n> = t2, <A_{n+1}|H|B_n> = t1, <A_{n+1}|H|A_n> = i rho_n.
HamiltonianMatrix build_single(const ChainSpec& spec, const HoppingValues& h,
                               const Eigen::VectorXd& rho, double time = 0.0);

/// Two-segment chain with a topological interface at B_N:
/// left intracell bonds carry t2l (n = 1..N), right intercell bonds t2r
/// (n = N..2N-1), the remaining bonds t1; NNN terms i rho_n run over all
/// consecutive A pairs.
HamiltonianMatrix build_interface(const ChainSpec& spec, const HoppingValues& h,
                                  const Eigen::VectorXd& rho, double time = 0.0);

/// H + static delta_h (dimension-checked).
HamiltonianMatrix apply_disorder(const HamiltonianMatrix& H,
                                 const DisorderRealization& d);

/// Convenience dispatch on spec.kind.
HamiltonianMatrix build_hamiltonian(const ChainSpec& spec, const HoppingValues& h,
                                    const Eigen::VectorXd& rho, double time = 0.0);

}  // namespace sshqt

#endif
