#include "sshqt/lattice.hpp"

#include <complex>
#include <stdexcept>

#include "sshqt/disorder.hpp"

namespace sshqt {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

HamiltonianMatrix build_single(const ChainSpec& spec, const HoppingValues& h,
                               const Eigen::VectorXd& rho, double time) {
  if (spec.kind != ChainKind::SingleDimerized)
    throw std::invalid_argument("build_single: spec is not a single chain");
  const int N = spec.n_cells;
  if (rho.size() != N - 1)
    throw std::invalid_argument("build_single: rho must have N-1 entries");
  const int S = spec.total_sites();
  HamiltonianMatrix H{Eigen::MatrixXcd::Zero(S, S), time};
  for (int n = 1; n <= N - 1; ++n) {
    int a = ChainSpec::a_index(n), b = ChainSpec::b_index(n), a1 = ChainSpec::a_index(n + 1);
    H.matrix(b, a) += h.t2();
    H.matrix(a, b) += h.t2();
    H.matrix(a1, b) += h.t1;
    H.matrix(b, a1) += h.t1;
    H.matrix(a1, a) += kI * rho(n - 1);
    H.matrix(a, a1) += -kI * rho(n - 1);
  }
  return H;
}

HamiltonianMatrix build_interface(const ChainSpec& spec, const HoppingValues& h,
                                  const Eigen::VectorXd& rho, double time) {
  if (spec.kind != ChainKind::Interface)
    throw std::invalid_argument("build_interface: spec is not an interface chain");
  const int N = spec.n_cells;
  if (rho.size() != 2 * N - 1)
    throw std::invalid_argument("build_interface: rho must have 2N-1 entries");
  const int S = spec.total_sites();
  HamiltonianMatrix H{Eigen::MatrixXcd::Zero(S, S), time};
  // A_n - B_n bonds: t2l up to the interface, t1 beyond.
  for (int n = 1; n <= 2 * N - 1; ++n) {
    int a = ChainSpec::a_index(n), b = ChainSpec::b_index(n);
    double v = n <= N ? h.t2l : h.t1;
    H.matrix(b, a) += v;
    H.matrix(a, b) += v;
  }
  // B_n - A_{n+1} bonds: t1 on the left segment, t2r from the interface on.
  for (int n = 1; n <= 2 * N - 1; ++n) {
    int b = ChainSpec::b_index(n), a1 = ChainSpec::a_index(n + 1);
    double v = n <= N - 1 ? h.t1 : h.t2r;
    H.matrix(a1, b) += v;
    H.matrix(b, a1) += v;
  }
  for (int n = 1; n <= 2 * N - 1; ++n) {
    int a = ChainSpec::a_index(n), a1 = ChainSpec::a_index(n + 1);
    H.matrix(a1, a) += kI * rho(n - 1);
    H.matrix(a, a1) += -kI * rho(n - 1);
  }
  return H;
}

HamiltonianMatrix build_hamiltonian(const ChainSpec& spec, const HoppingValues& h,
                                    const Eigen::VectorXd& rho, double time) {
  return spec.is_interface() ? build_interface(spec, h, rho, time)
                             : build_single(spec, h, rho, time);
}

HamiltonianMatrix apply_disorder(const HamiltonianMatrix& H,
                                 const DisorderRealization& d) {
  if (d.delta_h.size() == 0) return H;
  if (d.delta_h.rows() != H.matrix.rows() || d.delta_h.cols() != H.matrix.cols())
    throw std::invalid_argument("apply_disorder: dimension mismatch");
  HamiltonianMatrix out = H;
  out.matrix += d.delta_h.cast<std::complex<double>>();
  return out;
}

}  // namespace sshqt
