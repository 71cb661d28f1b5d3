#include "sshqt/modes.hpp"

#include <cmath>
#include <stdexcept>

#include "sshqt/lattice.hpp"

namespace sshqt {

namespace detail {

namespace {

// Unnormalized amplitudes are homogeneous in the hoppings, so scaling every
// hopping (and hopping derivative) by 1/s leaves the normalized mode and its
// derivative unchanged while keeping all powers <= 1 in magnitude.
AMode normalize(Eigen::VectorXd u, Eigen::VectorXd du) {
  double nrm = u.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw std::domain_error("zero mode: degenerate hopping values");
  Eigen::VectorXd a = u / nrm;
  Eigen::VectorXd da = (du - a * a.dot(du)) / nrm;
  return {std::move(a), std::move(da)};
}

AMode a_mode_single(int N, const HoppingValues& h, const HoppingValues& dh) {
  double s = std::max(std::abs(h.t1), std::abs(h.t2()));
  if (s == 0.0) throw std::domain_error("zero_mode_single: t1 = t2 = 0");
  const double t1 = h.t1 / s, t2 = h.t2() / s;
  const double d1 = dh.t1 / s, d2 = dh.t2() / s;

  Eigen::VectorXd u(N), du(N);
  for (int n = 1; n <= N; ++n) {
    // u_n = (-t2)^(n-1) t1^(N-n); one factor differentiated per term.
    double p2 = std::pow(-t2, n - 1);
    double p1 = std::pow(t1, N - n);
    u(n - 1) = p2 * p1;
    double term = 0.0;
    if (n - 1 > 0) term += (n - 1) * std::pow(-t2, n - 2) * (-d2) * p1;
    if (N - n > 0) term += (N - n) * p2 * std::pow(t1, N - n - 1) * d1;
    du(n - 1) = term;
  }
  return normalize(std::move(u), std::move(du));
}

AMode a_mode_interface(int N, const HoppingValues& h, const HoppingValues& dh) {
  if (h.t2l == 0.0 || h.t2r == 0.0)
    throw std::domain_error("zero_mode_interface: requires t2l != 0 and t2r != 0");
  double s = std::max({std::abs(h.t1), std::abs(h.t2l), std::abs(h.t2r)});
  const double t1 = h.t1 / s, t2l = h.t2l / s, t2r = h.t2r / s;
  const double d1 = dh.t1 / s, d2l = dh.t2l / s, d2r = dh.t2r / s;

  Eigen::VectorXd u(2 * N), du(2 * N);
  auto fill = [&](int k, double sign, int e_l, int e_r, int e_1) {
    double pl = std::pow(-t2l, e_l), pr = std::pow(-t2r, e_r), p1 = std::pow(t1, e_1);
    u(k - 1) = sign * pl * pr * p1;
    double term = 0.0;
    if (e_l > 0) term += e_l * std::pow(-t2l, e_l - 1) * (-d2l) * pr * p1;
    if (e_r > 0) term += e_r * pl * std::pow(-t2r, e_r - 1) * (-d2r) * p1;
    if (e_1 > 0) term += e_1 * pl * pr * std::pow(t1, e_1 - 1) * d1;
    du(k - 1) = sign * term;
  };
  // Left block a_k ~ eps_l^(k-1) eps_r^N, right block a_{N+k} ~ -eps_l^N eps_r^(N-k),
  // cleared of denominators by t1^(2N-1).
  for (int k = 1; k <= N; ++k) fill(k, +1.0, k - 1, N, N - k);
  for (int k = N + 1; k <= 2 * N; ++k) fill(k, -1.0, N, 2 * N - k, k - N - 1);
  return normalize(std::move(u), std::move(du));
}

}  // namespace

AMode a_mode(const ChainSpec& spec, const HoppingValues& h, const HoppingValues& dh) {
  return spec.is_interface() ? a_mode_interface(spec.n_cells, h, dh)
                             : a_mode_single(spec.n_cells, h, dh);
}

}  // namespace detail

namespace {

EdgeMode embed(const ChainSpec& spec, detail::AMode core, double time,
               bool zero_derivative) {
  const int S = spec.total_sites();
  EdgeMode m;
  m.amplitudes = Eigen::VectorXd::Zero(S);
  m.d_amplitudes = Eigen::VectorXd::Zero(S);
  for (int k = 1; k <= spec.a_sites(); ++k) {
    m.amplitudes(ChainSpec::a_index(k)) = core.a(k - 1);
    if (!zero_derivative) m.d_amplitudes(ChainSpec::a_index(k)) = core.da(k - 1);
  }
  m.time = time;
  return m;
}

}  // namespace

EdgeMode zero_mode_single(const ChainSpec& spec, const HoppingValues& h,
                          const HoppingValues& dh, double time) {
  if (spec.kind != ChainKind::SingleDimerized)
    throw std::invalid_argument("zero_mode_single: spec is not a single chain");
  // When the schedule is momentarily frozen the derivative is exactly zero;
  // short-circuiting removes the 0/0 paths at the protocol endpoints.
  bool frozen = derivative_is_zero(dh);
  return embed(spec, detail::a_mode(spec, h, dh), time, frozen);
}

EdgeMode zero_mode_interface(const ChainSpec& spec, const HoppingValues& h,
                             const HoppingValues& dh, double time) {
  if (spec.kind != ChainKind::Interface)
    throw std::invalid_argument("zero_mode_interface: spec is not an interface chain");
  bool frozen = derivative_is_zero(dh);
  return embed(spec, detail::a_mode(spec, h, dh), time, frozen);
}

EdgeMode zero_mode(const ChainSpec& spec, const HoppingValues& h,
                   const HoppingValues& dh, double time) {
  return spec.is_interface() ? zero_mode_interface(spec, h, dh, time)
                             : zero_mode_single(spec, h, dh, time);
}

double zero_mode_eigencheck(const ChainSpec& spec, const HoppingValues& h) {
  EdgeMode m = zero_mode(spec, h, HoppingValues{0, 0, 0});
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(spec.nnn_bonds());
  HamiltonianMatrix H = build_hamiltonian(spec, h, rho);
  return (H.matrix * m.amplitudes.cast<std::complex<double>>()).norm();
}

StirapModes stirap_basis(const ChainSpec& spec, const HoppingValues& h) {
  if (spec.kind != ChainKind::Interface)
    throw std::invalid_argument("stirap_basis: interface chain required");
  if (h.t1 == 0.0) throw std::domain_error("stirap_basis: t1 = 0");
  const double X = -h.t2l / h.t1;
  const double Y = -h.t2r / h.t1;
  if (std::abs(X) >= 1.0 || std::abs(Y) >= 1.0)
    throw std::domain_error("stirap_basis: |X|, |Y| < 1 required (modes not localized)");

  const int N = spec.n_cells;
  const int S = spec.total_sites();
  Eigen::VectorXd L = Eigen::VectorXd::Zero(S);
  Eigen::VectorXd R = Eigen::VectorXd::Zero(S);
  Eigen::VectorXd C = Eigen::VectorXd::Zero(S);
  for (int k = 1; k <= 2 * N; ++k) {
    L(ChainSpec::a_index(k)) = std::pow(X, k - 1);
    R(ChainSpec::a_index(k)) = std::pow(Y, 2 * N - k);
  }
  // The junction site B_N is the one left uncoupled in the decoupled limit;
  // the interface mode lives on the B sublattice with geometric tails.
  for (int n = 1; n <= 2 * N - 1; ++n)
    C(ChainSpec::b_index(n)) = n <= N ? std::pow(X, N - n) : std::pow(Y, n - N);
  L.normalize();
  R.normalize();
  C.normalize();

  // Loewdin orthonormalization of (L, C, R); only <L|R> is nonzero (C lives
  // on the other sublattice), so the symmetric structure of h3 is exact.
  Eigen::Matrix3d overlap = Eigen::Matrix3d::Identity();
  overlap(0, 2) = overlap(2, 0) = L.dot(R);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(overlap);
  Eigen::Matrix3d inv_sqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();

  Eigen::MatrixXd P(S, 3);
  P.col(0) = L;
  P.col(1) = C;
  P.col(2) = R;
  P = P * inv_sqrt;

  Eigen::VectorXd rho = Eigen::VectorXd::Zero(spec.nnn_bonds());
  Eigen::MatrixXd H = build_interface(spec, h, rho).matrix.real();

  StirapModes out;
  out.L = P.col(0);
  out.C = P.col(1);
  out.R = P.col(2);
  out.h3 = P.transpose() * H * P;
  out.omega_l = out.h3(0, 1);
  out.omega_r = out.h3(1, 2);
  return out;
}

}  // namespace sshqt
