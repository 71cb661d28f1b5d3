#include "sshqt/dynamics.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>

#include "sshqt/csvio.hpp"
#include "sshqt/lattice.hpp"

namespace sshqt {

namespace {

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);

// NN bond value in physical bond order (0-based bond index across storage).
double nn_bond_value(const ChainSpec& spec, const HoppingValues& h, int bond) {
  if (!spec.is_interface()) return bond % 2 == 0 ? h.t2() : h.t1;
  const int N = spec.n_cells;
  if (bond % 2 == 0) {           // A_n - B_n with n = bond/2 + 1
    int n = bond / 2 + 1;
    return n <= N ? h.t2l : h.t1;
  }
  int n = (bond - 1) / 2 + 1;    // B_n - A_{n+1}
  return n <= N - 1 ? h.t1 : h.t2r;
}

// Smallest Taylor degree with a certified remainder below 1e-16.
int taylor_degree(double theta) {
  if (theta <= 0.0) return 1;
  double term = theta;
  int p = 1;
  while (p < 64) {
    double tail = term * theta / (p + 1);
    if (theta / (p + 2) < 0.9) tail /= (1.0 - theta / (p + 2));
    if (tail < 1e-16) return p;
    ++p;
    term *= theta / p;
  }
  return 64;
}

struct Workspace {
  Eigen::VectorXcd v, w, acc;
};

// w = H v for the banded Hamiltonian: diag (real), nn (real, first
// off-diagonal), i*rho on the second off-diagonal between A sites.
void apply_banded(const Eigen::VectorXd* diag, const Eigen::VectorXd& nn,
                  const double* rho, int n_bonds, double bias, const Eigen::VectorXcd& v,
                  Eigen::VectorXcd& w) {
  const int S = static_cast<int>(v.size());
  w.setZero();
  if (diag)
    for (int i = 0; i < S; ++i) w(i) += (*diag)(i)*v(i);
  for (int i = 0; i < S - 1; ++i) {
    double c = nn(i);
    w(i + 1) += c * v(i);
    w(i) += c * v(i + 1);
  }
  for (int b = 0; b < n_bonds; ++b) {
    int i = 2 * b;  // storage index of A_{b+1}
    cd c = kI * (bias * rho[b]);
    w(i + 2) += c * v(i);
    w(i) += std::conj(c) * v(i + 2);
  }
}

}  // namespace

PropagationPlan build_plan(const ChainSpec& spec, const Schedule& schedule,
                           const DriveEvaluator* drive, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("build_plan: n_steps must be positive");
  if (drive && drive->n_bonds() != spec.nnn_bonds())
    throw std::invalid_argument("build_plan: drive bond count mismatch");
  PropagationPlan plan;
  plan.spec = spec;
  plan.T = schedule.duration();
  plan.n_steps = n_steps;
  plan.dt = plan.T / n_steps;
  const int S = spec.total_sites();
  const int M = spec.nnn_bonds();
  plan.nn.resize(S - 1, n_steps);
  plan.rho = Eigen::MatrixXd::Zero(M, n_steps);
  for (int k = 0; k < n_steps; ++k) {
    double tm = (k + 0.5) * plan.dt;
    HoppingValues h = schedule.value(tm);
    for (int b = 0; b < S - 1; ++b) plan.nn(b, k) = nn_bond_value(spec, h, b);
    if (drive) drive->eval(tm, plan.rho.col(k).data());
  }
  return plan;
}

StaticBands disorder_bands(const DisorderRealization& d) {
  StaticBands bands;
  if (d.delta_h.size() == 0) return bands;
  const int S = static_cast<int>(d.delta_h.rows());
  for (int i = 0; i < S; ++i)
    for (int j = i + 2; j < S; ++j)
      if (d.delta_h(i, j) != 0.0)
        throw std::invalid_argument("disorder_bands: realization is not NN-banded");
  bands.diag = d.delta_h.diagonal();
  bands.nn = d.delta_h.diagonal(-1);
  if (bands.diag.cwiseAbs().maxCoeff() == 0.0) bands.diag.resize(0);
  if (S > 1 && bands.nn.cwiseAbs().maxCoeff() == 0.0) bands.nn.resize(0);
  return bands;
}

PropagationResult run_plan(const PropagationPlan& plan, const StaticBands& bands,
                           double drive_bias_factor, const Eigen::VectorXcd& psi0,
                           const PropagationOptions& opts) {
  const int S = plan.spec.total_sites();
  const int M = plan.spec.nnn_bonds();
  if (psi0.size() != S) throw std::invalid_argument("run_plan: psi0 dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("run_plan: psi0 must be normalized");

  const bool has_diag = bands.diag.size() > 0;
  const bool has_nn_dis = bands.nn.size() > 0;
  const double max_diag = has_diag ? bands.diag.cwiseAbs().maxCoeff() : 0.0;

  Eigen::VectorXcd psi = psi0;
  Eigen::VectorXd nn(S - 1);
  Workspace ws;
  ws.v.resize(S);
  ws.w.resize(S);
  ws.acc.resize(S);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  Eigen::MatrixXcd Hd;
  if (opts.backend == PropagatorBackend::EigenSolve) Hd.resize(S, S);

  PropagationResult res;
  res.max_norm_drift = 0.0;
  auto sample = [&](double t) {
    res.trajectory.push_back({t, std::norm(psi(0)), std::norm(psi(S - 1)), psi.norm()});
  };
  if (opts.trajectory_stride > 0) sample(0.0);
  if (opts.observer && opts.observer_stride > 0) opts.observer(0.0, psi);

  for (int k = 0; k < plan.n_steps; ++k) {
    nn = plan.nn.col(k);
    if (has_nn_dis) nn += bands.nn;
    const double* rho = plan.rho.col(k).data();

    if (opts.backend == PropagatorBackend::Taylor) {
      double max_rho = 0.0;
      for (int b = 0; b < M; ++b) max_rho = std::max(max_rho, std::abs(rho[b]));
      double theta = plan.dt * (max_diag + 2.0 * nn.cwiseAbs().maxCoeff() +
                                2.0 * std::abs(drive_bias_factor) * max_rho);
      int p = taylor_degree(theta);
      ws.v = psi;
      ws.acc = psi;
      for (int j = 1; j <= p; ++j) {
        apply_banded(has_diag ? &bands.diag : nullptr, nn, rho, M, drive_bias_factor,
                     ws.v, ws.w);
        ws.v = (cd(0.0, -1.0) * (plan.dt / j)) * ws.w;
        ws.acc += ws.v;
      }
      psi = ws.acc;
    } else {
      Hd.setZero();
      for (int i = 0; i < S; ++i)
        if (has_diag) Hd(i, i) = bands.diag(i);
      for (int i = 0; i < S - 1; ++i) {
        Hd(i + 1, i) = nn(i);
        Hd(i, i + 1) = nn(i);
      }
      for (int b = 0; b < M; ++b) {
        cd c = kI * (drive_bias_factor * rho[b]);
        Hd(2 * b + 2, 2 * b) = c;
        Hd(2 * b, 2 * b + 2) = std::conj(c);
      }
      es.compute(Hd);
      Eigen::VectorXcd phases =
          (-kI * plan.dt * es.eigenvalues().array()).exp().matrix();
      psi = es.eigenvectors() *
            (phases.array() * (es.eigenvectors().adjoint() * psi).array()).matrix();
    }

    double drift = std::abs(psi.norm() - 1.0);
    res.max_norm_drift = std::max(res.max_norm_drift, drift);

    double t = (k + 1) * plan.dt;
    if (opts.trajectory_stride > 0 &&
        ((k + 1) % opts.trajectory_stride == 0 || k + 1 == plan.n_steps))
      sample(t);
    if (opts.observer && opts.observer_stride > 0 &&
        ((k + 1) % opts.observer_stride == 0 || k + 1 == plan.n_steps))
      opts.observer(t, psi);
  }

  if (!psi.allFinite()) throw std::runtime_error("propagate: non-finite state");
  if (res.max_norm_drift > 1e-6)
    throw std::runtime_error("propagate: norm drift exceeds 1e-6 (integrator failure)");

  res.transfer_probability = std::norm(psi(S - 1));
  res.final_state = std::move(psi);
  return res;
}

PropagationResult propagate(const ChainSpec& spec, const Schedule& schedule,
                            const DriveEvaluator* drive,
                            const DisorderRealization* disorder,
                            const Eigen::VectorXcd& psi0,
                            const PropagationOptions& opts) {
  PropagationPlan plan = build_plan(spec, schedule, drive, opts.n_steps);
  StaticBands bands;
  double bias_factor = 1.0;
  if (disorder) {
    bands = disorder_bands(*disorder);
    if (disorder->kind == DisorderKind::DriveBias) bias_factor = 1.0 + disorder->bias;
  }
  return run_plan(plan, bands, bias_factor, psi0, opts);
}

PropagationResult propagate(const ChainSpec& spec, const Schedule& schedule,
                            const DriveProfile& drive,
                            const DisorderRealization* disorder,
                            const Eigen::VectorXcd& psi0,
                            const PropagationOptions& opts) {
  ProfileDrive pd(drive);
  return propagate(spec, schedule, &pd, disorder, psi0, opts);
}

Eigen::VectorXcd left_edge_state(const ChainSpec& spec) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(spec.total_sites());
  psi(0) = 1.0;
  return psi;
}

ConvergenceStudy convergence_study(const ChainSpec& spec, const Schedule& schedule,
                                   const DriveEvaluator* drive,
                                   const DisorderRealization* disorder,
                                   const Eigen::VectorXcd& psi0,
                                   const std::vector<int>& step_counts) {
  if (step_counts.size() < 2)
    throw std::invalid_argument("convergence_study: need at least two dt values");
  for (std::size_t i = 1; i < step_counts.size(); ++i)
    if (step_counts[i] <= step_counts[i - 1])
      throw std::invalid_argument("convergence_study: dt values must decrease");

  ConvergenceStudy study;
  for (int n : step_counts) {
    PropagationOptions opts;
    opts.n_steps = n;
    PropagationResult r = propagate(spec, schedule, drive, disorder, psi0, opts);
    study.rows.push_back({schedule.duration() / n, r.transfer_probability});
  }
  for (std::size_t i = 2; i < study.rows.size(); ++i) {
    double d1 = std::abs(study.rows[i - 1].transfer_probability -
                         study.rows[i - 2].transfer_probability);
    double d2 = std::abs(study.rows[i].transfer_probability -
                         study.rows[i - 1].transfer_probability);
    if (d2 > d1 * 1.05 + 1e-14)
      throw std::runtime_error("convergence_study: transfer probability not converging");
    if (d2 > 1e-15 && d1 > 1e-15) study.observed_order = std::log2(d1 / d2);
  }
  return study;
}

PropagationResult interface_transfer_reference() {
  ChainSpec spec = ChainSpec::interface(5);
  Schedule sched = Schedule::interface_plateau(40.0, 1.0, 0.01);
  ExactDrive drive(spec, sched);
  PropagationOptions opts;
  opts.n_steps = 40000;
  return propagate(spec, sched, &drive, nullptr, left_edge_state(spec), opts);
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& traj) {
  os << "t,p_A1,p_Alast,norm\n";
  for (const auto& s : traj)
    os << format_value(s.t) << "," << format_value(s.p_first) << ","
       << format_value(s.p_last) << "," << format_value(s.norm) << "\n";
}

}  // namespace sshqt
