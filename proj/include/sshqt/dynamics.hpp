#ifndef SSHQT_DYNAMICS_HPP
#define SSHQT_DYNAMICS_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sshqt/chain.hpp"
#include "sshqt/disorder.hpp"
#include "sshqt/drive.hpp"
#include "sshqt/schedule.hpp"

namespace sshqt {

/// Unitary stepping backends.  Both apply the midpoint-exponential rule
/// psi(t+dt) = exp(-i H(t+dt/2) dt) psi(t).  Taylor expands the exponential
/// on the banded Hamiltonian to machine precision (degree chosen from a
/// rigorous remainder bound, ||H||dt << 1 on all runs); EigenSolve applies it
/// exactly through a Hermitian eigendecomposition of the dense matrix.  The
/// two agree to ~1e-13 and Taylor is an order of magnitude faster, so it is
/// the default; EigenSolve remains as the cross-validation path.
enum class PropagatorBackend { Taylor, EigenSolve };

struct PropagationOptions {
  int n_steps = 8000;
  PropagatorBackend backend = PropagatorBackend::Taylor;
  /// Record a trajectory sample every `stride` steps (0 = no trajectory).
  int trajectory_stride = 0;
  /// Optional per-sample observer (called with the full state).
  std::function<void(double t, const Eigen::VectorXcd&)> observer;
  int observer_stride = 0;
};

struct TrajectorySample {
  double t;
  double p_first;  // |<A_1|psi>|^2
  double p_last;   // |<A_last|psi>|^2
  double norm;
};

struct PropagationResult {
  Eigen::VectorXcd final_state;
  double transfer_probability = 0.0;  // |<A_last|psi(T)>|^2
  double max_norm_drift = 0.0;
  std::vector<TrajectorySample> trajectory;
};

/// Precomputed midpoint tables for one (spec, schedule, drive) protocol.
/// Building the plan once and sharing it across an ensemble keeps the
/// per-realization cost to the banded matrix applications.
struct PropagationPlan {
  ChainSpec spec;
  double T = 0.0;
  double dt = 0.0;
  int n_steps = 0;
  /// NN bond values at step midpoints, physical bond order; (S-1) x n_steps.
  Eigen::MatrixXd nn;
  /// NNN couplings at step midpoints; n_bonds x n_steps (zero rows if none).
  Eigen::MatrixXd rho;
};

PropagationPlan build_plan(const ChainSpec& spec, const Schedule& schedule,
                           const DriveEvaluator* drive, int n_steps);

/// Static per-realization additions to the banded Hamiltonian.
struct StaticBands {
  Eigen::VectorXd diag;  // empty or size S
  Eigen::VectorXd nn;    // empty or size S-1
};

StaticBands disorder_bands(const DisorderRealization& d);

PropagationResult run_plan(const PropagationPlan& plan, const StaticBands& bands,
                           double drive_bias_factor, const Eigen::VectorXcd& psi0,
                           const PropagationOptions& opts);

/// Full propagation: schedule + optional engineered drive + optional static
/// disorder.  psi0 must be normalized; norm drift beyond 1e-6 aborts.
/// A DriveBias realization multiplies the drive by (1 + bias).
PropagationResult propagate(const ChainSpec& spec, const Schedule& schedule,
                            const DriveEvaluator* drive,
                            const DisorderRealization* disorder,
                            const Eigen::VectorXcd& psi0,
                            const PropagationOptions& opts);

/// Profile-backed overload (samples interpolated between grid nodes).
PropagationResult propagate(const ChainSpec& spec, const Schedule& schedule,
                            const DriveProfile& drive,
                            const DisorderRealization* disorder,
                            const Eigen::VectorXcd& psi0,
                            const PropagationOptions& opts);

/// State |A_1> in the full site basis.
Eigen::VectorXcd left_edge_state(const ChainSpec& spec);

struct ConvergenceRow {
  double dt;
  double transfer_probability;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  /// Richardson order estimate from the last three rows.
  double observed_order = 0.0;
};

/// Runs the same propagation at each dt (decreasing); throws if successive
/// transfer probabilities fail to converge.
ConvergenceStudy convergence_study(const ChainSpec& spec, const Schedule& schedule,
                                   const DriveEvaluator* drive,
                                   const DisorderRealization* disorder,
                                   const Eigen::VectorXcd& psi0,
                                   const std::vector<int>& step_counts);

/// Canned interface reference run: N = 5 (19 sites), plateau schedule with
/// delta = 0.01, T = 40/t0, exact drive, dt = T/40000.
PropagationResult interface_transfer_reference();

/// Trajectory CSV "t, p_A1, p_Alast, norm".
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& traj);

}  // namespace sshqt

#endif
