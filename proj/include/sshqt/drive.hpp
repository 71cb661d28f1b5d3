#ifndef SSHQT_DRIVE_HPP
#define SSHQT_DRIVE_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <vector>

#include "sshqt/chain.hpp"
#include "sshqt/modes.hpp"
#include "sshqt/schedule.hpp"

namespace sshqt {

/// Sampled NNN coupling profiles rho_n(t) on a strictly increasing time grid;
/// rho(i, b) is bond b+1 at grid[i], in units of t0.  Evaluation between
/// nodes uses monotone-cubic interpolation.
struct DriveProfile {
  std::vector<double> grid;
  Eigen::MatrixXd rho;  // grid.size() x n_bonds

  int n_bonds() const { return static_cast<int>(rho.cols()); }
  void eval(double t, double* out) const;
  Eigen::VectorXd eval(double t) const;

  /// CSV with header "t, rho_1, ..., rho_M", 12 significant digits.
  void write_csv(std::ostream& os) const;
};

/// On-demand evaluator of the NNN couplings; the propagator queries it once
/// per step at the midpoint times, which lie strictly inside (0, T).
class DriveEvaluator {
 public:
  virtual ~DriveEvaluator() = default;
  virtual int n_bonds() const = 0;
  virtual void eval(double t, double* out) const = 0;
};

/// Exact inverse-engineered drive: makes the instantaneous zero mode an exact
/// Schroedinger solution.  The recurrence
///   rho_n = (rho_{n-1} a_{n-1} - da_n) / a_{n+1}
/// is evaluated through the algebraically identical probability-current form
///   rho_n = -(d/dt sum_{m<=n} a_m^2) / (2 a_n a_{n+1}),
/// accumulating whichever tail of the sum is smaller.  The chained division
/// form amplifies roundoff by 1/eps^2 per bond and loses all precision near
/// the schedule endpoints; the current form is stable there.
class ExactDrive final : public DriveEvaluator {
 public:
  ExactDrive(const ChainSpec& spec, const Schedule& schedule);
  int n_bonds() const override { return spec_.nnn_bonds(); }
  void eval(double t, double* out) const override;

 private:
  ChainSpec spec_;
  Schedule schedule_;
};

/// Simplified protocol: bonds i..N-i all carry the profile of bond floor(N/2)
/// (1-based); the remaining bonds keep their exact profiles.
class SimplifiedDrive final : public DriveEvaluator {
 public:
  SimplifiedDrive(const ChainSpec& spec, const Schedule& schedule, int i);
  int n_bonds() const override { return exact_.n_bonds(); }
  void eval(double t, double* out) const override;

 private:
  ExactDrive exact_;
  int n_a_;
  int i_;
};

/// Profile-backed evaluator (monotone-cubic interpolation of a sampled grid).
class ProfileDrive final : public DriveEvaluator {
 public:
  explicit ProfileDrive(DriveProfile profile) : profile_(std::move(profile)) {}
  int n_bonds() const override { return profile_.n_bonds(); }
  void eval(double t, double* out) const override { profile_.eval(t, out); }

 private:
  DriveProfile profile_;
};

/// Samples the exact drive on the given grid.  Nodes where the schedule
/// derivative vanishes yield exact zeros.  Removable 0/0 nodes (possible only
/// at t = 0 or t = T for schedules with non-vanishing endpoint derivatives)
/// are filled by quadratic extrapolation from the nearest interior nodes.
/// The final amplitude equation is verified at every node:
/// |da_last - rho_last a_{last-1}| < 1e-8, else a consistency error is thrown.
DriveProfile engineer_drive(const ChainSpec& spec, const Schedule& schedule,
                            const std::vector<double>& grid);

/// Closed-form solution of the single-chain recurrence
///   rho_1 = -(1/a_2) da_1/dt,
///   rho_n = rho_{n-1}/eps^2 - (n-1) deps/dt / eps^2 - (1/eps) dlnN/dt,
/// summed exactly into
///   rho_n = (deps/dt) sum_j min(n(j+1), (N-n)(N-1-j)) eps^{2j} / sum_m eps^{2m},
/// which is finite and stable for all eps (the 1/eps branch is used when
/// |eps| > 1).  Serves as the independent cross-check of engineer_drive.
DriveProfile closed_form_single(const ChainSpec& spec, const Schedule& schedule,
                                const std::vector<double>& grid);

/// Per-line agreement of the printed interface recurrences against the
/// generic engineered values, maximised over the grid.
struct InterfaceDriveDiagnostics {
  /// max |printed - generic| per bond for the lines actually used (1..N).
  Eigen::VectorXd used_line_dev;
  /// max |printed - generic| for the two flagged lines (rho_{N+1} and the
  /// tail recurrence), evaluated literally as printed.
  double flagged_line_n1_dev = 0.0;
  double flagged_line_tail_dev = 0.0;
};

/// Interface recurrences: the printed lines for rho_1..rho_N are evaluated
/// (in extended precision for the chained middle line); the two remaining
/// printed lines are dimensionally inconsistent and are replaced by the
/// generic engineered values, with their literal evaluations surfaced in the
/// diagnostics rather than silently corrected.
DriveProfile closed_form_interface(const ChainSpec& spec, const Schedule& schedule,
                                   const std::vector<double>& grid,
                                   InterfaceDriveDiagnostics* diag = nullptr);

/// Common-profile substitution on a sampled profile; i in [1, ceil(N/2)],
/// i = ceil(N/2) returns the input unchanged.
DriveProfile simplify_drive(const DriveProfile& profile, int i);

/// Every value multiplied by (1 + factor); grid unchanged.
DriveProfile bias_drive(const DriveProfile& profile, double factor);

/// Uniform grid of n_points including both endpoints.
std::vector<double> uniform_grid(double T, int n_points);

namespace detail {

/// Probability-current evaluation of the drive from A-sublattice amplitudes.
/// Returns the number of removable 0/0 bonds (flagged true in `removable`
/// when non-null); throws on a genuine singularity (vanishing denominator
/// with non-vanishing numerator).
int stable_rho(const Eigen::VectorXd& a, const Eigen::VectorXd& da, double* rho,
               unsigned char* removable);

/// |da_last - rho_last a_{last-1}| for the final (unused) amplitude equation.
double final_equation_residual(const Eigen::VectorXd& a, const Eigen::VectorXd& da,
                               const double* rho);

}  // namespace detail

}  // namespace sshqt

#endif
