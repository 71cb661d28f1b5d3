#ifndef SSHQT_ENSEMBLE_HPP
#define SSHQT_ENSEMBLE_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "sshqt/disorder.hpp"
#include "sshqt/dynamics.hpp"

namespace sshqt {

enum class Protocol { NnnSingle, NnnInterface, AdiabaticPump, StirapBaseline };

std::string protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

/// One Monte Carlo ensemble: protocol, chain size, schedule parameters,
/// disorder law, realization count and master seed.  dt = T / n_steps.
struct EnsembleConfig {
  Protocol protocol = Protocol::NnnSingle;
  int n_cells = 10;       // interface chains: segment cells N (N_A = 2N)
  double T = 2.0;         // ignored by AdiabaticPump (T = pi/omega)
  double omega = 0.01;    // AdiabaticPump only
  double delta = 0.01;    // plateau schedule
  double omega_m = 0.9;   // STIRAP pulse amplitude
  int n_steps = 8000;
  DisorderKind disorder = DisorderKind::None;
  DisorderParams disorder_params;
  int n_realizations = 1;
  std::uint64_t master_seed = 1;
  int histogram_bins = 100;
  /// Simplified single-chain protocol index (0 = exact drive).
  int simplification_index = 0;

  /// Protocol defaults matching the reference runs (chain sizes, durations,
  /// step counts: 8000 for the fast NNN protocols, 40000 for the long
  /// adiabatic baselines).
  static EnsembleConfig defaults(Protocol p);
};

struct RealizationRecord {
  int index;
  std::uint64_t seed;
  double p;
};

struct EnsembleStats {
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0;    // sample std (n-1)
  double stderror = 0.0;  // stddev / sqrt(n)
  std::vector<double> bin_edges;   // histogram_bins + 1 uniform edges on [0,1]
  std::vector<long> counts;        // sum = n
  std::vector<double> p_values;    // per realization, indexed by realization
  std::vector<RealizationRecord> records;  // filled if keep_records

  double fraction_above(double threshold) const;
};

struct ExecOptions {
  int workers = 0;  // 0 = hardware concurrency
  bool keep_records = false;
};

/// Chain, schedule, drive and initial state composed from a config.
struct ProtocolSetup {
  ChainSpec spec;
  Schedule schedule;
  std::unique_ptr<DriveEvaluator> drive;  // null for the adiabatic baselines
  Eigen::VectorXcd psi0;
};

ProtocolSetup make_protocol(const EnsembleConfig& config);

/// Runs the ensemble: realization i uses seed mix_seed(master_seed, i).
/// Results are keyed by realization index, so the outcome is bit-identical
/// for any worker count.  A propagation failure aborts with the failing seed
/// in the message.
EnsembleStats run_ensemble(const EnsembleConfig& config, const ExecOptions& exec = {});

enum class SweepAxis { DisorderStrength, Gamma, SimplificationIndex, TransferTime };

std::string sweep_axis_name(SweepAxis a);
SweepAxis sweep_axis_from_name(const std::string& name);

struct SweepRow {
  double value;
  EnsembleStats stats;
};

struct SweepTable {
  SweepAxis axis;
  EnsembleConfig base;
  std::vector<SweepRow> rows;
};

SweepTable sweep(const EnsembleConfig& config, SweepAxis axis,
                 const std::vector<double>& values, const ExecOptions& exec = {});

/// Paired NNN-vs-baseline statistics under identical disorder realizations
/// (same per-index seeds; both chains have the same site count, so the drawn
/// delta_h matrices coincide realization by realization).
struct BaselineComparison {
  EnsembleStats nnn;
  EnsembleStats baseline;
  int paired_n = 0;
  double mean_difference = 0.0;  // nnn - baseline over the paired prefix
  double diff_stddev = 0.0;
};

/// chain: SingleDimerized pairs NnnSingle with AdiabaticPump; Interface pairs
/// NnnInterface with StirapBaseline.  n_baseline may be reduced (the long-T
/// baselines are expensive); pairing uses the common prefix.
BaselineComparison baseline_compare(ChainKind chain, DisorderKind disorder,
                                    const DisorderParams& params, int n_nnn,
                                    int n_baseline, std::uint64_t master_seed,
                                    const ExecOptions& exec = {});

/// "<protocol>_<disorder>_<axis>.csv"
std::string sweep_filename(Protocol p, DisorderKind d, SweepAxis a);

/// CSV table "value, mean, std, stderr, n" with a provenance header line.
void write_sweep_csv(std::ostream& os, const SweepTable& table,
                     const std::string& provenance);

/// Full stats as JSON (config echo, aggregates, histogram, optional records).
std::string stats_to_json(const EnsembleConfig& config, const EnsembleStats& stats);

}  // namespace sshqt

#endif
