#include "sshqt/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "sshqt/csvio.hpp"
#include "sshqt/rng.hpp"

namespace sshqt {

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::NnnSingle: return "nnn_single";
    case Protocol::NnnInterface: return "nnn_interface";
    case Protocol::AdiabaticPump: return "adiabatic_pump";
    case Protocol::StirapBaseline: return "stirap";
  }
  return "?";
}

Protocol protocol_from_name(const std::string& name) {
  if (name == "nnn_single") return Protocol::NnnSingle;
  if (name == "nnn_interface") return Protocol::NnnInterface;
  if (name == "adiabatic_pump") return Protocol::AdiabaticPump;
  if (name == "stirap") return Protocol::StirapBaseline;
  throw std::invalid_argument("unknown protocol '" + name + "'");
}

EnsembleConfig EnsembleConfig::defaults(Protocol p) {
  EnsembleConfig c;
  c.protocol = p;
  switch (p) {
    case Protocol::NnnSingle:
      c.n_cells = 10;
      c.T = 2.0;
      c.n_steps = 8000;
      break;
    case Protocol::NnnInterface:
      c.n_cells = 5;
      c.T = 2.0;
      c.delta = 0.01;
      c.n_steps = 8000;
      break;
    case Protocol::AdiabaticPump:
      c.n_cells = 10;
      c.omega = 0.01;
      c.n_steps = 40000;
      break;
    case Protocol::StirapBaseline:
      c.n_cells = 5;
      c.T = 900.0;
      c.omega_m = 0.9;
      c.n_steps = 40000;
      break;
  }
  return c;
}

ProtocolSetup make_protocol(const EnsembleConfig& config) {
  ProtocolSetup s{ChainSpec::single(2), Schedule::polynomial_single(1.0, 1.0), nullptr, {}};
  switch (config.protocol) {
    case Protocol::NnnSingle: {
      s.spec = ChainSpec::single(config.n_cells);
      s.schedule = Schedule::polynomial_single(config.T, 1.0);
      if (config.simplification_index > 0)
        s.drive = std::make_unique<SimplifiedDrive>(s.spec, s.schedule,
                                                    config.simplification_index);
      else
        s.drive = std::make_unique<ExactDrive>(s.spec, s.schedule);
      break;
    }
    case Protocol::NnnInterface: {
      s.spec = ChainSpec::interface(config.n_cells);
      s.schedule = Schedule::interface_plateau(config.T, 1.0, config.delta);
      s.drive = std::make_unique<ExactDrive>(s.spec, s.schedule);
      break;
    }
    case Protocol::AdiabaticPump: {
      s.spec = ChainSpec::single(config.n_cells);
      s.schedule = Schedule::adiabatic_pump(config.omega, 1.0);
      break;
    }
    case Protocol::StirapBaseline: {
      s.spec = ChainSpec::interface(config.n_cells);
      s.schedule = Schedule::stirap_gaussians(config.T, 1.0, config.omega_m);
      break;
    }
  }
  s.psi0 = left_edge_state(s.spec);
  return s;
}

double EnsembleStats::fraction_above(double threshold) const {
  if (p_values.empty()) return 0.0;
  long c = std::count_if(p_values.begin(), p_values.end(),
                         [&](double p) { return p > threshold; });
  return static_cast<double>(c) / static_cast<double>(p_values.size());
}

namespace {

void aggregate(EnsembleStats& stats, int bins) {
  const int n = static_cast<int>(stats.p_values.size());
  stats.n = n;
  double mean = 0.0;
  for (double p : stats.p_values) mean += p;
  mean /= n;
  double var = 0.0;
  for (double p : stats.p_values) var += (p - mean) * (p - mean);
  var = n > 1 ? var / (n - 1) : 0.0;
  stats.mean = mean;
  stats.stddev = std::sqrt(var);
  stats.stderror = stats.stddev / std::sqrt(static_cast<double>(n));

  stats.bin_edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) stats.bin_edges[i] = static_cast<double>(i) / bins;
  stats.counts.assign(bins, 0);
  for (double p : stats.p_values) {
    int b = std::clamp(static_cast<int>(p * bins), 0, bins - 1);
    ++stats.counts[b];
  }
}

}  // namespace

EnsembleStats run_ensemble(const EnsembleConfig& config, const ExecOptions& exec) {
  if (config.n_realizations < 1)
    throw std::invalid_argument("run_ensemble: n_realizations must be >= 1");
  ProtocolSetup setup = make_protocol(config);
  PropagationPlan plan =
      build_plan(setup.spec, setup.schedule, setup.drive.get(), config.n_steps);

  const int n = config.n_realizations;
  EnsembleStats stats;
  stats.p_values.assign(n, 0.0);
  if (exec.keep_records) stats.records.resize(n);

  int workers = exec.workers > 0
                    ? exec.workers
                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);

  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr error;
  std::uint64_t failing_seed = 0;

  auto work = [&]() {
    PropagationOptions opts;
    opts.n_steps = config.n_steps;
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      std::uint64_t seed = mix_seed(config.master_seed, static_cast<std::uint64_t>(i));
      try {
        DisorderRealization d =
            make_disorder(setup.spec, config.disorder, config.disorder_params, seed);
        StaticBands bands = disorder_bands(d);
        double bias = d.kind == DisorderKind::DriveBias ? 1.0 + d.bias : 1.0;
        PropagationResult r = run_plan(plan, bands, bias, setup.psi0, opts);
        stats.p_values[i] = r.transfer_probability;
        if (exec.keep_records) stats.records[i] = {i, seed, r.transfer_probability};
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!error) {
          error = std::current_exception();
          failing_seed = seed;
        }
        next.store(n);
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw std::runtime_error("run_ensemble: realization with seed " +
                               std::to_string(failing_seed) + " failed: " + e.what());
    }
  }

  aggregate(stats, config.histogram_bins);
  return stats;
}

std::string sweep_axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::DisorderStrength: return "disorder_strength";
    case SweepAxis::Gamma: return "gamma";
    case SweepAxis::SimplificationIndex: return "simplification_index";
    case SweepAxis::TransferTime: return "transfer_time";
  }
  return "?";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "disorder_strength") return SweepAxis::DisorderStrength;
  if (name == "gamma") return SweepAxis::Gamma;
  if (name == "simplification_index") return SweepAxis::SimplificationIndex;
  if (name == "transfer_time") return SweepAxis::TransferTime;
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

SweepTable sweep(const EnsembleConfig& config, SweepAxis axis,
                 const std::vector<double>& values, const ExecOptions& exec) {
  if (values.empty()) throw std::invalid_argument("sweep: no axis values");
  SweepTable table;
  table.axis = axis;
  table.base = config;
  for (double v : values) {
    EnsembleConfig c = config;
    switch (axis) {
      case SweepAxis::DisorderStrength:
        c.disorder_params.alpha = v;
        break;
      case SweepAxis::Gamma:
        if (c.disorder != DisorderKind::CorrelatedDiagonal)
          throw std::invalid_argument("sweep: gamma axis needs correlated disorder");
        c.disorder_params.gamma = v;
        break;
      case SweepAxis::SimplificationIndex:
        if (c.protocol != Protocol::NnnSingle)
          throw std::invalid_argument("sweep: simplification axis needs nnn_single");
        c.simplification_index = static_cast<int>(v);
        break;
      case SweepAxis::TransferTime:
        c.T = v;  // dt scales with T (n_steps fixed)
        break;
    }
    table.rows.push_back({v, run_ensemble(c, exec)});
  }
  return table;
}

BaselineComparison baseline_compare(ChainKind chain, DisorderKind disorder,
                                    const DisorderParams& params, int n_nnn,
                                    int n_baseline, std::uint64_t master_seed,
                                    const ExecOptions& exec) {
  EnsembleConfig nnn = EnsembleConfig::defaults(
      chain == ChainKind::SingleDimerized ? Protocol::NnnSingle : Protocol::NnnInterface);
  EnsembleConfig base = EnsembleConfig::defaults(chain == ChainKind::SingleDimerized
                                                     ? Protocol::AdiabaticPump
                                                     : Protocol::StirapBaseline);
  for (EnsembleConfig* c : {&nnn, &base}) {
    c->disorder = disorder;
    c->disorder_params = params;
    c->master_seed = master_seed;
  }
  nnn.n_realizations = n_nnn;
  base.n_realizations = n_baseline;

  BaselineComparison cmp;
  cmp.nnn = run_ensemble(nnn, exec);
  cmp.baseline = run_ensemble(base, exec);

  cmp.paired_n = std::min(n_nnn, n_baseline);
  double mean = 0.0;
  for (int i = 0; i < cmp.paired_n; ++i)
    mean += cmp.nnn.p_values[i] - cmp.baseline.p_values[i];
  mean /= cmp.paired_n;
  double var = 0.0;
  for (int i = 0; i < cmp.paired_n; ++i) {
    double d = cmp.nnn.p_values[i] - cmp.baseline.p_values[i] - mean;
    var += d * d;
  }
  cmp.mean_difference = mean;
  cmp.diff_stddev = cmp.paired_n > 1 ? std::sqrt(var / (cmp.paired_n - 1)) : 0.0;
  return cmp;
}

std::string sweep_filename(Protocol p, DisorderKind d, SweepAxis a) {
  return protocol_name(p) + "_" + disorder_kind_name(d) + "_" + sweep_axis_name(a) +
         ".csv";
}

void write_sweep_csv(std::ostream& os, const SweepTable& table,
                     const std::string& provenance) {
  os << "# " << provenance << "\n";
  os << sweep_axis_name(table.axis) << ",mean,std,stderr,n\n";
  for (const auto& row : table.rows)
    os << format_value(row.value) << "," << format_value(row.stats.mean) << ","
       << format_value(row.stats.stddev) << "," << format_value(row.stats.stderror)
       << "," << row.stats.n << "\n";
}

std::string stats_to_json(const EnsembleConfig& config, const EnsembleStats& stats) {
  nlohmann::json j;
  j["config"] = {{"protocol", protocol_name(config.protocol)},
                 {"n_cells", config.n_cells},
                 {"T", config.T},
                 {"omega", config.omega},
                 {"delta", config.delta},
                 {"n_steps", config.n_steps},
                 {"disorder", disorder_kind_name(config.disorder)},
                 {"alpha", config.disorder_params.alpha},
                 {"gamma", config.disorder_params.gamma},
                 {"n_realizations", config.n_realizations},
                 {"master_seed", config.master_seed},
                 {"simplification_index", config.simplification_index}};
  j["n"] = stats.n;
  j["mean"] = stats.mean;
  j["std"] = stats.stddev;
  j["stderr"] = stats.stderror;
  j["fraction_above_0.95"] = stats.fraction_above(0.95);
  j["fraction_above_0.98"] = stats.fraction_above(0.98);
  j["histogram"] = {{"edges", stats.bin_edges}, {"counts", stats.counts}};
  if (!stats.records.empty()) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : stats.records)
      recs.push_back({{"index", r.index}, {"seed", r.seed}, {"p", r.p}});
    j["realizations"] = recs;
  }
  return j.dump(2);
}

}  // namespace sshqt
