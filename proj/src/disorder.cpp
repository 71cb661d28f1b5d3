#include "sshqt/disorder.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sshqt/rng.hpp"

namespace sshqt {

std::string disorder_kind_name(DisorderKind k) {
  switch (k) {
    case DisorderKind::None: return "none";
    case DisorderKind::Diagonal: return "diagonal";
    case DisorderKind::OffDiagonalNN: return "offdiagonal";
    case DisorderKind::CorrelatedDiagonal: return "correlated";
    case DisorderKind::DriveBias: return "drive_bias";
  }
  return "?";
}

DisorderKind disorder_kind_from_name(const std::string& name) {
  if (name == "none") return DisorderKind::None;
  if (name == "diagonal") return DisorderKind::Diagonal;
  if (name == "offdiagonal") return DisorderKind::OffDiagonalNN;
  if (name == "correlated") return DisorderKind::CorrelatedDiagonal;
  if (name == "drive_bias") return DisorderKind::DriveBias;
  throw std::invalid_argument("unknown disorder kind '" + name + "'");
}

DisorderRealization diagonal_gaussian(const ChainSpec& spec, double alpha,
                                      std::uint64_t seed) {
  if (alpha < 0.0) throw std::invalid_argument("diagonal_gaussian: alpha must be >= 0");
  const int S = spec.total_sites();
  DisorderRealization d;
  d.kind = DisorderKind::Diagonal;
  d.seed = seed;
  d.params.alpha = alpha;
  d.delta_h = Eigen::MatrixXd::Zero(S, S);
  SplitMix64 rng(seed);
  for (int i = 0; i < S; ++i) d.delta_h(i, i) = alpha * gaussian(rng);
  return d;
}

DisorderRealization offdiagonal_gaussian(const ChainSpec& spec, double alpha,
                                         std::uint64_t seed) {
  if (alpha < 0.0) throw std::invalid_argument("offdiagonal_gaussian: alpha must be >= 0");
  const int S = spec.total_sites();
  DisorderRealization d;
  d.kind = DisorderKind::OffDiagonalNN;
  d.seed = seed;
  d.params.alpha = alpha;
  d.delta_h = Eigen::MatrixXd::Zero(S, S);
  SplitMix64 rng(seed);
  for (int b = 0; b < S - 1; ++b) {
    double dt = alpha * gaussian(rng);
    d.delta_h(b + 1, b) = dt;
    d.delta_h(b, b + 1) = dt;
  }
  return d;
}

DisorderRealization correlated_diagonal(const ChainSpec& spec, double alpha,
                                        double gamma, std::uint64_t seed) {
  if (alpha < 0.0 || gamma < 0.0)
    throw std::invalid_argument("correlated_diagonal: alpha and gamma must be >= 0");
  const int S = spec.total_sites();
  const int NA = (S + 1) / 2;
  DisorderRealization d;
  d.kind = DisorderKind::CorrelatedDiagonal;
  d.seed = seed;
  d.params.alpha = alpha;
  d.params.gamma = gamma;
  d.delta_h = Eigen::MatrixXd::Zero(S, S);
  SplitMix64 rng(seed);
  std::vector<double> phi(NA);
  for (int k = 0; k < NA; ++k) phi[k] = 6.283185307179586476925287 * rng.next_double();
  for (int n = 1; n <= S; ++n) {
    double e = 0.0;
    for (int k = 1; k <= NA; ++k)
      e += alpha / std::pow(k, gamma / 2.0) *
           std::cos(4.0 * 3.14159265358979323846 * k * n / S + phi[k - 1]);
    d.delta_h(n - 1, n - 1) = e;
  }
  return d;
}

DisorderRealization drive_bias(double alpha, std::uint64_t seed) {
  if (alpha < 0.0) throw std::invalid_argument("drive_bias: alpha must be >= 0");
  DisorderRealization d;
  d.kind = DisorderKind::DriveBias;
  d.seed = seed;
  d.params.alpha = alpha;
  SplitMix64 rng(seed);
  d.bias = alpha * gaussian(rng);
  return d;
}

DisorderRealization no_disorder(const ChainSpec&) {
  return DisorderRealization{};
}

DisorderRealization make_disorder(const ChainSpec& spec, DisorderKind kind,
                                  const DisorderParams& params, std::uint64_t seed) {
  switch (kind) {
    case DisorderKind::None: return no_disorder(spec);
    case DisorderKind::Diagonal: return diagonal_gaussian(spec, params.alpha, seed);
    case DisorderKind::OffDiagonalNN:
      return offdiagonal_gaussian(spec, params.alpha, seed);
    case DisorderKind::CorrelatedDiagonal:
      return correlated_diagonal(spec, params.alpha, params.gamma, seed);
    case DisorderKind::DriveBias: return drive_bias(params.alpha, seed);
  }
  throw std::logic_error("unreachable");
}

std::string disorder_to_json(const DisorderRealization& d) {
  nlohmann::json j;
  j["kind"] = disorder_kind_name(d.kind);
  j["alpha"] = d.params.alpha;
  if (d.kind == DisorderKind::CorrelatedDiagonal) j["gamma"] = d.params.gamma;
  j["seed"] = d.seed;
  return j.dump();
}

DisorderRealization disorder_from_json(const ChainSpec& spec, const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  DisorderParams params;
  params.alpha = j.value("alpha", 0.0);
  params.gamma = j.value("gamma", 0.0);
  DisorderKind kind = disorder_kind_from_name(j.at("kind").get<std::string>());
  std::uint64_t seed = j.at("seed").get<std::uint64_t>();
  return make_disorder(spec, kind, params, seed);
}

}  // namespace sshqt
