// Copyright 2026 The paulibench developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "paulibench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace paulibench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t env_size_t(const char* name, std::size_t fallback) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return fallback;
  return static_cast<std::size_t>(std::strtoull(value, nullptr, 10));
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Cs: return "cs";
    case Method::Lbcs: return "lbcs";
    case Method::Dd: return "dd";
    case Method::DerandCs: return "derand_cs";
    case Method::DerandLbcs: return "derand_lbcs";
    case Method::DerandDd: return "derand_dd";
    case Method::Aps: return "aps";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  static const std::map<std::string, Method> table{
      {"cs", Method::Cs},
      {"lbcs", Method::Lbcs},
      {"dd", Method::Dd},
      {"derand_cs", Method::DerandCs},
      {"derand_lbcs", Method::DerandLbcs},
      {"derand_dd", Method::DerandDd},
      {"aps", Method::Aps}};
  const auto it = table.find(name);
  if (it == table.end()) {
    throw ConfigError("unknown measurement method '" + name + "'");
  }
  return it->second;
}

bool is_derandomized(Method m) {
  return m == Method::DerandCs || m == Method::DerandLbcs || m == Method::DerandDd;
}

// ---------------------------------------------------------------------------
// Config

nlohmann::json StateSpec::to_json() const {
  switch (kind) {
    case Kind::Ground: return {{"type", "ground"}};
    case Kind::Basis: return {{"type", "basis"}, {"bits", basis_bits}};
    case Kind::Ansatz: {
      nlohmann::json j{{"type", "ansatz"}, {"depth", ansatz_depth}};
      if (ansatz_seed) j["seed"] = *ansatz_seed;
      return j;
    }
  }
  return {};
}

StateSpec StateSpec::from_json(const nlohmann::json& j) {
  StateSpec s;
  const std::string type = j.value("type", "ground");
  if (type == "ground") {
    s.kind = Kind::Ground;
  } else if (type == "basis") {
    s.kind = Kind::Basis;
    s.basis_bits = j.at("bits").get<std::string>();
  } else if (type == "ansatz") {
    s.kind = Kind::Ansatz;
    s.ansatz_depth = j.value("depth", std::size_t{4});
    if (j.contains("seed")) s.ansatz_seed = j.at("seed").get<std::uint64_t>();
  } else {
    throw ConfigError("unknown state type '" + type + "'");
  }
  return s;
}

ResourceModel ResourceModel::defaults() {
  ResourceModel m;
  m.regimes = {{"A", 1.0, 1.0},
               {"B", 1.0, 1.5e2},
               {"C", 1.0, 2.0e4},
               {"D", 1.0, 2.5e6}};
  return m;
}

nlohmann::json ResourceModel::to_json() const {
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : regimes) {
    regs.push_back({{"name", r.name}, {"w_c", r.w_c}, {"w_q", r.w_q}});
  }
  return {{"shot_delay", shot_delay}, {"regimes", regs}};
}

ResourceModel ResourceModel::from_json(const nlohmann::json& j) {
  ResourceModel m = defaults();
  m.shot_delay = j.value("shot_delay", 5e-4);
  if (j.contains("regimes")) {
    m.regimes.clear();
    for (const auto& r : j.at("regimes")) {
      m.regimes.push_back({r.at("name").get<std::string>(),
                           r.at("w_c").get<double>(), r.at("w_q").get<double>()});
    }
  }
  return m;
}

void BenchmarkConfig::validate() const {
  if (hamiltonian_path.empty()) throw ConfigError("no Hamiltonian file given");
  if (methods.empty()) throw ConfigError("no measurement methods selected");
  if (repeats < 2) throw ConfigError("need at least 2 repeats for an RMSE");
  if (checkpoints.empty()) throw ConfigError("no shot checkpoints given");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 ||
        (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw ConfigError("checkpoints must be strictly increasing positive counts");
    }
  }
  if (!(cutoff > 0)) throw ConfigError("accuracy cutoff must be positive");
  if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (!(resource.shot_delay > 0)) throw ConfigError("shot delay must be positive");
  for (const auto& r : resource.regimes) {
    if (!(r.w_c > 0) || !(r.w_q > 0)) {
      throw ConfigError("resource weights must be positive");
    }
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t k = i + 1; k < methods.size(); ++k) {
      if (methods[i] == methods[k]) {
        throw ConfigError("method '" + method_name(methods[i]) + "' listed twice");
      }
    }
  }
  if (estimator.kind == EstimatorKind::Wmc) {
    for (Method m : methods) {
      if (is_derandomized(m) || m == Method::Aps) {
        throw ConfigError("the weighted estimator cannot be used with '" +
                          method_name(m) +
                          "': the method has no per-sample query distribution");
      }
    }
  }
}

nlohmann::json BenchmarkConfig::to_json() const {
  nlohmann::json names = nlohmann::json::array();
  for (Method m : methods) names.push_back(method_name(m));
  return {{"hamiltonian", hamiltonian_path.string()},
          {"state", state.to_json()},
          {"methods", names},
          {"estimator", {{"kind", estimator.name()}, {"gamma", estimator.gamma}}},
          {"checkpoints", checkpoints},
          {"repeats", repeats},
          {"cutoff", cutoff},
          {"epsilon", epsilon},
          {"budget_free", budget_free},
          {"seed", seed},
          {"resource", resource.to_json()},
          {"optimize_dd", optimize_dd},
          {"prune_threshold", prune_threshold}};
}

BenchmarkConfig BenchmarkConfig::from_json(const nlohmann::json& j) {
  BenchmarkConfig c;
  c.hamiltonian_path = j.at("hamiltonian").get<std::string>();
  if (j.contains("state")) c.state = StateSpec::from_json(j.at("state"));
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto& name : j.at("methods")) {
      c.methods.push_back(method_from_name(name.get<std::string>()));
    }
  }
  if (j.contains("estimator")) {
    const auto& e = j.at("estimator");
    c.estimator = EstimatorConfig::parse(e.value("kind", std::string("bayes")),
                                         e.value("gamma", 0.0));
  }
  if (j.contains("checkpoints")) {
    const auto& cp = j.at("checkpoints");
    if (cp.is_array()) {
      c.checkpoints = cp.get<std::vector<std::uint64_t>>();
    } else {
      const double lo = cp.at("min").get<double>();
      const double hi = cp.at("max").get<double>();
      const std::size_t points = cp.at("points").get<std::size_t>();
      if (points < 1 || !(lo >= 1) || !(hi >= lo)) {
        throw ConfigError("bad checkpoint range");
      }
      for (std::size_t i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0
                                     : static_cast<double>(i) /
                                           static_cast<double>(points - 1);
        const auto value = static_cast<std::uint64_t>(
            std::llround(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)))));
        if (c.checkpoints.empty() || value > c.checkpoints.back()) {
          c.checkpoints.push_back(value);
        }
      }
    }
  }
  c.repeats = j.value("repeats", std::size_t{10});
  c.cutoff = j.value("cutoff", 5e-3);
  c.epsilon = j.value("epsilon", 0.1);
  c.budget_free = j.value("budget_free", false);
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("resource")) c.resource = ResourceModel::from_json(j.at("resource"));
  c.optimize_dd = j.value("optimize_dd", true);
  c.prune_threshold = j.value("prune_threshold", 0.0);
  c.validate();
  return c;
}

BenchmarkConfig BenchmarkConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

// ---------------------------------------------------------------------------
// Metrics

double rmse(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw InvalidArgument("rmse of an empty estimate list");
  double acc = 0;
  for (double e : estimates) acc += (e - truth) * (e - truth);
  return std::sqrt(acc / static_cast<double>(estimates.size()));
}

std::optional<double> shots_to_cutoff(std::span<const RmsePoint> curve,
                                      double cutoff) {
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].value > cutoff) continue;
    if (i == 0) return static_cast<double>(curve[0].shots);
    const double s0 = std::log(static_cast<double>(curve[i - 1].shots));
    const double s1 = std::log(static_cast<double>(curve[i].shots));
    const double t = (cutoff - curve[i - 1].value) /
                     (curve[i].value - curve[i - 1].value);
    return std::exp(s0 + t * (s1 - s0));
  }
  return std::nullopt;
}

namespace {

double median_of_sorted(std::span<const std::uint64_t> sorted) {
  const std::size_t k = sorted.size();
  if (k == 0) throw InvalidArgument("median of nothing");
  if (k % 2 == 1) return static_cast<double>(sorted[k / 2]);
  return (static_cast<double>(sorted[k / 2 - 1]) +
          static_cast<double>(sorted[k / 2])) /
         2.0;
}

}  // namespace

ShotStats shot_distribution_stats(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw InvalidArgument("no circuits to summarize");
  std::vector<std::uint64_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t k = static_cast<std::size_t>(
      std::ceil(0.05 * static_cast<double>(sorted.size())));
  const std::size_t edge = std::max<std::size_t>(1, k);
  ShotStats s;
  s.median_all = median_of_sorted(sorted);
  s.median_top5 = median_of_sorted(std::span<const std::uint64_t>(sorted).first(edge));
  s.median_bottom5 =
      median_of_sorted(std::span<const std::uint64_t>(sorted).last(edge));
  return s;
}

std::vector<ResourceScore> resource_scores(double classical_seconds,
                                           double quantum_seconds,
                                           const ResourceModel& model) {
  if (classical_seconds < 0 || quantum_seconds < 0) {
    throw InvalidArgument("runtimes must be nonnegative");
  }
  std::vector<ResourceScore> scores;
  for (const auto& regime : model.regimes) {
    const double r = regime.w_c * classical_seconds + regime.w_q * quantum_seconds;
    scores.push_back({regime.name, r, std::log(r)});
  }
  return scores;
}

// ---------------------------------------------------------------------------
// Harness

namespace {

/// Shared, size-capped cache of rotated outcome distributions. Misses beyond
/// the cap fall back to an uncached sampler, so memory stays bounded when a
/// method touches very many distinct bases.
class SamplerCache {
 public:
  SamplerCache(const QuantumState& state, std::size_t max_entries)
      : state_(state), cap_(max_entries) {}

  std::shared_ptr<const BasisOutcomeSampler> get(const MeasurementBasis& basis) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      const auto it = cache_.find(basis.pauli());
      if (it != cache_.end()) return it->second;
    }
    auto sampler = std::make_shared<const BasisOutcomeSampler>(state_, basis);
    std::lock_guard<std::mutex> lock(mu_);
    if (cache_.size() < cap_) cache_.emplace(basis.pauli(), sampler);
    return sampler;
  }

 private:
  const QuantumState& state_;
  std::size_t cap_;
  std::mutex mu_;
  std::map<PauliString, std::shared_ptr<const BasisOutcomeSampler>> cache_;
};

std::uint64_t stream_id(std::size_t method_index, std::size_t repeat,
                        unsigned purpose) {
  return (static_cast<std::uint64_t>(method_index + 1) << 40) ^
         (static_cast<std::uint64_t>(repeat) << 8) ^ purpose;
}

struct MethodContext {
  Method method = Method::Cs;
  std::unique_ptr<QueryDistribution> dist;     // sampling methods
  std::vector<MeasurementBasis> sequence;      // derandomized methods
  double setup_seconds = 0.0;
  std::optional<double> derand_conf;
  std::vector<std::string> warnings;
  nlohmann::json detail;
};

std::vector<PauliString> targets_of(const Hamiltonian& h) {
  std::vector<PauliString> t;
  t.reserve(h.terms().size());
  for (const auto& term : h.terms()) t.push_back(term.pauli);
  return t;
}

std::unique_ptr<QueryDistribution> make_distribution(Method m, const Hamiltonian& h,
                                                     const BenchmarkConfig& cfg,
                                                     nlohmann::json* detail) {
  switch (m) {
    case Method::Cs:
    case Method::DerandCs: {
      auto d = std::make_unique<ProductDistribution>(cs_distribution(h.num_qubits()));
      if (detail) (*detail)["diagonal_cost"] = diagonal_cost(h, *d);
      return d;
    }
    case Method::Lbcs:
    case Method::DerandLbcs: {
      auto d = std::make_unique<ProductDistribution>(lbcs_optimize(h));
      if (detail) {
        (*detail)["diagonal_cost"] = diagonal_cost(h, *d);
        (*detail)["marginals"] = d->to_json()["marginals"];
      }
      return d;
    }
    case Method::Dd:
    case Method::DerandDd: {
      auto built = DecisionDiagram::build(h);
      auto dd = std::make_unique<DecisionDiagram>(
          cfg.optimize_dd ? built.optimized(h) : built);
      if (detail) {
        (*detail)["nodes"] = dd->num_nodes();
        (*detail)["edges"] = dd->num_edges();
        (*detail)["paths"] = dd->path_count();
        (*detail)["diagonal_cost"] = diagonal_cost(h, *dd);
      }
      return dd;
    }
    case Method::Aps:
      return std::make_unique<AdaptiveSampler>(h);
  }
  throw InternalError("unreachable method");
}

MethodContext setup_method(Method m, const Hamiltonian& h,
                           const BenchmarkConfig& cfg) {
  MethodContext ctx;
  ctx.method = m;
  const auto start = Clock::now();
  ctx.dist = make_distribution(m, h, cfg, &ctx.detail);
  if (is_derandomized(m)) {
    DerandConfig dcfg;
    dcfg.budget = cfg.checkpoints.back();
    dcfg.epsilon = cfg.epsilon;
    dcfg.budget_free = cfg.budget_free;
    const auto targets = targets_of(h);
    DerandResult result = derandomize(targets, *ctx.dist, dcfg);
    ctx.sequence = std::move(result.bases);
    ctx.derand_conf = result.final_conf;
    ctx.detail["epsilon"] = dcfg.epsilon;
    ctx.detail["eta"] = dcfg.eta();
    ctx.detail["budget"] = dcfg.budget;
    ctx.detail["budget_free"] = dcfg.budget_free;
    ctx.detail["final_conf"] = result.final_conf;
    // One sequence per method at the final budget; earlier checkpoints reuse
    // its prefixes.
    ctx.detail["prefix_reuse"] = true;
    for (std::size_t j : result.zero_coverage_targets) {
      ctx.warnings.push_back("target " + targets[j].str() +
                             " has zero coverage and can never be hit");
    }
  } else if (ctx.dist->can_evaluate_coverage()) {
    const auto cost = diagonal_cost_detail(h, *ctx.dist);
    for (std::size_t j : cost.uncovered_terms) {
      ctx.warnings.push_back("target " + h.terms()[j].pauli.str() +
                             " has zero coverage and can never be hit");
    }
  }
  ctx.setup_seconds = seconds_since(start);
  return ctx;
}

struct RepeatResult {
  std::vector<double> estimates;        // per checkpoint
  std::vector<PhaseTimes> cumulative;   // per checkpoint (sampling/simulate/estimate)
};

RepeatResult run_repeat(const MethodContext& ctx, const Hamiltonian& h,
                        const BenchmarkConfig& cfg, std::size_t method_index,
                        std::size_t repeat, SamplerCache& samplers) {
  Philox basis_rng(cfg.seed, stream_id(method_index, repeat, 0));
  Philox sim_rng(cfg.seed, stream_id(method_index, repeat, 1));

  const QueryDistribution* wmc_dist =
      cfg.estimator.kind == EstimatorKind::Wmc ? ctx.dist.get() : nullptr;
  Estimator estimator(h, cfg.estimator, wmc_dist);

  RepeatResult result;
  PhaseTimes cumulative;
  std::uint64_t done = 0;
  std::vector<std::uint64_t> outcome_buffer;
  for (const std::uint64_t checkpoint : cfg.checkpoints) {
    const std::uint64_t block = checkpoint - done;

    // Propose the block's bases, grouped by basis for batched simulation.
    auto t0 = Clock::now();
    std::map<MeasurementBasis, std::uint64_t> groups;
    if (is_derandomized(ctx.method)) {
      for (std::uint64_t s = 0; s < block; ++s) ++groups[ctx.sequence[done + s]];
    } else {
      for (std::uint64_t s = 0; s < block; ++s) ++groups[ctx.dist->sample(basis_rng)];
    }
    cumulative.sampling += seconds_since(t0);

    // Draw outcomes per distinct basis.
    t0 = Clock::now();
    std::vector<std::vector<std::uint64_t>> outcomes;
    outcomes.reserve(groups.size());
    for (const auto& [basis, count] : groups) {
      const auto sampler = samplers.get(basis);
      outcome_buffer.clear();
      outcome_buffer.reserve(count);
      for (std::uint64_t s = 0; s < count; ++s) {
        outcome_buffer.push_back(sampler->sample_index(sim_rng));
      }
      outcomes.push_back(outcome_buffer);
    }
    cumulative.simulate += seconds_since(t0);

    // Tally and evaluate the estimator at the checkpoint.
    t0 = Clock::now();
    std::size_t g = 0;
    for (const auto& [basis, count] : groups) {
      (void)count;
      for (const std::uint64_t bits : outcomes[g]) estimator.add_index(basis, bits);
      ++g;
    }
    result.estimates.push_back(estimator.estimate().value);
    cumulative.estimate += seconds_since(t0);

    result.cumulative.push_back(cumulative);
    done = checkpoint;
  }
  return result;
}

/// Regenerates the basis stream only (no outcomes) to count circuits at the
/// reporting budget; bookkeeping, excluded from the timed phases.
std::map<MeasurementBasis, std::uint64_t> basis_counts(
    const MethodContext& ctx, const BenchmarkConfig& cfg, std::size_t method_index,
    std::size_t repeat, std::uint64_t budget) {
  std::map<MeasurementBasis, std::uint64_t> counts;
  if (is_derandomized(ctx.method)) {
    for (std::uint64_t s = 0; s < budget; ++s) ++counts[ctx.sequence[s]];
  } else {
    Philox basis_rng(cfg.seed, stream_id(method_index, repeat, 0));
    for (std::uint64_t s = 0; s < budget; ++s) ++counts[ctx.dist->sample(basis_rng)];
  }
  return counts;
}

double interpolate_at(std::span<const std::uint64_t> checkpoints,
                      std::span<const double> values, double shots) {
  if (shots <= static_cast<double>(checkpoints.front())) {
    return values.front() * shots / static_cast<double>(checkpoints.front());
  }
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (shots <= static_cast<double>(checkpoints[i])) {
      const double s0 = static_cast<double>(checkpoints[i - 1]);
      const double s1 = static_cast<double>(checkpoints[i]);
      const double t = (shots - s0) / (s1 - s0);
      return values[i - 1] + t * (values[i] - values[i - 1]);
    }
  }
  return values.back();
}

MethodReport run_method(const Hamiltonian& h, const QuantumState& state,
                        const BenchmarkConfig& cfg, std::size_t method_index,
                        SamplerCache& samplers) {
  const Method m = cfg.methods[method_index];
  MethodContext ctx = setup_method(m, h, cfg);

  std::vector<RepeatResult> repeats(cfg.repeats);
  const std::size_t threads =
      std::min<std::size_t>(env_size_t("PAULIBENCH_THREADS", 1), cfg.repeats);
  if (threads <= 1) {
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      repeats[r] = run_repeat(ctx, h, cfg, method_index, r, samplers);
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next.fetch_add(1); r < cfg.repeats;
             r = next.fetch_add(1)) {
          repeats[r] = run_repeat(ctx, h, cfg, method_index, r, samplers);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  MethodReport report;
  report.method = m;
  report.warnings = ctx.warnings;
  report.derand_conf = ctx.derand_conf;

  const double truth = exact_expectation(h, state);
  std::vector<double> estimates(cfg.repeats);
  for (std::size_t ci = 0; ci < cfg.checkpoints.size(); ++ci) {
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      estimates[r] = repeats[r].estimates[ci];
    }
    report.rmse_curve.push_back({cfg.checkpoints[ci], rmse(estimates, truth)});
  }
  report.degenerate_repeats =
      std::adjacent_find(estimates.begin(), estimates.end(),
                         std::not_equal_to<>()) == estimates.end();
  if (report.degenerate_repeats) {
    report.warnings.push_back("all repeats produced identical final estimates");
  }

  report.shots_to_cutoff = shots_to_cutoff(report.rmse_curve, cfg.cutoff);
  report.cutoff_reached = report.shots_to_cutoff.has_value();

  // Circuit statistics at the first checkpoint meeting the cutoff (the final
  // checkpoint when it is never met).
  report.stats_budget = cfg.checkpoints.back();
  for (const RmsePoint& p : report.rmse_curve) {
    if (p.value <= cfg.cutoff) {
      report.stats_budget = p.shots;
      break;
    }
  }
  {
    double unique_acc = 0;
    ShotStats stats_acc;
    const std::size_t stat_repeats = is_derandomized(m) ? 1 : cfg.repeats;
    for (std::size_t r = 0; r < stat_repeats; ++r) {
      const auto counts = basis_counts(ctx, cfg, method_index, r, report.stats_budget);
      std::vector<std::uint64_t> values;
      values.reserve(counts.size());
      std::uint64_t total = 0;
      for (const auto& [basis, count] : counts) {
        values.push_back(count);
        total += count;
      }
      if (total != report.stats_budget) {
        throw InternalError("per-circuit shot counts do not sum to the budget");
      }
      const ShotStats s = shot_distribution_stats(values);
      unique_acc += static_cast<double>(counts.size());
      stats_acc.median_all += s.median_all;
      stats_acc.median_top5 += s.median_top5;
      stats_acc.median_bottom5 += s.median_bottom5;
    }
    report.unique_bases = unique_acc / static_cast<double>(stat_repeats);
    report.shot_stats = {stats_acc.median_all / stat_repeats,
                         stats_acc.median_top5 / stat_repeats,
                         stats_acc.median_bottom5 / stat_repeats};
  }

  // Mean cumulative phase times per checkpoint, then per-repeat means.
  const std::size_t num_cp = cfg.checkpoints.size();
  std::vector<double> mean_sampling(num_cp, 0), mean_simulate(num_cp, 0),
      mean_estimate(num_cp, 0);
  for (std::size_t ci = 0; ci < num_cp; ++ci) {
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      mean_sampling[ci] += repeats[r].cumulative[ci].sampling;
      mean_simulate[ci] += repeats[r].cumulative[ci].simulate;
      mean_estimate[ci] += repeats[r].cumulative[ci].estimate;
    }
    mean_sampling[ci] /= static_cast<double>(cfg.repeats);
    mean_simulate[ci] /= static_cast<double>(cfg.repeats);
    mean_estimate[ci] /= static_cast<double>(cfg.repeats);
  }
  report.times.setup = ctx.setup_seconds;
  report.times.sampling = mean_sampling.back();
  report.times.simulate = mean_simulate.back();
  report.times.estimate = mean_estimate.back();

  const double score_shots = report.shots_to_cutoff.value_or(
      static_cast<double>(cfg.checkpoints.back()));
  report.classical_at_cutoff =
      ctx.setup_seconds +
      interpolate_at(cfg.checkpoints, mean_sampling, score_shots) +
      interpolate_at(cfg.checkpoints, mean_simulate, score_shots) +
      interpolate_at(cfg.checkpoints, mean_estimate, score_shots);
  report.quantum_at_cutoff = score_shots * cfg.resource.shot_delay;
  report.scores = resource_scores(report.classical_at_cutoff,
                                  report.quantum_at_cutoff, cfg.resource);

  report.method_detail = std::move(ctx.detail);
  return report;
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
  config.validate();
  Hamiltonian h = Hamiltonian::load(config.hamiltonian_path);
  if (config.prune_threshold > 0) h = h.pruned(config.prune_threshold);
  if (h.terms().empty()) {
    throw ConfigError("the Hamiltonian has no non-identity terms to estimate");
  }

  GroundStateOptions gopts;
  gopts.max_qubits = env_size_t("PAULIBENCH_SIM_CAP", gopts.max_qubits);
  if (h.num_qubits() > gopts.max_qubits) {
    throw ConfigError("Hamiltonian on " + std::to_string(h.num_qubits()) +
                      " qubits exceeds the simulator cap of " +
                      std::to_string(gopts.max_qubits));
  }

  BenchmarkReport report;
  report.config_echo = config.to_json();
  report.master_seed = config.seed;
  report.hamiltonian_summary = h.summarize().to_json();

  const auto t0 = Clock::now();
  std::optional<QuantumState> state;
  switch (config.state.kind) {
    case StateSpec::Kind::Ground:
      state = ground_state(h, gopts).first;
      break;
    case StateSpec::Kind::Basis: {
      if (config.state.basis_bits.size() != h.num_qubits()) {
        throw ConfigError("basis state bit string length does not match n");
      }
      state = QuantumState::basis_state(h.num_qubits(),
                                        Outcome::from_string(config.state.basis_bits));
      break;
    }
    case StateSpec::Kind::Ansatz: {
      AnsatzSpec spec;
      spec.n = h.num_qubits();
      spec.depth = config.state.ansatz_depth;
      spec.seed = config.state.ansatz_seed.value_or(config.seed);
      state = random_ansatz_state(spec);
      break;
    }
  }
  report.state_setup_seconds = seconds_since(t0);
  report.truth = exact_expectation(h, *state);

  SamplerCache samplers(*state,
                        std::max<std::size_t>(
                            64, (std::size_t{1} << 28) / (std::size_t{8} << h.num_qubits())));
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    report.methods.push_back(run_method(h, *state, config, i, samplers));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialization and emission

nlohmann::json MethodReport::to_json() const {
  nlohmann::json curve = nlohmann::json::array();
  for (const RmsePoint& p : rmse_curve) {
    curve.push_back({{"shots", p.shots}, {"rmse", p.value}});
  }
  nlohmann::json score_list = nlohmann::json::array();
  for (const ResourceScore& s : scores) {
    score_list.push_back({{"regime", s.regime}, {"R", s.r}, {"log_R", s.log_r}});
  }
  nlohmann::json j{
      {"method", method_name(method)},
      {"rmse_curve", curve},
      {"cutoff_reached", cutoff_reached},
      {"shots_to_cutoff",
       shots_to_cutoff ? nlohmann::json(*shots_to_cutoff) : nlohmann::json()},
      {"stats_budget", stats_budget},
      {"unique_bases", unique_bases},
      {"shots_per_circuit",
       {{"median_all", shot_stats.median_all},
        {"median_top5", shot_stats.median_top5},
        {"median_bottom5", shot_stats.median_bottom5}}},
      {"runtime_seconds",
       {{"setup", times.setup},
        {"sampling", times.sampling},
        {"simulate", times.simulate},
        {"estimate", times.estimate}}},
      {"classical_at_cutoff_seconds", classical_at_cutoff},
      {"predicted_quantum_seconds", quantum_at_cutoff},
      {"resource_scores", score_list},
      {"degenerate_repeats", degenerate_repeats},
      {"warnings", warnings},
      {"detail", method_detail}};
  if (derand_conf) j["final_conf"] = *derand_conf;
  return j;
}

nlohmann::json BenchmarkReport::to_json() const {
  nlohmann::json method_list = nlohmann::json::array();
  for (const MethodReport& m : methods) method_list.push_back(m.to_json());
  return {{"config", config_echo},
          {"truth", truth},
          {"master_seed", master_seed},
          {"state_setup_seconds", state_setup_seconds},
          {"hamiltonian_summary", hamiltonian_summary},
          {"methods", method_list}};
}

void emit_report(const BenchmarkReport& report, const BenchmarkConfig& config,
                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());

  auto open = [&](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    return out;
  };

  {
    auto out = open(out_dir / "report.json");
    out << report.to_json().dump(2) << '\n';
  }
  {
    auto out = open(out_dir / "rmse.csv");
    out << "method,shots,rmse\n";
    out.precision(17);
    for (const MethodReport& m : report.methods) {
      for (const RmsePoint& p : m.rmse_curve) {
        out << method_name(m.method) << ',' << p.shots << ',' << p.value << '\n';
      }
    }
  }
  {
    auto out = open(out_dir / "weight_histogram.csv");
    out << "weight,count\n";
    for (const auto& [w, c] :
         report.hamiltonian_summary.at("weight_histogram").items()) {
      out << w << ',' << c.get<std::size_t>() << '\n';
    }
  }
  const auto curves = out_dir / "curves";
  std::filesystem::create_directories(curves, ec);
  for (const MethodReport& m : report.methods) {
    auto out = open(curves / (method_name(m.method) + ".dat"));
    out << "# shots rmse\n";
    out.precision(17);
    for (const RmsePoint& p : m.rmse_curve) {
      out << p.shots << ' ' << p.value << '\n';
    }
  }
  for (const MethodReport& m : report.methods) {
    if (m.method == Method::Lbcs && m.method_detail.contains("marginals")) {
      auto out = open(out_dir / "lbcs_marginals.csv");
      out << "qubit,p_x,p_y,p_z\n";
      out.precision(17);
      std::size_t q = 0;
      for (const auto& row : m.method_detail.at("marginals")) {
        out << q++ << ',' << row.at(0).get<double>() << ','
            << row.at(1).get<double>() << ',' << row.at(2).get<double>() << '\n';
      }
    }
    if (m.method == Method::Dd && m.method_detail.contains("nodes")) {
      auto out = open(out_dir / "dd_summary.csv");
      out << "nodes,edges,paths,diagonal_cost\n";
      out << m.method_detail.at("nodes").get<std::size_t>() << ','
          << m.method_detail.at("edges").get<std::size_t>() << ','
          << m.method_detail.at("paths").get<std::uint64_t>() << ','
          << m.method_detail.at("diagonal_cost").get<double>() << '\n';
    }
  }
  (void)config;
}

std::string format_report(const nlohmann::json& j) {
  std::ostringstream out;
  out.precision(4);
  out << "Hamiltonian: " << j.at("config").at("hamiltonian").get<std::string>()
      << "  (L=" << j.at("hamiltonian_summary").at("term_count") << ")\n";
  out << "Truth energy: " << j.at("truth").get<double>()
      << "   master seed: " << j.at("master_seed") << "\n\n";
  out << "method        shots-to-cutoff   unique   median shots/circ (all, top5%, "
         "bot5%)   classical[s]   quantum[s]   log(R)\n";
  for (const auto& m : j.at("methods")) {
    out.width(12);
    out << std::left << m.at("method").get<std::string>() << "  ";
    if (m.at("shots_to_cutoff").is_null()) {
      out << "not reached      ";
    } else {
      out.width(15);
      out << std::left << m.at("shots_to_cutoff").get<double>() << "  ";
    }
    out.width(7);
    out << std::left << m.at("unique_bases").get<double>() << "  ";
    const auto& s = m.at("shots_per_circuit");
    out << "(" << s.at("median_all").get<double>() << ", "
        << s.at("median_top5").get<double>() << ", "
        << s.at("median_bottom5").get<double>() << ")   ";
    out << m.at("classical_at_cutoff_seconds").get<double>() << "   ";
    out << m.at("predicted_quantum_seconds").get<double>() << "   ";
    bool first = true;
    for (const auto& score : m.at("resource_scores")) {
      if (!first) out << "/";
      out << score.at("regime").get<std::string>() << "="
          << score.at("log_R").get<double>();
      first = false;
    }
    out << '\n';
    for (const auto& w : m.at("warnings")) {
      out << "    warning: " << w.get<std::string>() << '\n';
    }
  }
  return out.str();
}

}  // namespace paulibench
