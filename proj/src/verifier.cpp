#include "binomid/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

namespace binomid {

GridSpec GridSpec::uniform(const Identity& I, long long lo, long long hi) {
  GridSpec g;
  for (const auto& p : I.params) g.ranges[p] = {lo, hi};
  return g;
}

std::uint64_t GridSpec::total(const Identity& I) const {
  std::uint64_t n = 1;
  for (const auto& p : I.params) {
    auto it = ranges.find(p);
    if (it == ranges.end()) throw EvalError("grid missing parameter '" + p + "'");
    auto [lo, hi] = it->second;
    if (lo > hi) throw EvalError("empty range for parameter '" + p + "'");
    std::uint64_t size = static_cast<std::uint64_t>(hi - lo) + 1;
    if (n > UINT64_MAX / size) throw EvalError("grid too large");
    n *= size;
  }
  return n;
}

ParamEnv to_env(const OrderedEnv& env) {
  ParamEnv out;
  for (const auto& [k, v] : env) out[k] = v;
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

struct ShardResult {
  std::uint64_t instances = 0;
  std::vector<Failure> failures;
};

bool env_less(const Failure& a, const Failure& b) {
  for (std::size_t i = 0; i < a.env.size() && i < b.env.size(); ++i) {
    if (a.env[i].second != b.env[i].second) return a.env[i].second < b.env[i].second;
  }
  return a.env.size() < b.env.size();
}

bool env_equal(const Failure& a, const Failure& b) { return !env_less(a, b) && !env_less(b, a); }

}  // namespace

VerificationReport verify_grid(const Identity& I, const GridSpec& grid, unsigned jobs) {
  const auto start = Clock::now();
  VerificationReport report;
  report.identity = I.name;
  report.grid_total = grid.total(I);
  std::vector<std::pair<long long, long long>> ranges;
  for (const auto& p : I.params) {
    ranges.push_back(grid.ranges.at(p));
    report.grid.emplace_back(p, ranges.back());
  }

  const std::uint64_t total = report.grid_total;
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, total > 0 ? static_cast<unsigned>(std::min<std::uint64_t>(total, 1024)) : 1));
  std::vector<ShardResult> shards(workers);

  auto run_shard = [&](unsigned w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    ShardResult& out = shards[w];
    ParamEnv env;
    OrderedEnv ordered(I.params.size());
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      // Mixed radix decode; the last parameter varies fastest.
      std::uint64_t rest = idx;
      for (std::size_t i = I.params.size(); i-- > 0;) {
        const auto [lo, hi] = ranges[i];
        const std::uint64_t size = static_cast<std::uint64_t>(hi - lo) + 1;
        BigInt v = lo + static_cast<long long>(rest % size);
        rest /= size;
        ordered[i] = {I.params[i], v};
        env[I.params[i]] = v;
      }
      if (!satisfies_constraints(I, env)) continue;
      ++out.instances;
      BigInt lhs = eval_side(I.lhs, env);
      BigInt rhs = eval_term(I.rhs, env);
      if (lhs != rhs) out.failures.push_back({ordered, std::move(lhs), std::move(rhs)});
    }
  };

  if (workers == 1) {
    run_shard(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_shard, w);
  }

  for (auto& s : shards) {
    report.instances += s.instances;
    for (auto& f : s.failures) report.failures.push_back(std::move(f));
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

BoundSensitivity bound_sensitivity(const Identity& I, const ParamEnv& env, long long window) {
  if (!I.has_sum()) throw EvalError(I.name + ": bound sensitivity needs a summation");
  if (window < 0) throw EvalError("window must be nonnegative");
  const SumExpr& s = I.sum();
  BoundSensitivity out;
  const BigInt lo = s.lower.eval(env);
  const BigInt hi = s.upper.eval(env);
  out.stated = eval_sum_range(s, env, lo, hi);
  out.extended = eval_sum_range(s, env, lo - window, hi + window);
  out.equal = out.stated == out.extended;
  return out;
}

bool grid_bound_sensitive(const Identity& I, const GridSpec& grid, long long window) {
  const std::uint64_t total = grid.total(I);
  ParamEnv env;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = I.params.size(); i-- > 0;) {
      const auto [lo, hi] = grid.ranges.at(I.params[i]);
      const std::uint64_t size = static_cast<std::uint64_t>(hi - lo) + 1;
      env[I.params[i]] = lo + static_cast<long long>(rest % size);
      rest /= size;
    }
    if (!satisfies_constraints(I, env)) continue;
    if (!bound_sensitivity(I, env, window).equal) return true;
  }
  return false;
}

VerificationReport fuzz(const Identity& I, std::uint64_t seed, std::uint64_t trials, long long lo, long long hi) {
  if (lo > hi) throw EvalError("fuzz range is empty");
  const auto start = Clock::now();
  VerificationReport report;
  report.identity = I.name;
  report.seed = seed;
  report.trials = trials;
  for (const auto& p : I.params) report.grid.emplace_back(p, std::pair{lo, hi});

  std::mt19937_64 rng(seed);
  const std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
  ParamEnv env;
  OrderedEnv ordered(I.params.size());
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < I.params.size(); ++i) {
      // Modulo keeps the draw sequence identical across standard libraries.
      BigInt v = lo + static_cast<long long>(rng() % width);
      ordered[i] = {I.params[i], v};
      env[I.params[i]] = v;
    }
    const bool inside = satisfies_constraints(I, env);
    if (inside) ++report.instances;
    BigInt lhs = eval_side(I.lhs, env);
    BigInt rhs = eval_term(I.rhs, env);
    if (lhs != rhs) (inside ? report.failures : report.exploratory).push_back({ordered, lhs, rhs});
  }
  for (auto* list : {&report.failures, &report.exploratory}) {
    std::stable_sort(list->begin(), list->end(), env_less);
    list->erase(std::unique(list->begin(), list->end(), env_equal), list->end());
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

namespace {

nlohmann::json failure_json(const Failure& f) {
  nlohmann::json env = nlohmann::json::object();
  for (const auto& [k, v] : f.env) {
    if (v >= INT64_MIN && v <= INT64_MAX) {
      env[k] = v.convert_to<std::int64_t>();
    } else {
      env[k] = v.str();
    }
  }
  return {{"env", env}, {"lhs", f.lhs.str()}, {"rhs", f.rhs.str()}};
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r, bool include_timing) {
  nlohmann::json j;
  j["identity"] = r.identity;
  nlohmann::json grid = nlohmann::json::object();
  for (const auto& [p, range] : r.grid) grid[p] = {range.first, range.second};
  j["grid"] = grid;
  j["instances"] = r.instances;
  j["failures"] = nlohmann::json::array();
  for (const auto& f : r.failures) j["failures"].push_back(failure_json(f));
  j["elapsed_ms"] = include_timing ? r.elapsed_ms : 0;
  if (r.seed) {
    j["seed"] = *r.seed;
    j["trials"] = r.trials.value_or(0);
    j["exploratory"] = nlohmann::json::array();
    for (const auto& f : r.exploratory) j["exploratory"].push_back(failure_json(f));
  }
  if (r.bound_sensitive) j["bound_sensitive"] = *r.bound_sensitive;
  return j;
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream out;
  out << r.identity << ": " << (r.passed() ? "PASS" : "FAIL") << "  instances=" << r.instances
      << " failures=" << r.failures.size();
  if (r.seed) out << " exploratory=" << r.exploratory.size() << " seed=" << *r.seed;
  if (r.bound_sensitive) out << " bound_sensitive=" << (*r.bound_sensitive ? "yes" : "no");
  out << " grid=";
  bool first = true;
  for (const auto& [p, range] : r.grid) {
    out << (first ? "" : ",") << p << "=" << range.first << ".." << range.second;
    first = false;
  }
  out << '\n';
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < r.failures.size() && i < kShown; ++i) {
    const auto& f = r.failures[i];
    out << "  failure {";
    for (std::size_t k = 0; k < f.env.size(); ++k) out << (k ? "," : "") << f.env[k].first << ":" << f.env[k].second;
    out << "} lhs=" << f.lhs << " rhs=" << f.rhs << '\n';
  }
  if (r.failures.size() > kShown) out << "  ... " << (r.failures.size() - kShown) << " more\n";
  return out.str();
}

}  // namespace binomid
