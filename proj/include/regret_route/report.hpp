#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "regret_route/generators.hpp"
#include "regret_route/json_io.hpp"
#include "regret_route/lp.hpp"
#include "regret_route/oracles.hpp"
#include "regret_route/reductions.hpp"
#include "regret_route/verify.hpp"

namespace regret_route {

struct ExperimentReport {
  std::string instance;
  std::uint64_t seed = 0;
  std::string solver;
  Json params = Json::object();
  std::optional<double> lp_value;
  long long count = 0;
  long long cost = 0;
  std::optional<long long> brute_force;
  bool verified = false;
  std::vector<std::string> failures;
  std::vector<BoundCheck> bound_checks;
  std::optional<double> wall_ms;
  std::string error;

  bool pass() const {
    return error.empty() && verified &&
           std::all_of(bound_checks.begin(), bound_checks.end(), [](const BoundCheck& c) { return c.pass; });
  }

  Json to_json() const {
    Json j{{"instance", instance}, {"seed", seed},       {"solver", solver},
           {"params", params},     {"count", count},     {"cost", cost},
           {"verified", verified}, {"pass", pass()},     {"bound_checks", checks_to_json(bound_checks)}};
    j["lp_value"] = lp_value ? Json(*lp_value) : Json(nullptr);
    j["brute_force"] = brute_force ? Json(*brute_force) : Json(nullptr);
    if (!failures.empty()) j["failures"] = failures;
    if (!error.empty()) j["error"] = error;
    if (wall_ms) j["wall_ms"] = *wall_ms;
    return j;
  }
};

// Worker count: hardware concurrency, capped by REGRET_ROUTE_THREADS.
inline int runner_threads() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("REGRET_ROUTE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

using Experiment = std::function<ExperimentReport()>;

// Runs the jobs on `threads` workers; reports come back in job order. Each job
// builds its own instance, and each worker writes only its own slot.
inline std::vector<ExperimentReport> run_experiments(const std::vector<Experiment>& jobs, int threads,
                                                     bool timing = false) {
  std::vector<ExperimentReport> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        out[i] = jobs[i]();
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
      if (timing)
        out[i].wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  std::vector<std::thread> pool;
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

namespace bench_detail {

inline void absorb(ExperimentReport& rep, const SolveResult& r) {
  for (const auto& d : r.parts)
    for (const auto& c : d.bound_checks) rep.bound_checks.push_back(c);
}

inline void absorb(ExperimentReport& rep, const VerifyReport& v) {
  rep.verified = v.ok;
  rep.failures = v.failures;
  rep.count = v.path_count;
  rep.cost = v.total_regret;
}

inline Instance random_instance(std::uint64_t seed, int customers) {
  return seed % 2 == 0 ? gen_euclidean(customers + 1, seed, 20.0) : gen_random_metric(customers + 1, seed, 12);
}

inline std::string instance_name(std::uint64_t seed, int customers) {
  return std::string(seed % 2 == 0 ? "euclidean" : "random") + "-n" + std::to_string(customers + 1) + "-s" +
         std::to_string(seed);
}

}  // namespace bench_detail

// Named suites: ladder, rvrp, dvrp, mult, krvrp, all.
inline std::vector<Experiment> bench_suite(const std::string& name, std::uint64_t seed) {
  using namespace bench_detail;
  std::vector<Experiment> jobs;
  const bool all = name == "all";
  if (all || name == "ladder") {
    for (int h = 1; h <= 3; ++h)
      jobs.push_back([h] {
        const Ladder lad = gen_ladder(h, 1);
        ExperimentReport rep;
        rep.instance = "ladder-h" + std::to_string(h);
        rep.solver = "rvrp";
        rep.params = {{"regret", 1}};
        const SolveResult r = solve_rvrp(lad.instance, 1);
        rep.lp_value = r.lp_value;
        absorb(rep, r);
        absorb(rep, verify(lad.instance, r.paths, RvrpMode{1, {}}));
        rep.brute_force = brute_force_rvrp(lad.instance, 1);
        return rep;
      });
  }
  if (all || name == "rvrp") {
    for (std::uint64_t i = 0; i < 24; ++i)
      jobs.push_back([s = seed + i] {
        const int m = 4 + static_cast<int>(s % 7);
        const Instance inst = random_instance(s, m);
        const Cost regret = 1 + static_cast<Cost>((s / 2) % 4) * 3;
        ExperimentReport rep;
        rep.instance = instance_name(s, m);
        rep.seed = s;
        rep.solver = "rvrp";
        rep.params = {{"regret", regret}};
        const SolveResult r = solve_rvrp(inst, regret);
        rep.lp_value = r.lp_value;
        absorb(rep, r);
        const double cap = (8.0 + 4.0 * std::sqrt(3.0)) * r.lp_value + 1.0;
        absorb(rep, verify(inst, r.paths, RvrpMode{regret, cap}));
        rep.brute_force = brute_force_rvrp(inst, regret);
        return rep;
      });
  }
  if (all || name == "dvrp") {
    for (std::uint64_t i = 0; i < 12; ++i)
      for (const char* solver : {"dvrp-dp", "dvrp-lp", "dvrp-rings"})
        jobs.push_back([s = seed + i, solver = std::string(solver)] {
          const int m = 4 + static_cast<int>(s % 6);
          const Instance inst = random_instance(s, m);
          const Cost d = inst.max_root_dist() + static_cast<Cost>(s % 3) * inst.max_root_dist() / 2;
          ExperimentReport rep;
          rep.instance = instance_name(s, m);
          rep.seed = s;
          rep.solver = solver;
          rep.params = {{"dist", d}};
          SolveResult r;
          if (solver == "dvrp-dp") {
            r = solve_dvrp_dp(inst, d);
          } else if (solver == "dvrp-lp") {
            DvrpPartition part;
            r = solve_dvrp_lp_round(inst, d, {}, &part);
            rep.lp_value = r.lp_value;
            rep.bound_checks = part.checks;
          } else {
            r = solve_dvrp_rings(inst, d);
          }
          absorb(rep, verify(inst, r.paths, DvrpMode{d, {}}));
          rep.brute_force = brute_force_dvrp(inst, d);
          return rep;
        });
  }
  if (all || name == "mult") {
    for (std::uint64_t i = 0; i < 12; ++i)
      for (const char* ratio : {"1.25", "1.5", "2", "4"})
        jobs.push_back([s = seed + i, text = std::string(ratio)] {
          const int m = 4 + static_cast<int>(s % 6);
          const Instance inst = random_instance(s, m);
          const Ratio q = parse_ratio(text);
          ExperimentReport rep;
          rep.instance = instance_name(s, m);
          rep.seed = s;
          rep.solver = "mult";
          rep.params = {{"ratio", text}};
          const SolveResult r = solve_multiplicative(inst, q);
          absorb(rep, r);
          absorb(rep, verify(inst, r.paths, MultiplicativeMode{q.num, q.den}));
          return rep;
        });
  }
  if (all || name == "krvrp") {
    for (std::uint64_t i = 0; i < 8; ++i)
      for (int k = 1; k <= 3; ++k)
        jobs.push_back([s = seed + i, k] {
          const int m = 4 + static_cast<int>(s % 5);
          const Instance inst = random_instance(s, m);
          ExperimentReport rep;
          rep.instance = instance_name(s, m);
          rep.seed = s;
          rep.solver = "krvrp";
          rep.params = {{"k", k}};
          const KRvrpResult r = solve_krvrp_minmax(inst, k);
          rep.lp_value = r.solve.lp_value;
          absorb(rep, r.solve);
          absorb(rep, verify(inst, r.solve.paths, KPathsMode{k}));
          rep.cost = r.max_regret;
          rep.brute_force = brute_force_krvrp(inst, k);
          return rep;
        });
  }
  detail::check(!jobs.empty(), ErrorKind::kInvalidArgument, "unknown bench suite '" + name + "'");
  return jobs;
}

inline void write_json_lines(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  for (const auto& r : reports) out << r.to_json().dump() << "\n";
}

}  // namespace regret_route
