// Command-line front end: instance generation, solvers, oracles, verification
// and benchmark suites. All files are JSON.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regret_route.hpp"

namespace rr = regret_route;
using rr::Json;

namespace {

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    rr::write_json_file(out_path, j);
  }
}

std::vector<rr::Cost> parse_list(const std::string& text) {
  std::vector<rr::Cost> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::logic_error&) {
      throw rr::Error(rr::ErrorKind::kInvalidArgument, "bad list entry '" + item + "'");
    }
  }
  return out;
}

// Per-node bounds given in input ids, mapped to the merged representatives.
std::vector<rr::Cost> merged_bounds(const rr::Instance& inst, const std::vector<rr::Cost>& raw) {
  std::vector<rr::Cost> out(inst.num_nodes(), 0);
  for (rr::NodeId v = 0; v < inst.num_nodes(); ++v) {
    bool first = true;
    for (rr::NodeId o : inst.origin(v)) {
      rr::detail::check(o >= 0 && static_cast<std::size_t>(o) < raw.size(), rr::ErrorKind::kInvalidArgument,
                        "--bounds needs one entry per input node");
      out[v] = first ? raw[o] : std::min(out[v], raw[o]);
      first = false;
    }
  }
  return out;
}

Json solve_stats(const rr::SolveResult& r) {
  Json parts = Json::array();
  for (const auto& d : r.parts) parts.push_back(rr::diagnostics_to_json(d));
  return Json{{"lp_value", r.lp_value}, {"lp_certified", r.lp_certified}, {"parts", parts}, {"log", r.log}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regret-bounded vehicle routing: solvers, oracles and experiments"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->require_subcommand(1);
  std::string gen_out;
  int ladder_h = 2, ladder_c = 1, gen_n = 8;
  std::uint64_t gen_seed = 1;
  double scale = 100.0;
  rr::Cost max_weight = 20;
  std::string positions = "0,1,2";
  auto* g_ladder = gen->add_subcommand("ladder", "Ladder instance with its fractional cover");
  g_ladder->add_option("--height", ladder_h, "Ladder height")->capture_default_str();
  g_ladder->add_option("--copies", ladder_c, "Number of copies")->capture_default_str();
  auto* g_euc = gen->add_subcommand("euclidean", "Random points in the unit square");
  g_euc->add_option("--n", gen_n, "Node count including the root")->capture_default_str();
  g_euc->add_option("--seed", gen_seed)->capture_default_str();
  g_euc->add_option("--scale", scale)->capture_default_str();
  auto* g_rand = gen->add_subcommand("random", "Random graph metric");
  g_rand->add_option("--n", gen_n, "Node count including the root")->capture_default_str();
  g_rand->add_option("--seed", gen_seed)->capture_default_str();
  g_rand->add_option("--max-weight", max_weight)->capture_default_str();
  auto* g_line = gen->add_subcommand("line", "Points on a line, first is the root");
  g_line->add_option("--positions", positions, "Comma-separated integers")->capture_default_str();
  auto* g_star = gen->add_subcommand("star", "Star metric");
  g_star->add_option("--n", gen_n, "Node count including the root")->capture_default_str();
  for (auto* sc : {g_ladder, g_euc, g_rand, g_line, g_star}) sc->add_option("--out,-o", gen_out, "Output file");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->require_subcommand(1);
  std::string instance_path, solution_out, regret_text = "1", bounds_text;
  rr::Cost dist = 0;
  int k = 1;
  double delta = rr::kDefaultDelta;
  bool verbose = false;
  std::vector<CLI::App*> solvers;
  for (const char* name : {"rvrp", "dvrp-dp", "dvrp-lp", "dvrp-rings", "mult", "nonuniform", "krvrp"}) {
    auto* sc = solve->add_subcommand(name);
    sc->add_option("--instance,-i", instance_path)->required();
    sc->add_option("--out,-o", solution_out, "Solution file");
    sc->add_flag("-v,--verbose", verbose, "Trace column generation and reductions on stderr");
    solvers.push_back(sc);
  }
  solvers[0]->add_option("--regret", regret_text, "Regret bound R")->capture_default_str();
  solvers[0]->add_option("--delta", delta, "Rounding threshold in (0,1)")->capture_default_str();
  for (int i : {1, 2, 3}) solvers[i]->add_option("--dist", dist, "Length bound D")->required();
  solvers[4]->add_option("--regret", regret_text, "Ratio R >= 1, e.g. 1.5 or 3/2")->capture_default_str();
  solvers[5]->add_option("--bounds", bounds_text, "Comma-separated per-node regret bounds")->required();
  solvers[6]->add_option("--k", k, "Number of paths")->capture_default_str();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact reference values for small instances");
  oracle->require_subcommand(1);
  std::string lp_kind = "regret";
  std::vector<CLI::App*> oracles;
  for (const char* name : {"rvrp", "dvrp", "krvrp", "lp"}) {
    auto* sc = oracle->add_subcommand(name);
    sc->add_option("--instance,-i", instance_path)->required();
    oracles.push_back(sc);
  }
  oracles[0]->add_option("--regret", regret_text)->capture_default_str();
  oracles[1]->add_option("--dist", dist)->required();
  oracles[2]->add_option("--k", k)->capture_default_str();
  oracles[3]->add_option("--kind", lp_kind, "regret | length | minsum")->capture_default_str();
  oracles[3]->add_option("--regret", regret_text, "Budget: R, D or k depending on --kind")->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "Check a solution against an instance");
  std::string solution_path, mode = "rvrp";
  ver->add_option("--instance,-i", instance_path)->required();
  ver->add_option("--solution,-s", solution_path)->required();
  ver->add_option("--mode,-m", mode, "rvrp | dvrp | mult | nonuniform | kpaths")->capture_default_str();
  ver->add_option("--regret", regret_text, "R (rvrp) or ratio (mult)")->capture_default_str();
  ver->add_option("--dist", dist);
  ver->add_option("--k", k);
  ver->add_option("--bounds", bounds_text);

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment suite, JSON lines on stdout");
  std::string suite = "all";
  std::uint64_t bench_seed = 1;
  bool timing = false;
  bench->add_option("--suite", suite, "ladder | rvrp | dvrp | mult | krvrp | all")->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();
  bench->add_flag("--timing", timing, "Include wall time (makes output nondeterministic)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (g_ladder->parsed()) {
        const rr::Ladder lad = rr::gen_ladder(ladder_h, ladder_c);
        Json paths = Json::array();
        for (const auto& p : lad.paths) paths.push_back(p.nodes());
        emit(rr::instance_to_json(lad.instance, {{"generator", "ladder"},
                                                 {"h", ladder_h},
                                                 {"c", ladder_c},
                                                 {"fractional", {{"paths", paths}, {"weights", lad.weights}}}}),
             gen_out);
      } else if (g_euc->parsed()) {
        emit(rr::instance_to_json(rr::gen_euclidean(gen_n, gen_seed, scale),
                                  {{"generator", "euclidean"}, {"seed", gen_seed}, {"scale", scale}}),
             gen_out);
      } else if (g_rand->parsed()) {
        emit(rr::instance_to_json(rr::gen_random_metric(gen_n, gen_seed, max_weight),
                                  {{"generator", "random"}, {"seed", gen_seed}, {"max_weight", max_weight}}),
             gen_out);
      } else if (g_line->parsed()) {
        const auto pos = parse_list(positions);
        emit(rr::instance_to_json(rr::gen_line(pos), {{"generator", "line"}, {"positions", pos}}), gen_out);
      } else {
        emit(rr::instance_to_json(rr::gen_star(gen_n - 1), {{"generator", "star"}}), gen_out);
      }
      return 0;
    }

    if (solve->parsed()) {
      const rr::Instance inst = rr::instance_from_json(rr::read_json_file(instance_path));
      rr::SolveOptions opt;
      opt.delta = delta;
      if (verbose) opt.lp.trace = &std::cerr;
      rr::SolveResult r;
      Json extra = Json::object();
      if (solvers[0]->parsed()) {
        r = rr::solve_rvrp(inst, std::stoll(regret_text), opt);
      } else if (solvers[1]->parsed()) {
        rr::DvrpDpState st;
        r = rr::solve_dvrp_dp(inst, dist, opt, &st);
        extra["F"] = st.count;
        extra["choice"] = st.choice;
      } else if (solvers[2]->parsed()) {
        rr::DvrpPartition part;
        r = rr::solve_dvrp_lp_round(inst, dist, opt, &part);
        extra["k_star"] = part.k_star;
        extra["leaders"] = part.leaders;
        extra["parts"] = part.parts;
        extra["mass_shortfalls"] = part.mass_shortfalls;
        extra["checks"] = rr::checks_to_json(part.checks);
      } else if (solvers[3]->parsed()) {
        r = rr::solve_dvrp_rings(inst, dist, opt);
      } else if (solvers[4]->parsed()) {
        r = rr::solve_multiplicative(inst, rr::parse_ratio(regret_text), opt);
      } else if (solvers[5]->parsed()) {
        r = rr::solve_nonuniform(inst, merged_bounds(inst, parse_list(bounds_text)), opt);
      } else {
        const rr::KRvrpResult kr = rr::solve_krvrp_minmax(inst, k, opt);
        r = kr.solve;
        extra["max_regret"] = kr.max_regret;
        extra["total_regret"] = kr.total_regret;
      }
      if (verbose)
        for (const auto& line : r.log) std::cerr << line << "\n";
      Json stats = solve_stats(r);
      stats.update(extra);
      emit(rr::solution_to_json(inst, r.paths, stats), solution_out);
      return 0;
    }

    if (oracle->parsed()) {
      const rr::Instance inst = rr::instance_from_json(rr::read_json_file(instance_path));
      Json out;
      if (oracles[0]->parsed()) {
        out["value"] = rr::brute_force_rvrp(inst, std::stoll(regret_text));
      } else if (oracles[1]->parsed()) {
        out["value"] = rr::brute_force_dvrp(inst, dist);
      } else if (oracles[2]->parsed()) {
        out["value"] = rr::brute_force_krvrp(inst, k);
      } else {
        rr::LpOracleKind kind = rr::LpOracleKind::kRegret;
        if (lp_kind == "length") kind = rr::LpOracleKind::kLength;
        else if (lp_kind == "minsum") kind = rr::LpOracleKind::kMinSum;
        else if (lp_kind != "regret") throw rr::Error(rr::ErrorKind::kInvalidArgument, "unknown LP kind " + lp_kind);
        const auto res = rr::brute_force_lp(inst, kind, std::stoll(regret_text));
        out["value"] = res.as_double();
        out["exact"] = res.value.get_str();
        out["columns"] = res.columns;
      }
      std::cout << out.dump() << "\n";
      return 0;
    }

    if (ver->parsed()) {
      const rr::RawInstance raw = rr::raw_instance_from_json(rr::read_json_file(instance_path));
      const auto paths = rr::paths_from_json(rr::read_json_file(solution_path));
      rr::VerifyMode vm;
      if (mode == "rvrp") vm = rr::RvrpMode{std::stoll(regret_text), {}};
      else if (mode == "dvrp") vm = rr::DvrpMode{dist, {}};
      else if (mode == "mult") {
        const rr::Ratio q = rr::parse_ratio(regret_text);
        vm = rr::MultiplicativeMode{q.num, q.den};
      } else if (mode == "nonuniform") vm = rr::NonuniformMode{parse_list(bounds_text)};
      else if (mode == "kpaths") vm = rr::KPathsMode{k};
      else throw rr::Error(rr::ErrorKind::kInvalidArgument, "unknown mode " + mode);
      const rr::VerifyReport rep = rr::verify(raw.dist, raw.root, paths, vm);
      std::cout << Json{{"ok", rep.ok},
                        {"failures", rep.failures},
                        {"path_count", rep.path_count},
                        {"max_regret", rep.max_regret},
                        {"total_regret", rep.total_regret},
                        {"max_length", rep.max_length}}
                       .dump()
                << "\n";
      return rep.ok ? 0 : 1;
    }

    if (bench->parsed()) {
      const auto reports = rr::run_experiments(rr::bench_suite(suite, bench_seed), rr::runner_threads(), timing);
      rr::write_json_lines(std::cout, reports);
      for (const auto& r : reports)
        if (!r.pass()) return 1;
      return 0;
    }
  } catch (const rr::Error& e) {
    std::cerr << "error [" << rr::to_string(e.kind()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
