#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>

#include "nlia/oracle.hpp"
#include "nlia/smtlib.hpp"

using namespace nlia;
using nlohmann::json;

namespace {

struct Config {
  std::string mode = "smt";
  std::string strategy = "maxsmt";
  double timeout = 60.0;
  std::string alpha = "2";
  std::string beta = "10";
  int radius = 2;
  bool ood_clauses = true;
  bool no_correction = false;
  int seed = 0;
  bool stats = false;
  std::optional<std::pair<long, long>> oracle_box;
};

Rational parse_rat(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

Strategy make_strategy(const Config& cfg) {
  Strategy st;
  static const std::map<std::string, StrategyKind> kinds = {
      {"cores", StrategyKind::Cores},
      {"maxsmt", StrategyKind::MaxSmtModels},
      {"omt", StrategyKind::OmtModels},
      {"jump", StrategyKind::JumpNoCores},
      {"jump-cores", StrategyKind::JumpCores},
  };
  st.kind = kinds.at(cfg.strategy);
  st.relax.alpha = parse_rat(cfg.alpha);
  st.relax.beta = parse_rat(cfg.beta);
  st.relax.correction = !cfg.no_correction;
  st.radius = cfg.radius;
  st.ood_clauses = cfg.ood_clauses;
  return st;
}

struct RunOutcome {
  int exit_code = 2;
  std::string status = "unknown";
  std::optional<Rational> objective;
  long time_ms = 0;
  int iterations = 0;
  std::string text;  // result + model for stdout
  NiaStats stats;
};

int status_code(LiaStatus s) {
  switch (s) {
    case LiaStatus::Sat: return 0;
    case LiaStatus::Unsat: return 1;
    default: return 2;
  }
}

std::string status_word(LiaStatus s) {
  switch (s) {
    case LiaStatus::Sat: return "sat";
    case LiaStatus::Unsat: return "unsat";
    default: return "unknown";
  }
}

RunOutcome run_file(const std::string& path, const Config& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();

  Strategy st = make_strategy(cfg);
  Budget budget = Budget::with_seconds(cfg.timeout);
  auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;

  if (cfg.mode == "ea") {
    ParsedEa s = parse_ea_script(text);
    EaResult r = solve_ea(s.prob, st, budget);
    out.exit_code = status_code(r.status);
    out.status = status_word(r.status);
    out.objective = r.objective;
    out.stats = r.stats;
    out.text = print_result(r.status, *s.vars,
                            r.status == LiaStatus::Sat ? &r.model : nullptr,
                            r.objective);
  } else {
    ParsedScript s = parse_script(text);
    NiaFormula f = s.formula();
    NiaResult r = cfg.mode == "maxsmt" ? solve_maxsmt(f, st, budget)
                                       : solve_smt(f, st, budget);
    out.exit_code = status_code(r.status);
    out.status = status_word(r.status);
    out.objective = r.objective;
    out.stats = r.stats;
    out.text = print_result(r.status, *s.vars,
                            r.status == LiaStatus::Sat ? &r.model : nullptr,
                            r.objective);

    if (cfg.oracle_box) {
      std::vector<VarId> box_vars;
      for (VarId v = 0; v < s.vars->size(); ++v)
        if (s.vars->info(v).origin == VarOrigin::Original && s.vars->is_int(v))
          box_vars.push_back(v);
      OracleResult o = brute_force_nia(s.clauses, box_vars,
                                       Integer(cfg.oracle_box->first),
                                       Integer(cfg.oracle_box->second));
      bool mismatch = false;
      if (o.found && r.status == LiaStatus::Unsat) mismatch = true;
      if (cfg.mode == "maxsmt" && o.found && r.status == LiaStatus::Sat &&
          r.objective && *r.objective != o.cost.second)
        mismatch = true;
      std::cerr << "; oracle: "
                << (o.found ? "sat, cost " + rat_str(o.cost.second)
                            : "no model in box")
                << (mismatch ? " MISMATCH" : "") << "\n";
      if (mismatch) out.exit_code = 4;
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  out.time_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  out.iterations = static_cast<int>(out.stats.iterations.size());
  return out;
}

void print_stats(const RunOutcome& out) {
  std::cerr << "; iterations:        " << out.iterations << "\n"
            << "; optimizer calls:   " << out.stats.optimizer_calls << "\n"
            << "; case clauses:      " << out.stats.case_clauses_added
            << " added, " << out.stats.case_clauses_final << " final\n"
            << "; wall time:         " << out.time_ms << " ms\n";
  for (auto& it : out.stats.iterations) {
    std::cerr << ";   iter " << it.index << ": cost ("
              << rat_str(it.optimizer_cost.first) << ", "
              << rat_str(it.optimizer_cost.second) << ")";
    if (it.used_omt) std::cerr << ", distance " << rat_str(it.omt_distance);
    if (it.blocking_literals)
      std::cerr << ", blocking clause of " << it.blocking_literals;
    std::cerr << "\n";
  }
}

int run_bench(const std::string& dir, const Config& cfg) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    std::cerr << "error: " << dir << " is not a directory\n";
    return 3;
  }
  std::vector<fs::path> files;
  for (auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".smt2")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::map<std::string, int> counts;
  long total_ms = 0;
  for (auto& p : files) {
    json rec;
    rec["file"] = p.filename().string();
    try {
      RunOutcome out = run_file(p.string(), cfg);
      rec["status"] = out.status;
      if (out.objective) rec["objective"] = rat_str(*out.objective);
      rec["time_ms"] = out.time_ms;
      rec["iterations"] = out.iterations;
      ++counts[out.status];
      total_ms += out.time_ms;
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping " << p << ": " << e.what() << "\n";
      continue;
    }
    std::cout << rec.dump() << "\n";
  }

  std::cerr << "\n  status   count\n  ------   -----\n";
  for (auto& [st, n] : counts)
    std::cerr << "  " << st << std::string(st.size() < 8 ? 8 - st.size() : 1, ' ')
              << " " << n << "\n";
  std::cerr << "  total time " << total_ms << " ms over " << files.size()
            << " files\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SMT and Max-SMT solving for non-linear integer arithmetic by "
               "case-splitting linearization, with an exists-forall mode"};
  Config cfg;
  std::string input;
  std::string bench_dir;
  std::vector<long> box;

  app.add_option("file", input, "input .smt2 script");
  app.add_option("--mode", cfg.mode, "smt | maxsmt | ea")
      ->check(CLI::IsMember({"smt", "maxsmt", "ea"}));
  app.add_option("--strategy", cfg.strategy,
                 "cores | maxsmt | omt | jump | jump-cores")
      ->check(CLI::IsMember({"cores", "maxsmt", "omt", "jump", "jump-cores"}));
  app.add_option("--timeout", cfg.timeout, "seconds, > 0")
      ->check(CLI::PositiveNumber);
  app.add_option("--alpha", cfg.alpha, "domain relaxation factor");
  app.add_option("--beta", cfg.beta, "relaxation increment cap");
  app.add_option("--radius", cfg.radius, "jump distance around the best model")
      ->check(CLI::PositiveNumber);
  app.add_flag("--ood-clauses,!--no-ood-clauses", cfg.ood_clauses,
               "out-of-domain strengthening for squares");
  app.add_flag("--no-correction", cfg.no_correction,
               "disable the occurrence correction factor");
  app.add_option("--seed", cfg.seed, "reserved; the search is deterministic");
  app.add_flag("--stats", cfg.stats, "print search statistics to stderr");
  app.add_option("--bench", bench_dir, "run every .smt2 file in a directory");
  app.add_option("--oracle-box", box,
                 "cross-check against exhaustive enumeration over [lo, hi]")
      ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  if (!box.empty()) cfg.oracle_box = {box[0], box[1]};

  try {
    if (!bench_dir.empty()) return run_bench(bench_dir, cfg);
    if (input.empty()) {
      std::cerr << "error: no input file\n";
      return 3;
    }
    RunOutcome out = run_file(input, cfg);
    std::cout << out.text << "\n";
    if (cfg.stats) print_stats(out);
    return out.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
