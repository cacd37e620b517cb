#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "focpc/errors.hpp"
#include "focpc/fde_solver.hpp"
#include "focpc/pmp.hpp"
#include "focpc/resource_example.hpp"
#include "focpc/special_functions.hpp"
#include "focpc/validation.hpp"
#include "json.hpp"

namespace {

enum class LogLevel { off = 0, info = 1, debug = 2 };

struct Log {
  LogLevel level = LogLevel::off;

  static Log from_env() {
    Log log;
    const char* raw = std::getenv("FOCPC_LOG");
    if (raw == nullptr) return log;
    const std::string v(raw);
    if (v.empty() || v == "off") return log;
    if (v == "info") {
      log.level = LogLevel::info;
    } else if (v == "debug") {
      log.level = LogLevel::debug;
    } else {
      std::cerr << "warning: unknown FOCPC_LOG value '" << v
                << "', logging stays off\n";
    }
    return log;
  }

  void info(const std::string& msg) const {
    if (level >= LogLevel::info) std::cerr << "[info] " << msg << "\n";
  }
  void debug(const std::string& msg) const {
    if (level >= LogLevel::debug) std::cerr << "[debug] " << msg << "\n";
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

struct RunConfig {
  std::string problem = "resource";
  double alpha = 0.5;
  double T = 2.0;
  double x0 = 1.0;
  std::size_t n_steps = 2000;
  std::size_t max_iters = 500;
  double tol = 1e-6;
  double relaxation = 0.5;
  std::string out = "solution.csv";
};

// CSV rows cover the solved (Mayer-form) system: time, control components,
// state components, adjoint components. LF line endings, 15 significant
// digits, written in binary mode so reruns are byte-identical.
void write_csv(const std::string& path, const focpc::SweepResult& res) {
  const focpc::TimeGrid& grid = res.state.grid();
  const std::size_t m = res.control.dim();
  const std::size_t d = res.state.dim();

  std::string text = "t";
  if (m == 1) {
    text += ",u";
  } else {
    for (std::size_t i = 1; i <= m; ++i) text += ",u_" + std::to_string(i);
  }
  for (std::size_t i = 1; i <= d; ++i) text += ",x_" + std::to_string(i);
  for (std::size_t i = 1; i <= d; ++i) text += ",p_" + std::to_string(i);
  text += "\n";

  for (std::size_t k = 0; k <= grid.n_steps; ++k) {
    text += fmt(grid.node(k));
    for (std::size_t i = 0; i < m; ++i) text += "," + fmt(res.control.at(k, i));
    for (std::size_t i = 0; i < d; ++i) text += "," + fmt(res.state.at(k, i));
    for (std::size_t i = 0; i < d; ++i) text += "," + fmt(res.adjoint.at(k, i));
    text += "\n";
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  file << text;
  if (!file) throw std::invalid_argument("failed writing output file: " + path);
}

std::string fanout_path(const std::string& base, const std::string& token) {
  const std::size_t slash = base.find_last_of('/');
  const std::size_t dot = base.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + "_alpha_" + token;
  return base.substr(0, dot) + "_alpha_" + token + base.substr(dot);
}

int solve_one(const RunConfig& cfg, const Log& log) {
  if (cfg.problem != "resource")
    throw std::invalid_argument("unknown problem '" + cfg.problem +
                                "'; available: resource");

  const focpc::ResourceParams params(focpc::FractionalOrder(cfg.alpha), cfg.T,
                                     cfg.x0);
  const focpc::ProblemSpec running = focpc::make_problem_spec(params);
  const focpc::ProblemSpec mayer = focpc::reduce_to_mayer(running);
  const focpc::TimeGrid grid(mayer.t0, mayer.tf, cfg.n_steps);

  log.info("solve: problem=" + cfg.problem + " alpha=" + fmt(cfg.alpha) +
           " T=" + fmt(cfg.T) + " x0=" + fmt(cfg.x0) +
           " n=" + std::to_string(cfg.n_steps));

  focpc::SweepOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.tol = cfg.tol;
  opts.relaxation = cfg.relaxation;
  const focpc::SweepResult res = focpc::forward_backward_sweep(mayer, grid, opts);

  for (std::size_t i = 0; i < res.change_history.size(); ++i)
    log.debug("iteration " + std::to_string(i + 1) +
              ": control change = " + fmt(res.change_history[i]));

  write_csv(cfg.out, res);

  std::cout << "cost = " << fmt(res.cost) << "\n"
            << "iterations = " << res.iterations << "\n"
            << "converged = " << (res.converged ? "yes" : "no") << "\n";

  const double ts = focpc::switch_time(params);
  std::size_t switch_node = grid.n_nodes();
  for (std::size_t k = 0; k <= grid.n_steps; ++k)
    if (res.control.scalar(k) < 0.5) {
      switch_node = k;
      break;
    }
  std::cout << "analytic switch t* = " << fmt(ts) << "\n";
  if (switch_node == grid.n_nodes()) {
    std::cout << "detected switch = none (control never drops below 0.5)\n";
  } else {
    std::cout << "detected switch t = " << fmt(grid.node(switch_node))
              << " (node " << switch_node << ")\n";
  }
  std::cout << "wrote " << cfg.out << "\n";

  if (!res.converged) {
    std::cerr << "error: sweep did not converge within "
              << std::to_string(cfg.max_iters)
              << " iterations (last control change = "
              << fmt(res.control_change_norm) << ")\n";
    return 2;
  }
  return 0;
}

// JSON config file: same keys as the solve flags; explicit flags win.
void merge_config(const CLI::App& solve, const std::string& path,
                  RunConfig& cfg, std::string& alphas_token) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("config file " + path + ": expected a JSON object");

  auto taken = [&solve](const std::string& flag) {
    return solve.count("--" + flag) > 0;
  };

  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "problem") {
        if (!taken("problem")) cfg.problem = value.get<std::string>();
      } else if (key == "alpha") {
        if (!taken("alpha")) cfg.alpha = value.get<double>();
      } else if (key == "T") {
        if (!taken("T")) cfg.T = value.get<double>();
      } else if (key == "x0") {
        if (!taken("x0")) cfg.x0 = value.get<double>();
      } else if (key == "n") {
        if (!taken("n")) cfg.n_steps = value.get<std::size_t>();
      } else if (key == "max_iters") {
        if (!taken("max-iters")) cfg.max_iters = value.get<std::size_t>();
      } else if (key == "tol") {
        if (!taken("tol")) cfg.tol = value.get<double>();
      } else if (key == "relaxation") {
        if (!taken("relaxation")) cfg.relaxation = value.get<double>();
      } else if (key == "out") {
        if (!taken("out")) cfg.out = value.get<std::string>();
      } else if (key == "alphas") {
        if (!taken("alphas")) {
          std::string joined;
          if (value.is_string()) {
            joined = value.get<std::string>();
          } else if (value.is_array()) {
            for (const auto& item : value) {
              if (!joined.empty()) joined += ",";
              joined += item.is_string() ? item.get<std::string>()
                                         : fmt(item.get<double>());
            }
          } else {
            throw std::invalid_argument("expected string or array");
          }
          alphas_token = joined;
        }
      } else {
        throw std::invalid_argument("config file " + path + ": unknown key '" +
                                    key + "'");
      }
    } catch (const nlohmann::json::type_error& e) {
      throw std::invalid_argument("config file " + path + ": key '" + key +
                                  "': " + e.what());
    }
  }
}

std::vector<std::string> split_tokens(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty())
      throw std::invalid_argument("empty entry in alpha list '" + csv + "'");
    out.push_back(tok);
  }
  if (out.empty()) throw std::invalid_argument("empty alpha list");
  return out;
}

int cmd_solve(const CLI::App& solve, RunConfig cfg, const std::string& config_path,
              std::string alphas_token, const Log& log) {
  if (!config_path.empty()) merge_config(solve, config_path, cfg, alphas_token);

  if (alphas_token.empty()) return solve_one(cfg, log);

  // Fan-out: one independent solve per alpha, output files named by the
  // literal list entry. Worst exit status wins.
  int status = 0;
  for (const std::string& token : split_tokens(alphas_token)) {
    RunConfig one = cfg;
    try {
      one.alpha = std::stod(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad alpha value '" + token + "' in list");
    }
    one.out = fanout_path(cfg.out, token);
    std::cout << "--- alpha = " << token << " ---\n";
    status = std::max(status, solve_one(one, log));
  }
  return status;
}

int cmd_ml(double alpha, double beta, double z) {
  const double value = focpc::mittag_leffler({alpha, beta, 1e-14, 200}, z);
  std::cout << fmt(value) << "\n";
  return 0;
}

int cmd_switch_time(double alpha, double T) {
  const focpc::ResourceParams params(focpc::FractionalOrder(alpha), T, 1.0);
  std::cout << fmt(focpc::switch_time(params)) << "\n";
  return 0;
}

int cmd_validate(const std::string& only) {
  const std::vector<focpc::PropertyResult> results = focpc::run_validation(only);
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    std::printf("[%s] %s: %s (measured %.6g, bound %.6g)\n",
                r.pass ? "PASS" : "FAIL", r.family.c_str(), r.name.c_str(),
                r.measured, r.bound);
  }
  std::printf("%zu/%zu properties passed\n", results.size() - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  const Log log = Log::from_env();

  CLI::App app{"focpc: fractional optimal control solver and toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::string alphas_token;
  CLI::App* solve = app.add_subcommand(
      "solve", "solve an optimal control problem and write the trajectory CSV");
  solve->add_option("--problem", cfg.problem, "problem name (registry: resource)")
      ->capture_default_str();
  solve->add_option("--alpha", cfg.alpha, "fractional order in (0, 1]")
      ->capture_default_str();
  solve->add_option("--alphas", alphas_token,
                    "comma-separated fractional orders; fans out one solve per "
                    "value with per-value output files (overrides --alpha)");
  solve->add_option("--T", cfg.T, "horizon length (time units)")
      ->capture_default_str();
  solve->add_option("--x0", cfg.x0, "initial state (resource units)")
      ->capture_default_str();
  solve->add_option("--n", cfg.n_steps, "number of grid cells")
      ->capture_default_str();
  solve->add_option("--max-iters", cfg.max_iters, "sweep iteration budget")
      ->capture_default_str();
  solve->add_option("--tol", cfg.tol, "sweep stopping tolerance (sup-norm control change)")
      ->capture_default_str();
  solve->add_option("--relaxation", cfg.relaxation, "control update damping in [0, 1)")
      ->capture_default_str();
  solve->add_option("--out", cfg.out, "output CSV path")->capture_default_str();
  solve->add_option("--config", config_path,
                    "JSON config file with the same keys; explicit flags win");

  double ml_alpha = 1.0, ml_beta = 1.0, ml_z = 0.0;
  CLI::App* ml = app.add_subcommand(
      "ml", "evaluate the two-parameter Mittag-Leffler function E_{alpha,beta}(z)");
  ml->add_option("--alpha", ml_alpha, "first parameter, >= 0")
      ->capture_default_str();
  ml->add_option("--beta", ml_beta, "second parameter, >= 0")
      ->capture_default_str();
  ml->add_option("--z", ml_z, "argument, |z| <= 50")->required();

  double st_alpha = 0.5, st_T = 2.0;
  CLI::App* st = app.add_subcommand(
      "switch-time", "analytic bang-bang switch time of the resource problem");
  st->add_option("--alpha", st_alpha, "fractional order in (0, 1]")
      ->capture_default_str();
  st->add_option("--T", st_T, "horizon length (time units)")
      ->capture_default_str();

  std::string only;
  CLI::App* validate = app.add_subcommand(
      "validate", "run the numeric property suite and report residuals");
  validate->add_option(
      "--only", only,
      "restrict to one family: ml, composition, ibp, gronwall, meanvalue, "
      "taylor, linearity, convergence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed())
      return cmd_solve(*solve, cfg, config_path, alphas_token, log);
    if (ml->parsed()) return cmd_ml(ml_alpha, ml_beta, ml_z);
    if (st->parsed()) return cmd_switch_time(st_alpha, st_T);
    if (validate->parsed()) return cmd_validate(only);
  } catch (const focpc::divergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const focpc::non_convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
