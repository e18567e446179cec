#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netsolve/consensus.hpp"
#include "netsolve/graph.hpp"
#include "netsolve/harness.hpp"
#include "netsolve/io.hpp"
#include "netsolve/kaczmarz.hpp"
#include "netsolve/linalg.hpp"
#include "netsolve/walks.hpp"

using namespace netsolve;

namespace {

LinearSystem load_system(const std::string& system_path, const std::string& rhs_path) {
  Eigen::MatrixXd A = read_matrix_csv(system_path);
  Eigen::VectorXd b;
  if (!rhs_path.empty()) {
    b = read_vector_csv(rhs_path);
  } else {
    // phi and the projectors only depend on A; make some consistent b
    b = A * Eigen::VectorXd::Ones(A.cols());
  }
  return build_system(A, b);
}

Network load_connected_graph(const std::string& path) {
  Network net = read_edge_list(path);
  if (!net.connected()) throw Disconnected(path + ": graph is not connected");
  return net;
}

struct GenGraphArgs {
  std::string family;
  int n = 0;
  double p = -1.0;
  int k = -1;
  int m = -1;
  std::uint64_t seed = 1;
  std::string out;
};

void run_gen_graph(const GenGraphArgs& a) {
  Network net;
  if (a.family == "er") {
    if (a.p < 0) throw InvalidParams("gen-graph: er needs --p");
    net = gen_er(a.n, a.p, a.seed);
  } else if (a.family == "ws") {
    if (a.k < 0) throw InvalidParams("gen-graph: ws needs --k");
    if (a.p < 0) throw InvalidParams("gen-graph: ws needs --p");
    net = gen_ws(a.n, a.k, a.p, a.seed);
  } else if (a.family == "sf") {
    if (a.m < 0) throw InvalidParams("gen-graph: sf needs --m");
    net = gen_sf(a.n, a.m, a.seed);
  } else if (a.family == "rr") {
    if (a.k < 0) throw InvalidParams("gen-graph: rr needs --k");
    net = gen_rr(a.n, a.k, a.seed);
  } else {
    throw InvalidParams("gen-graph: unknown family '" + a.family + "'");
  }
  write_edge_list(a.out, net);
  std::cout << "wrote " << a.out << " (" << net.size() << " vertices, "
            << net.non_self_edges().size() << " edges)\n";
}

struct SolveArgs {
  std::string system, rhs, graph, out;
  long steps = 500;
  long stride = 10;
  double radius = 1.0;
  std::uint64_t seed = 1;
};

void run_solve(const SolveArgs& a) {
  LinearSystem sys = load_system(a.system, a.rhs);
  Network net = load_connected_graph(a.graph);
  if (net.size() != sys.n())
    throw DimensionMismatch("solve: system has " + std::to_string(sys.n()) +
                            " rows but graph has " + std::to_string(net.size()) + " vertices");
  if (a.steps < 0) throw InvalidParams("solve: --steps must be >= 0");
  if (a.stride < 1) throw InvalidParams("solve: --stride must be >= 1");
  ConvergenceTrace trace = run_consensus(sys, net, a.steps, a.stride, a.radius, a.seed);
  write_text_file(a.out, trace_to_csv(trace));
  const Checkpoint& last = trace.checkpoints.back();
  std::cout << "wrote " << a.out << " (R(" << last.t << ") = " << format_double(last.relative_error)
            << ")\n";
}

struct BoundArgs {
  std::string system, rhs, graph, y0_norms, out;
  int source = 1;  // 1-based at the CLI
  int t = 0;
  std::string mode = "dp";
};

void run_bound(const BoundArgs& a) {
  LinearSystem sys = load_system(a.system, a.rhs);
  Network net = load_connected_graph(a.graph);
  if (net.size() != sys.n())
    throw DimensionMismatch("bound: system has " + std::to_string(sys.n()) +
                            " rows but graph has " + std::to_string(net.size()) + " vertices");
  if (a.source < 1 || a.source > net.size())
    throw IndexOutOfRange("bound: --source must be in 1.." + std::to_string(net.size()));
  if (a.t < 0) throw InvalidParams("bound: --t must be >= 0");

  std::vector<double> y0(static_cast<std::size_t>(net.size()), 1.0);
  if (!a.y0_norms.empty()) {
    Eigen::VectorXd v = read_vector_csv(a.y0_norms);
    if (v.size() != net.size())
      throw DimensionMismatch("bound: --y0-norms must list one value per vertex");
    for (int i = 0; i < v.size(); ++i) {
      if (v(i) < 0) throw InvalidParams("bound: initial error norms must be >= 0");
      y0[static_cast<std::size_t>(i)] = v(i);
    }
  }

  BoundReport rep;
  if (a.mode == "enum")
    rep = bound_bruteforce(sys, net, a.source - 1, a.t, y0);
  else if (a.mode == "dp")
    rep = bound_dp(sys, net, a.source - 1, a.t, y0);
  else
    throw InvalidParams("bound: --mode must be enum or dp");

  nlohmann::json j;
  j["bound"] = rep.bound;
  j["phi"] = rep.phi;
  j["source"] = a.source;
  j["t"] = rep.t;
  j["mode"] = a.mode;
  j["mass_by_order"] = rep.mass_by_order;
  j["bound_by_order"] = rep.bound_by_order;
  write_text_file(a.out, j.dump(2) + "\n");
  std::cout << "wrote " << a.out << " (bound = " << format_double(rep.bound) << ")\n";
}

struct KaczmarzArgs {
  std::string system, rhs, schedule = "cyclic", z0, out;
  int sweeps = 1;
  int length = -1;
  std::uint64_t seed = 1;
};

void run_kaczmarz(const KaczmarzArgs& a) {
  LinearSystem sys = load_system(a.system, a.rhs);
  const int n = sys.n();

  std::vector<int> sched;
  if (a.schedule == "cyclic") {
    if (a.sweeps < 1) throw InvalidParams("kaczmarz: --sweeps must be >= 1");
    sched = cyclic_schedule(n, a.sweeps);
  } else if (a.schedule == "random") {
    int len = a.length > 0 ? a.length : a.sweeps * n;
    sched = random_schedule(n, len, a.seed);
  } else {
    // a file of 1-based row indices, one per line
    Eigen::VectorXd rows = read_vector_csv(a.schedule);
    for (int i = 0; i < rows.size(); ++i) {
      double r = rows(i);
      if (r != std::floor(r) || r < 1 || r > n)
        throw InvalidParams("kaczmarz: schedule entries must be integers in 1.." +
                            std::to_string(n));
      sched.push_back(static_cast<int>(r) - 1);
    }
  }
  if (sched.empty()) throw InvalidParams("kaczmarz: empty schedule");

  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(n);
  if (!a.z0.empty()) {
    z0 = read_vector_csv(a.z0);
    if (z0.size() != n) throw DimensionMismatch("kaczmarz: --z0 must have one value per row");
  }

  SequenceReport rep = verify_sequence_bounds(sys, sched, z0);
  ScheduleRun run = run_schedule(sys, z0, sched);
  std::string csv = "k,error\n";
  for (std::size_t k = 0; k < run.errors.size(); ++k)
    csv += std::to_string(k) + "," + format_double_17(run.errors[k]) + "\n";
  write_text_file(a.out, csv);
  std::cout << "wrote " << a.out << " (schedule length " << sched.size() << ", coverage order "
            << rep.order << ", error " << format_double(rep.initial_error) << " -> "
            << format_double(rep.final_error) << ")\n";
}

struct ExperimentArgs {
  std::string config, out;
  bool paper_scale = false;
  std::uint64_t master_seed = 1;
  bool seed_given = false;
};

void run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  if (a.paper_scale) {
    cfg = paper_scale_config(a.master_seed);
  } else {
    cfg = config_from_file(a.config);
    if (a.seed_given) cfg.master_seed = a.master_seed;
  }
  std::vector<QuantileRow> rows = run_experiment(cfg);
  write_text_file(a.out, results_to_csv(rows));
  write_text_file(a.out + ".meta.json", experiment_metadata(cfg).dump(2) + "\n");
  std::cout << "wrote " << a.out << " and " << a.out << ".meta.json (" << rows.size()
            << " rows)\n";
}

struct StatsArgs {
  std::string graph, out;
};

void run_stats(const StatsArgs& a) {
  Network net = read_edge_list(a.graph);
  DegreeStats st = degree_stats(net);
  nlohmann::json j;
  j["n"] = net.size();
  j["edges"] = net.non_self_edges().size();
  j["connected"] = net.connected();
  if (net.connected())
    j["diameter"] = diameter(net);
  else
    j["diameter"] = nullptr;
  j["mean_degree_including_self_loop"] = st.mean;
  j["mean_degree_excluding_self_loop"] = st.mean - 1.0;
  j["degree_variance"] = st.variance;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [deg, count] : st.histogram) hist[std::to_string(deg)] = count;
  j["degree_histogram"] = hist;
  std::string text = j.dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_text_file(a.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network-based distributed solver for square linear systems"};
  app.require_subcommand(1);

  GenGraphArgs gg;
  CLI::App* gen = app.add_subcommand("gen-graph", "sample a random network and save its edge list");
  gen->add_option("--family", gg.family, "er | ws | sf | rr")->required();
  gen->add_option("--n", gg.n, "vertex count")->required();
  gen->add_option("--p", gg.p, "edge probability (er) or rewiring probability (ws)");
  gen->add_option("--k", gg.k, "lattice degree (ws) or regular degree (rr)");
  gen->add_option("--m", gg.m, "edges per arriving vertex (sf)");
  gen->add_option("--seed", gg.seed, "random seed (default 1)");
  gen->add_option("--out", gg.out, "output edge-list path")->required();

  SolveArgs so;
  CLI::App* solve = app.add_subcommand("solve", "run the distributed iteration and trace errors");
  solve->add_option("--system", so.system, "matrix CSV")->required();
  solve->add_option("--rhs", so.rhs, "right-hand-side CSV")->required();
  solve->add_option("--graph", so.graph, "edge-list file")->required();
  solve->add_option("--steps", so.steps, "iterations to run (default 500)");
  solve->add_option("--stride", so.stride, "checkpoint stride (default 10)");
  solve->add_option("--radius", so.radius, "initial error radius (default 1)");
  solve->add_option("--seed", so.seed, "random seed (default 1)");
  solve->add_option("--out", so.out, "output trace CSV")->required();

  BoundArgs bo;
  CLI::App* bound = app.add_subcommand("bound", "evaluate the walk-sum error bound");
  bound->add_option("--system", bo.system, "matrix CSV")->required();
  bound->add_option("--rhs", bo.rhs, "right-hand-side CSV (optional)");
  bound->add_option("--graph", bo.graph, "edge-list file")->required();
  bound->add_option("--source", bo.source, "agent index, 1-based")->required();
  bound->add_option("--t", bo.t, "walk horizon (bounds the error after t+1 steps)")->required();
  bound->add_option("--mode", bo.mode, "enum | dp (default dp)");
  bound->add_option("--y0-norms", bo.y0_norms, "CSV of initial error norms (default all ones)");
  bound->add_option("--out", bo.out, "output JSON path")->required();

  KaczmarzArgs ka;
  CLI::App* kacz = app.add_subcommand("kaczmarz", "run a row-projection schedule");
  kacz->add_option("--system", ka.system, "matrix CSV")->required();
  kacz->add_option("--rhs", ka.rhs, "right-hand-side CSV")->required();
  kacz->add_option("--schedule", ka.schedule, "cyclic | random | <file of 1-based rows>");
  kacz->add_option("--sweeps", ka.sweeps, "full sweeps for cyclic/random (default 1)");
  kacz->add_option("--length", ka.length, "length for random schedules (overrides --sweeps)");
  kacz->add_option("--z0", ka.z0, "starting vector CSV (default zero)");
  kacz->add_option("--seed", ka.seed, "random seed (default 1)");
  kacz->add_option("--out", ka.out, "output error-series CSV")->required();

  ExperimentArgs ex;
  CLI::App* exp = app.add_subcommand("experiment", "topology ensembles with quantile summaries");
  CLI::Option* cfg_opt = exp->add_option("--config", ex.config, "experiment config JSON");
  CLI::Option* preset_opt =
      exp->add_flag("--paper-scale", ex.paper_scale, "full-size preset (n=100, 2000 steps)");
  CLI::Option* seed_opt = exp->add_option("--master-seed", ex.master_seed, "master seed");
  exp->add_option("--out", ex.out, "output results CSV")->required();
  cfg_opt->excludes(preset_opt);

  StatsArgs st;
  CLI::App* stats = app.add_subcommand("stats", "degree and distance statistics of a graph");
  stats->add_option("--graph", st.graph, "edge-list file")->required();
  stats->add_option("--out", st.out, "output JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      run_gen_graph(gg);
    } else if (solve->parsed()) {
      run_solve(so);
    } else if (bound->parsed()) {
      run_bound(bo);
    } else if (kacz->parsed()) {
      run_kaczmarz(ka);
    } else if (exp->parsed()) {
      if (!ex.paper_scale && ex.config.empty())
        throw InvalidParams("experiment: pass --config or --paper-scale");
      ex.seed_given = seed_opt->count() > 0;
      run_experiment_cmd(ex);
    } else if (stats->parsed()) {
      run_stats(st);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const RuntimeFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
