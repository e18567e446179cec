#include "netsolve/harness.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "netsolve/io.hpp"
#include "netsolve/rng.hpp"

namespace netsolve {

std::string FamilySpec::params_text() const {
  if (family == "er") return "p=" + format_double(p);
  if (family == "ws") return "k=" + std::to_string(k) + ";p=" + format_double(p);
  if (family == "sf") return "m=" + std::to_string(m);
  if (family == "rr") return "k=" + std::to_string(k);
  return "";
}

std::string FamilySpec::display_label() const {
  if (!label.empty()) return label;
  return family + "(" + params_text() + ")";
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw InvalidParams("config: n must be >= 2");
  if (cfg.trials < 1) throw InvalidParams("config: trials must be >= 1");
  if (cfg.t_max < 0) throw InvalidParams("config: t_max must be >= 0");
  if (!(cfg.radius > 0.0)) throw InvalidParams("config: radius must be > 0");
  if (!(cfg.system.condition_cap > 1.0)) throw InvalidParams("config: condition_cap must be > 1");
  if (cfg.system.distribution != "uniform" && cfg.system.distribution != "orthonormal")
    throw InvalidParams("config: unknown distribution '" + cfg.system.distribution + "'");
  if (cfg.families.empty()) throw InvalidParams("config: no families listed");
  if (cfg.checkpoints.empty()) throw InvalidParams("config: no checkpoints");
  for (long t : cfg.checkpoints)
    if (t < 0 || t > cfg.t_max)
      throw InvalidParams("config: checkpoint " + std::to_string(t) + " outside [0, " +
                          std::to_string(cfg.t_max) + "]");
  for (const auto& fam : cfg.families) {
    const std::string where = "config group '" + fam.display_label() + "': ";
    if (fam.family == "er") {
      if (!(fam.p > 0.0) || fam.p > 1.0) throw InvalidParams(where + "p must be in (0, 1]");
    } else if (fam.family == "ws") {
      if (fam.k < 2 || fam.k % 2 != 0 || fam.k >= cfg.n)
        throw InvalidParams(where + "k must be even, 2 <= k < n");
      if (fam.p < 0.0 || fam.p > 1.0) throw InvalidParams(where + "p must be in [0, 1]");
    } else if (fam.family == "sf") {
      if (fam.m < 1 || fam.m >= cfg.n) throw InvalidParams(where + "m must satisfy 1 <= m < n");
    } else if (fam.family == "rr") {
      if (fam.k < 1 || fam.k >= cfg.n) throw InvalidParams(where + "k must satisfy 1 <= k < n");
      if ((static_cast<std::int64_t>(cfg.n) * fam.k) % 2 != 0)
        throw InvalidParams(where + "n*k must be even");
    } else {
      throw InvalidParams(where + "unknown family '" + fam.family + "'");
    }
  }
}

namespace {

std::vector<long> default_checkpoints(long t_max) {
  std::vector<long> marks;
  for (long t = 0; t <= t_max; t += 10) marks.push_back(t);
  if (marks.back() != t_max) marks.push_back(t_max);
  return marks;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.n = j.at("n").get<int>();
    cfg.trials = j.value("trials", cfg.trials);
    cfg.t_max = j.value("t_max", cfg.t_max);
    cfg.radius = j.value("radius", cfg.radius);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    if (j.contains("system")) {
      const auto& s = j.at("system");
      cfg.system.distribution = s.value("distribution", cfg.system.distribution);
      cfg.system.condition_cap = s.value("condition_cap", cfg.system.condition_cap);
    }
    if (j.contains("checkpoints"))
      cfg.checkpoints = j.at("checkpoints").get<std::vector<long>>();
    else
      cfg.checkpoints = default_checkpoints(cfg.t_max);
    for (const auto& f : j.at("families")) {
      FamilySpec fam;
      fam.family = f.at("family").get<std::string>();
      fam.label = f.value("label", std::string{});
      fam.p = f.value("p", 0.0);
      fam.k = f.value("k", 0);
      fam.m = f.value("m", 0);
      cfg.families.push_back(std::move(fam));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams(std::string("config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  j["t_max"] = cfg.t_max;
  j["radius"] = cfg.radius;
  j["master_seed"] = cfg.master_seed;
  j["system"] = {{"distribution", cfg.system.distribution},
                 {"condition_cap", cfg.system.condition_cap}};
  j["checkpoints"] = cfg.checkpoints;
  j["families"] = nlohmann::json::array();
  for (const auto& fam : cfg.families) {
    nlohmann::json f;
    f["family"] = fam.family;
    f["label"] = fam.display_label();
    if (fam.family == "er") f["p"] = fam.p;
    if (fam.family == "ws") {
      f["k"] = fam.k;
      f["p"] = fam.p;
    }
    if (fam.family == "sf") f["m"] = fam.m;
    if (fam.family == "rr") f["k"] = fam.k;
    j["families"].push_back(std::move(f));
  }
  return j;
}

ExperimentConfig config_from_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError(path + ": " + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig paper_scale_config(std::uint64_t master_seed) {
  ExperimentConfig cfg;
  cfg.n = 100;
  cfg.trials = 30;
  cfg.t_max = 2000;
  cfg.radius = 1.0;
  cfg.master_seed = master_seed;
  std::vector<long> marks;
  for (long t = 0; t <= cfg.t_max; t += 100) marks.push_back(t);
  cfg.checkpoints = marks;
  for (double p : {0.01, 0.1, 0.5})
    cfg.families.push_back({"ws", "", p, 4, 0});
  for (int k : {4, 8, 12}) {
    cfg.families.push_back({"er", "", static_cast<double>(k) / (cfg.n - 1), 0, 0});
    cfg.families.push_back({"rr", "", 0.0, k, 0});
    cfg.families.push_back({"sf", "", 0.0, 0, k / 2});
  }
  return cfg;
}

LinearSystem gen_random_system(int n, const SystemSpec& spec, std::uint64_t seed) {
  if (n < 1) throw InvalidParams("gen_random_system: n must be >= 1");
  if (spec.distribution != "uniform" && spec.distribution != "orthonormal")
    throw InvalidParams("gen_random_system: unknown distribution '" + spec.distribution + "'");
  if (!(spec.condition_cap > 0.0))
    throw InvalidParams("gen_random_system: condition cap must be > 0");
  Rng rng(seed);
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd x(n);
  if (spec.distribution == "orthonormal") {
    // Haar-ish orthogonal rows via QR of a Gaussian draw: kappa = 1, so the
    // condition cap is always met and convergence depends on topology alone.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    A = qr.householderQ();
    for (int i = 0; i < n; ++i) x(i) = rng.uniform(-1.0, 1.0);
    return build_system(A, A * x);
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < n; ++i) x(i) = rng.uniform(-1.0, 1.0);
    LinearSystem sys;
    try {
      sys = build_system(A, A * x);
    } catch (const SingularMatrix&) {
      continue;
    }
    if (condition_numbers(sys).kappa <= spec.condition_cap) return sys;
  }
  throw GenerationFailed("gen_random_system: no draw met condition cap " +
                         format_double(spec.condition_cap) + " in 1000 attempts");
}

QuantileStats quantiles(std::vector<double> samples) {
  if (samples.empty()) throw EmptyInput("quantiles: no samples");
  std::sort(samples.begin(), samples.end());
  const auto m = samples.size();
  auto interp = [&](double q) {
    const double pos = q * static_cast<double>(m - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, m - 1);
    const double frac = pos - static_cast<double>(lo);
    return samples[lo] + frac * (samples[hi] - samples[lo]);
  };
  QuantileStats st;
  st.min = samples.front();
  st.q1 = interp(0.25);
  st.median = interp(0.5);
  st.q3 = interp(0.75);
  st.max = samples.back();
  return st;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t group, std::uint64_t trial,
                          std::uint64_t purpose) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ splitmix64(group));
  h = splitmix64(h ^ splitmix64(trial));
  h = splitmix64(h ^ splitmix64(purpose));
  return h;
}

Network gen_family(const FamilySpec& fam, int n, std::uint64_t seed) {
  if (fam.family == "er") return gen_er(n, fam.p, seed);
  if (fam.family == "ws") return gen_ws(n, fam.k, fam.p, seed);
  if (fam.family == "sf") return gen_sf(n, fam.m, seed);
  if (fam.family == "rr") return gen_rr(n, fam.k, seed);
  throw InvalidParams("gen_family: unknown family '" + fam.family + "'");
}

namespace {

// purpose tags for derive_seed
constexpr std::uint64_t kSeedGraph = 1;
constexpr std::uint64_t kSeedSystem = 2;
constexpr std::uint64_t kSeedInit = 3;

}  // namespace

std::vector<QuantileRow> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<long> marks = cfg.checkpoints;
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  const int groups = static_cast<int>(cfg.families.size());
  const int trials = cfg.trials;
  const int cells = groups * trials;
  // R(t) per checkpoint for each (group, trial) cell; written once per cell,
  // so the parallel loop is race-free and the fold below is deterministic
  std::vector<std::vector<double>> relerr(static_cast<std::size_t>(cells));
  std::vector<std::string> failures(static_cast<std::size_t>(cells));

#pragma omp parallel for schedule(dynamic)
  for (int cell = 0; cell < cells; ++cell) {
    const int g = cell / trials;
    const int tr = cell % trials;
    try {
      const auto& fam = cfg.families[static_cast<std::size_t>(g)];
      const Network net = gen_family(
          fam, cfg.n, derive_seed(cfg.master_seed, static_cast<std::uint64_t>(g),
                                  static_cast<std::uint64_t>(tr), kSeedGraph));
      // systems and initial states are keyed by trial only, so every group
      // solves the same problem instances: cross-group comparisons are paired
      const LinearSystem sys = gen_random_system(
          cfg.n, cfg.system, derive_seed(cfg.master_seed, 0,
                                         static_cast<std::uint64_t>(tr), kSeedSystem));
      const ConvergenceTrace trace = run_consensus(
          sys, net, marks, cfg.radius, derive_seed(cfg.master_seed, 0,
                                                   static_cast<std::uint64_t>(tr), kSeedInit));
      auto& out = relerr[static_cast<std::size_t>(cell)];
      out.reserve(trace.checkpoints.size());
      for (const auto& cp : trace.checkpoints) out.push_back(cp.relative_error);
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(cell)] = e.what();
    }
  }

  for (int cell = 0; cell < cells; ++cell)
    if (!failures[static_cast<std::size_t>(cell)].empty())
      throw GenerationFailed("group '" +
                             cfg.families[static_cast<std::size_t>(cell / trials)].display_label() +
                             "' trial " + std::to_string(cell % trials) + ": " +
                             failures[static_cast<std::size_t>(cell)]);

  std::vector<QuantileRow> rows;
  rows.reserve(static_cast<std::size_t>(groups) * marks.size());
  std::vector<double> samples(static_cast<std::size_t>(trials));
  for (int g = 0; g < groups; ++g) {
    const auto& fam = cfg.families[static_cast<std::size_t>(g)];
    for (std::size_t c = 0; c < marks.size(); ++c) {
      for (int tr = 0; tr < trials; ++tr)
        samples[static_cast<std::size_t>(tr)] = relerr[static_cast<std::size_t>(g * trials + tr)][c];
      QuantileRow row;
      row.group = fam.display_label();
      row.family = fam.family;
      row.params = fam.params_text();
      row.t = marks[c];
      row.stats = quantiles(samples);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string results_to_csv(const std::vector<QuantileRow>& rows) {
  std::string out = "group,family,params,t,min,q1,median,q3,max\n";
  for (const auto& r : rows) {
    out += r.group + "," + r.family + "," + r.params + "," + std::to_string(r.t);
    out += "," + format_double_17(r.stats.min);
    out += "," + format_double_17(r.stats.q1);
    out += "," + format_double_17(r.stats.median);
    out += "," + format_double_17(r.stats.q3);
    out += "," + format_double_17(r.stats.max);
    out += "\n";
  }
  return out;
}

nlohmann::json experiment_metadata(const ExperimentConfig& cfg) {
  nlohmann::json meta;
  meta["config"] = config_to_json(cfg);
  meta["whiskers"] = "min-max";
  meta["quantile_method"] = "linear interpolation between order statistics";
  meta["initial_radius"] = cfg.radius;
  // degree bookkeeping: d_i counts the self-loop, so nominal mean degree is
  // reported both ways
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& fam : cfg.families) {
    double excl = 0.0;
    bool exact = true;
    if (fam.family == "er") {
      excl = fam.p * (cfg.n - 1);
      exact = false;
    }
    if (fam.family == "ws") excl = fam.k;
    if (fam.family == "sf") {
      const double e = fam.m * (fam.m - 1) / 2.0 + static_cast<double>(fam.m) * (cfg.n - fam.m);
      excl = 2.0 * e / cfg.n;
    }
    if (fam.family == "rr") excl = fam.k;
    degrees.push_back({{"group", fam.display_label()},
                       {"mean_degree_excluding_self_loop", excl},
                       {"mean_degree_including_self_loop", excl + 1.0},
                       {"exact", exact}});
  }
  meta["mean_degrees"] = degrees;
  meta["mean_degree_values_are_placeholders"] = true;
  return meta;
}

}  // namespace netsolve
