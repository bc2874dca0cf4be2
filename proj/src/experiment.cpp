#include "rigc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "rigc/components.hpp"
#include "rigc/error.hpp"
#include "rigc/explore.hpp"
#include "rigc/parallel.hpp"
#include "rigc/percolation.hpp"

namespace fs = std::filesystem;

namespace rigc {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::InvalidConfig, path + ": " + what);
}

/// Runs `parse` and prefixes any library error with the field path.
template <class F>
auto at_path(const std::string& path, F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidConfig && std::string(e.what()).find(path) != std::string::npos)
      throw;
    invalid(path, e.what());
  } catch (const Json::exception& e) {
    invalid(path, e.what());
  }
}

std::int64_t positive_int(const Json& doc, const std::string& key, std::int64_t min_value) {
  const auto& v = doc[key];
  if (!v.is_number_integer()) invalid(key, "must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < min_value) invalid(key, "must be at least " + std::to_string(min_value));
  return x;
}

double probability(const Json& v, const std::string& path) {
  if (!v.is_number()) invalid(path, "must be a number");
  const double x = v.get<double>();
  if (!(x >= 0.0 && x <= 1.0)) invalid(path, "must lie in [0,1]");
  return x;
}

ModelInputs parse_inputs(const Json& j) {
  if (!j.is_object()) invalid("inputs", "must be an object");
  static const std::set<std::string> known{"l_pmf", "l_poisson", "l_degrees", "catalog", "communities"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) invalid("inputs." + key, "unknown field");

  const int l_sources = static_cast<int>(j.contains("l_pmf")) + static_cast<int>(j.contains("l_poisson")) +
                        static_cast<int>(j.contains("l_degrees"));
  const int r_sources = static_cast<int>(j.contains("catalog")) + static_cast<int>(j.contains("communities"));
  if (l_sources != 1) invalid("inputs", "exactly one of l_pmf, l_poisson, l_degrees is required");
  if (r_sources != 1) invalid("inputs", "exactly one of catalog, communities is required");

  ModelInputs in;
  in.explicit_params = j.contains("l_degrees");
  if (in.explicit_params != j.contains("communities"))
    invalid("inputs", "l_degrees and communities must be given together (or l-law and catalog)");

  if (in.explicit_params) {
    std::vector<int> degrees;
    for (std::size_t i = 0; i < j["l_degrees"].size(); ++i) {
      const auto& d = j["l_degrees"][i];
      if (!d.is_number_integer()) invalid("inputs.l_degrees[" + std::to_string(i) + "]", "must be an integer");
      degrees.push_back(d.get<int>());
    }
    std::vector<CommunityGraph> communities;
    if (!j["communities"].is_array()) invalid("inputs.communities", "must be a list of graphs");
    for (std::size_t i = 0; i < j["communities"].size(); ++i) {
      const std::string path = "inputs.communities[" + std::to_string(i) + "]";
      communities.push_back(at_path(path, [&] { return graph_from_json(j["communities"][i]); }));
    }
    in.params = at_path("inputs", [&] { return build_params(std::move(degrees), std::move(communities)); });
    return in;
  }

  if (j.contains("l_pmf")) {
    in.l_pmf = at_path("inputs.l_pmf", [&] { return pmf_from_json(j["l_pmf"]); });
  } else {
    const auto& pj = j["l_poisson"];
    if (!pj.is_object() || !pj.contains("lambda") || !pj["lambda"].is_number())
      invalid("inputs.l_poisson.lambda", "must be a number");
    const double lambda = pj["lambda"].get<double>();
    int offset = 1;
    if (pj.contains("offset")) {
      if (!pj["offset"].is_number_integer()) invalid("inputs.l_poisson.offset", "must be an integer");
      offset = pj["offset"].get<int>();
    }
    if (!(lambda > 0.0)) invalid("inputs.l_poisson.lambda", "must be positive");
    if (offset < 1) invalid("inputs.l_poisson.offset", "must be at least 1 so that l-degrees are positive");
    in.l_pmf = truncated_poisson(lambda, offset);
  }
  if (in.l_pmf.min_value() < 1) invalid("inputs.l_pmf", "l-degrees must be at least 1");

  const auto& cj = j["catalog"];
  if (!cj.is_array()) invalid("inputs.catalog", "must be a list of {graph, weight}");
  std::vector<std::pair<CommunityGraph, double>> items;
  for (std::size_t i = 0; i < cj.size(); ++i) {
    const std::string path = "inputs.catalog[" + std::to_string(i) + "]";
    const auto& e = cj[i];
    if (!e.is_object() || !e.contains("graph")) invalid(path + ".graph", "missing");
    if (!e.contains("weight") || !e["weight"].is_number()) invalid(path + ".weight", "must be a number");
    items.emplace_back(at_path(path + ".graph", [&] { return graph_from_json(e["graph"]); }),
                       e["weight"].get<double>());
  }
  in.catalog = at_path("inputs.catalog", [&] { return CommunityCatalog::create(std::move(items)); });
  return in;
}

bool needs_seed(const std::string& mode) { return mode != "theory" && mode != "pi-c"; }

std::string cell(double x) { return format_double(x); }
std::string cell(std::int64_t x) { return std::to_string(x); }
std::string cell(std::uint64_t x) { return std::to_string(x); }
std::string cell(int x) { return std::to_string(x); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
  os << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_table(const fs::path& path, const CsvTable& t) {
  std::ostringstream os;
  t.write(os);
  write_text(path, os.str());
}

using Rows = std::vector<std::vector<std::string>>;

/// Runs body(replica, rows...) for every replica in parallel and concatenates
/// the per-replica row lists in replica order.
std::vector<Rows> per_replica(const ExperimentConfig& cfg, unsigned threads, std::size_t tables,
                              const std::function<void(std::uint64_t, std::vector<Rows>&)>& body) {
  std::vector<std::vector<Rows>> slots(static_cast<std::size_t>(cfg.replicas), std::vector<Rows>(tables));
  parallel_for(slots.size(), threads, [&](std::size_t r) { body(r, slots[r]); });
  std::vector<Rows> out(tables);
  for (auto& slot : slots)
    for (std::size_t t = 0; t < tables; ++t)
      for (auto& row : slot[t]) out[t].push_back(std::move(row));
  return out;
}

std::vector<std::string> prefix(std::uint64_t seed, std::uint64_t replica, std::int64_t n) {
  return {cell(seed), cell(replica), cell(n)};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<std::string> kKeyColumns{"seed", "replica", "N"};

Json bcm_json(const BcmPrediction& b) {
  Json lhs = Json::object();
  Json rhs = Json::object();
  for (const auto& [k, v] : b.lhs_degk) lhs[std::to_string(k)] = v;
  for (const auto& [k, v] : b.rhs_degk) rhs[std::to_string(k)] = v;
  return Json{{"lhs_fraction", b.lhs_fraction}, {"rhs_fraction", b.rhs_fraction},
              {"edges_per_N", b.edges_per_N}, {"combined_fraction", b.combined_fraction},
              {"lhs_degk", lhs}, {"rhs_degk", rhs}};
}

struct Instance {
  ModelParams params;
  BcmGraph bcm;
  RigcGraph rigc;
};

Instance make_instance(const ExperimentConfig& cfg, std::uint64_t replica) {
  Rng rp = make_stream(*cfg.seed, replica, StreamRole::Params);
  ModelParams params = cfg.inputs.instance(cfg.n_target, rp);
  Rng rm = make_stream(*cfg.seed, replica, StreamRole::Matching);
  BcmGraph bcm = generate_bcm(params, rm);
  RigcGraph rigc = project_rigc(bcm, params.communities);
  return Instance{std::move(params), std::move(bcm), std::move(rigc)};
}

std::vector<fs::path> run_theory(const ExperimentConfig& cfg, const fs::path& dir) {
  const auto in = cfg.inputs.theory();
  Json report = theory_report(in);
  std::vector<fs::path> files{dir / "theory.json", dir / "curves.csv", dir / "tau.csv"};
  write_json(files[0], report);

  CsvTable curves{{"t", "z", "h1", "h2", "H"}, {}};
  const double q0 = q_tilde_zero(in);
  const double horizon = q0 > 0.0 ? -std::log(q0) : std::numeric_limits<double>::infinity();
  const double t_max = std::min(6.0, std::isfinite(horizon) ? 0.999 * horizon : 6.0);
  for (int i = 0; i <= 600; ++i) {
    const double t = t_max * i / 600.0;
    const double z = std::exp(-t);
    const double a = h1(in, z);
    const double b = h2(in, z);
    curves.rows.push_back({cell(t), cell(z), cell(a), cell(b), cell(b - a)});
  }
  write_table(files[1], curves);

  CsvTable tau{{"c", "tau_theory"}, {}};
  for (int i = 1; i <= 100; ++i) {
    const double c = i / 100.0;
    tau.rows.push_back({cell(c), cell(tau_theory(in, c))});
  }
  write_table(files[2], tau);
  return files;
}

std::vector<fs::path> run_generate(const ExperimentConfig& cfg, const fs::path& dir, unsigned threads) {
  auto tables = per_replica(cfg, threads, 2, [&](std::uint64_t r, std::vector<Rows>& out) {
    const auto inst = make_instance(cfg, r);
    const auto n = static_cast<std::int64_t>(inst.params.n());
    out[0].push_back(concat(prefix(*cfg.seed, r, n),
                            {cell(static_cast<std::int64_t>(inst.params.m())), cell(inst.params.half_edges),
                             cell(inst.rigc.edge_count())}));
    for (const auto& e : inst.rigc.edges)
      out[1].push_back(concat(prefix(*cfg.seed, r, n), {cell(e.u + 1), cell(e.v + 1), cell(e.mult)}));
  });
  std::vector<fs::path> files{dir / "generate.csv", dir / "edges.csv"};
  write_table(files[0], {concat(kKeyColumns, {"M", "h", "edges"}), tables[0]});
  write_table(files[1], {concat(kKeyColumns, {"u", "v", "mult"}), tables[1]});
  return files;
}

std::vector<fs::path> run_giant(const ExperimentConfig& cfg, const fs::path& dir, unsigned threads) {
  auto tables = per_replica(cfg, threads, 3, [&](std::uint64_t r, std::vector<Rows>& out) {
    const auto inst = make_instance(cfg, r);
    const auto n = static_cast<std::int64_t>(inst.params.n());
    const auto g = giant_stats_rigc(inst.rigc, inst.params);
    const auto b = giant_stats_bcm(inst.bcm, inst.params);
    const auto key = prefix(*cfg.seed, r, n);
    out[0].push_back(concat(key, {cell(static_cast<std::int64_t>(inst.params.m())), cell(g.c1_fraction),
                                  cell(g.c2_fraction), cell(g.edges_in_giant_per_N), cell(b.lhs_fraction),
                                  cell(b.rhs_fraction), cell(b.edges_per_N), cell(b.combined_fraction),
                                  cell(b.second_fraction)}));
    for (const auto& [k, f] : b.lhs_degk) out[1].push_back(concat(key, {"l", cell(k), cell(f)}));
    for (const auto& [k, f] : b.rhs_degk) out[1].push_back(concat(key, {"r", cell(k), cell(f)}));
    for (const auto& [kd, f] : g.joint_in_giant)
      out[2].push_back(concat(key, {cell(kd.first), cell(kd.second), cell(f)}));
  });
  std::vector<fs::path> files{dir / "giant.csv", dir / "giant_degk.csv", dir / "joint_in_giant.csv"};
  write_table(files[0], {concat(kKeyColumns, {"M", "c1_fraction", "c2_fraction", "edges_in_giant_per_N",
                                              "bcm_lhs_fraction", "bcm_rhs_fraction", "bcm_edges_per_N",
                                              "bcm_combined_fraction", "bcm_c2_fraction"}),
                         tables[0]});
  write_table(files[1], {concat(kKeyColumns, {"side", "k", "fraction"}), tables[1]});
  write_table(files[2], {concat(kKeyColumns, {"k", "d", "fraction"}), tables[2]});
  return files;
}

std::vector<fs::path> run_percolate(const ExperimentConfig& cfg, const fs::path& dir, unsigned threads) {
  const double pi = *cfg.pi;
  std::vector<fs::path> files{dir / "percolate.csv"};
  auto tables = per_replica(cfg, threads, 1, [&](std::uint64_t r, std::vector<Rows>& out) {
    const auto inst = make_instance(cfg, r);
    const auto n = static_cast<std::int64_t>(inst.params.n());
    Rng rg = make_stream(*cfg.seed, r, StreamRole::Percolation);
    const auto kept = percolate_rigc_graph(inst.rigc, pi, rg);
    const auto a = giant_stats_rigc(kept, inst.params);

    Rng rc = make_stream(*cfg.seed, r, StreamRole::Auxiliary);
    auto com_pi = build_com_pi(inst.params.communities, pi, rc);
    const auto params_pi = build_params(inst.params.l_degrees, std::move(com_pi));
    Rng rm = make_stream(*cfg.seed, r, StreamRole::Exploration);
    const auto bcm_pi = generate_bcm(params_pi, rm);
    const auto b = giant_stats_rigc(project_rigc(bcm_pi, params_pi.communities), params_pi);

    const auto key = prefix(*cfg.seed, r, n);
    out[0].push_back(concat(key, {cell(pi), "graph", cell(a.c1_fraction), cell(a.c2_fraction),
                                  cell(a.edges_in_giant_per_N)}));
    out[0].push_back(concat(key, {cell(pi), "communities", cell(b.c1_fraction), cell(b.c2_fraction),
                                  cell(b.edges_in_giant_per_N)}));
  });
  write_table(files[0], {concat(kKeyColumns, {"pi", "path", "c1_fraction", "c2_fraction", "edges_in_giant_per_N"}),
                         tables[0]});

  if (!cfg.inputs.explicit_params) {
    const auto mu = mu_pi_limit(cfg.inputs.catalog, pi);
    const auto pred = percolated_prediction(cfg.inputs.l_pmf, cfg.inputs.catalog, pi);
    Json report{{"pi", pi},
                {"catalog_pi", catalog_to_json(mu.catalog_pi)},
                {"mean_size_pi", mu.mean_size_pi},
                {"eta_l", pred.eta_l},
                {"xi_l", pred.xi_l},
                {"supercritical", pred.supercritical},
                {"criticality_value", pred.criticality_value}};
    files.push_back(dir / "percolate.json");
    write_json(files.back(), report);
  }
  return files;
}

std::vector<fs::path> run_pi_c(const ExperimentConfig& cfg, const fs::path& dir) {
  const auto in = cfg.inputs.theory();
  const auto res = critical_pi(in.p, in.catalog, cfg.pi_c_tol);
  Json report{{"pi_c", res.pi_c}, {"lo", res.lo}, {"hi", res.hi}, {"iterations", res.iterations},
              {"tol", cfg.pi_c_tol}};
  std::vector<fs::path> files{dir / "pi_c.json"};
  write_json(files[0], report);
  return files;
}

std::vector<fs::path> run_sweep(const ExperimentConfig& cfg, const fs::path& dir, unsigned threads) {
  auto tables = per_replica(cfg, threads, 1, [&](std::uint64_t r, std::vector<Rows>& out) {
    const auto inst = make_instance(cfg, r);
    const auto n = static_cast<std::int64_t>(inst.params.n());
    Rng rg = make_stream(*cfg.seed, r, StreamRole::Percolation);
    const auto stats = harris_sweep(inst.rigc, inst.params.l_degrees, cfg.pi_grid, rg);
    for (std::size_t i = 0; i < stats.size(); ++i)
      out[0].push_back(concat(prefix(*cfg.seed, r, n),
                              {cell(cfg.pi_grid[i]), cell(stats[i].c1_fraction), cell(stats[i].c2_fraction),
                               cell(stats[i].edges_in_giant_per_N)}));
  });
  std::vector<fs::path> files{dir / "sweep.csv"};
  write_table(files[0], {concat(kKeyColumns, {"pi", "c1_fraction", "c2_fraction", "edges_per_N"}), tables[0]});
  return files;
}

std::vector<fs::path> run_explore(const ExperimentConfig& cfg, const fs::path& dir, unsigned threads) {
  const auto in = cfg.inputs.theory();
  const auto pred = giant_prediction(in);
  std::vector<double> tau_th;
  for (double c : cfg.c_grid) tau_th.push_back(tau_theory(in, c));

  auto tables = per_replica(cfg, threads, 4, [&](std::uint64_t r, std::vector<Rows>& out) {
    Rng rp = make_stream(*cfg.seed, r, StreamRole::Params);
    const auto params = cfg.inputs.instance(cfg.n_target, rp);
    const auto n = static_cast<std::int64_t>(params.n());
    Rng re = make_stream(*cfg.seed, r, StreamRole::Exploration);
    Explorer explorer(params);
    const auto& traj = explorer.run(re);
    const auto err = trajectory_sup_error(traj, in, cfg.t0);
    const auto tau = hitting_times(traj, cfg.c_grid);
    const auto t_stn = coupled_standard_hitting_times(traj, cfg.c_grid);
    double sup_tau = 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i) sup_tau = std::max(sup_tau, std::abs(tau[i] - tau_th[i]));
    std::int64_t largest = 0;
    for (const auto& c : traj.components) largest = std::max(largest, c.l_vertices);
    double T1 = 0.0;
    double T2 = std::numeric_limits<double>::infinity();
    if (pred.supercritical) {
      const auto w = giant_window(traj, giant_time(pred));
      T1 = w.T1;
      T2 = w.T2;
    }
    const auto key = prefix(*cfg.seed, r, n);
    out[0].push_back(concat(key, {cell(static_cast<std::int64_t>(traj.components.size())), cell(largest),
                                  cell(err.living), cell(err.sleeping), cell(err.active), cell(sup_tau),
                                  cell(T1), cell(T2)}));
    for (std::size_t i = 0; i < tau.size(); ++i)
      out[1].push_back(concat(key, {cell(cfg.c_grid[i]), cell(tau[i]), cell(tau_th[i]), cell(t_stn[i])}));
    for (std::size_t i = 0; i < traj.components.size(); ++i) {
      const auto& c = traj.components[i];
      out[2].push_back(concat(key, {cell(static_cast<std::int64_t>(i)), cell(c.start_time), cell(c.l_vertices),
                                    cell(c.r_vertices), cell(c.edges)}));
    }
    if (static_cast<std::int64_t>(r) < cfg.trajectory_replicas) {
      for (const auto& e : traj.events)
        out[3].push_back(concat(key, {cell(e.t), cell(static_cast<int>(e.kind)), cell(e.L), cell(e.S),
                                      cell(e.S_hat), cell(e.A), cell(e.W)}));
    }
  });
  std::vector<fs::path> files{dir / "explore.csv", dir / "hitting.csv", dir / "components.csv"};
  write_table(files[0], {concat(kKeyColumns, {"components", "largest_l", "sup_living", "sup_sleeping",
                                              "sup_active", "sup_tau", "T1", "T2"}),
                         tables[0]});
  write_table(files[1], {concat(kKeyColumns, {"c", "tau", "tau_theory", "T_stn"}), tables[1]});
  write_table(files[2], {concat(kKeyColumns, {"component", "start_time", "l_vertices", "r_vertices", "edges"}),
                         tables[2]});
  if (cfg.trajectory_replicas > 0) {
    files.push_back(dir / "trajectory.csv");
    write_table(files.back(), {concat(kKeyColumns, {"t", "step", "L", "S", "S_hat", "A", "W"}), tables[3]});
  }
  return files;
}

struct CompareRule {
  std::string column;
  std::vector<std::string> theory_path;
  double tolerance;
};

const std::vector<CompareRule>& compare_rules() {
  static const std::vector<CompareRule> rules{
      {"c1_fraction", {"xi_l"}, 0.01},
      {"bcm_lhs_fraction", {"bcm", "lhs_fraction"}, 0.01},
      {"bcm_rhs_fraction", {"bcm", "rhs_fraction"}, 0.01},
      {"bcm_edges_per_N", {"bcm", "edges_per_N"}, 0.02},
      {"bcm_combined_fraction", {"bcm", "combined_fraction"}, 0.01},
      {"edges_in_giant_per_N", {"edges_in_giant_rigc"}, 0.02},
  };
  return rules;
}

const Json* lookup(const Json& doc, const std::vector<std::string>& path) {
  const Json* cur = &doc;
  for (const auto& key : path) {
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &(*cur)[key];
  }
  return cur->is_number() ? cur : nullptr;
}

}  // namespace

TheoryInputs ModelInputs::theory() const {
  return explicit_params ? empirical_inputs(*params) : TheoryInputs::make(l_pmf, catalog);
}

ModelParams ModelInputs::instance(std::int64_t n_target, Rng& rng) const {
  if (explicit_params) return *params;
  return sample_params(l_pmf, catalog, n_target, rng);
}

const std::vector<std::string>& experiment_modes() {
  static const std::vector<std::string> modes{"theory", "generate", "giant",  "percolate",
                                              "pi-c",   "explore",  "sweep"};
  return modes;
}

ExperimentConfig parse_config(const Json& doc, const ConfigOverrides& overrides) {
  if (!doc.is_object()) invalid("$", "config must be a JSON object");
  static const std::set<std::string> known{"schema_version", "mode",   "inputs", "N",          "replicas",
                                           "seed",           "pi",     "pi_grid", "t0",        "c_grid",
                                           "tolerances",     "trajectory_replicas"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) invalid(key, "unknown field");

  if (!doc.contains("schema_version")) invalid("schema_version", "missing");
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kSchemaVersion)
    invalid("schema_version", "must be " + std::to_string(kSchemaVersion));

  ExperimentConfig cfg;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) invalid("mode", "must be a string");
    cfg.mode = doc["mode"].get<std::string>();
  }
  if (overrides.mode) {
    if (!cfg.mode.empty() && cfg.mode != *overrides.mode)
      invalid("mode", "config says '" + cfg.mode + "' but '" + *overrides.mode + "' was requested");
    cfg.mode = *overrides.mode;
  }
  const auto& modes = experiment_modes();
  if (cfg.mode.empty()) invalid("mode", "missing");
  if (std::find(modes.begin(), modes.end(), cfg.mode) == modes.end())
    invalid("mode", "unknown mode '" + cfg.mode + "'");

  if (!doc.contains("inputs")) invalid("inputs", "missing");
  cfg.inputs = parse_inputs(doc["inputs"]);

  if (doc.contains("replicas")) cfg.replicas = positive_int(doc, "replicas", 1);
  if (overrides.replicas) {
    if (*overrides.replicas < 1) invalid("replicas", "must be at least 1");
    cfg.replicas = *overrides.replicas;
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<std::int64_t>() < 0)
      invalid("seed", "must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (overrides.seed) cfg.seed = overrides.seed;
  if (needs_seed(cfg.mode) && !cfg.seed) invalid("seed", "required for mode '" + cfg.mode + "'");

  const bool sampling = needs_seed(cfg.mode);
  if (doc.contains("N")) cfg.n_target = positive_int(doc, "N", 1);
  if (sampling && !cfg.inputs.explicit_params && !doc.contains("N"))
    invalid("N", "required when sampling from laws");

  const bool wants_pi = cfg.mode == "percolate";
  const bool wants_grid = cfg.mode == "sweep";
  if (doc.contains("pi") != wants_pi)
    invalid("pi", wants_pi ? "required for mode 'percolate'" : "only allowed for mode 'percolate'");
  if (doc.contains("pi_grid") != wants_grid)
    invalid("pi_grid", wants_grid ? "required for mode 'sweep'" : "only allowed for mode 'sweep'");
  if (wants_pi) cfg.pi = probability(doc["pi"], "pi");
  if (wants_grid) {
    if (!doc["pi_grid"].is_array() || doc["pi_grid"].empty()) invalid("pi_grid", "must be a nonempty list");
    for (std::size_t i = 0; i < doc["pi_grid"].size(); ++i) {
      const auto path = "pi_grid[" + std::to_string(i) + "]";
      cfg.pi_grid.push_back(probability(doc["pi_grid"][i], path));
      if (i > 0 && cfg.pi_grid[i] < cfg.pi_grid[i - 1]) invalid(path, "grid must be sorted ascending");
    }
  }

  if (doc.contains("t0")) {
    if (!doc["t0"].is_number() || doc["t0"].get<double>() < 0.0) invalid("t0", "must be a nonnegative number");
    cfg.t0 = doc["t0"].get<double>();
  }
  if (doc.contains("c_grid")) {
    if (!doc["c_grid"].is_array() || doc["c_grid"].empty()) invalid("c_grid", "must be a nonempty list");
    for (std::size_t i = 0; i < doc["c_grid"].size(); ++i) {
      const auto& v = doc["c_grid"][i];
      const auto path = "c_grid[" + std::to_string(i) + "]";
      if (!v.is_number() || !(v.get<double>() > 0.0 && v.get<double>() <= 1.0)) invalid(path, "must lie in (0,1]");
      cfg.c_grid.push_back(v.get<double>());
    }
  } else {
    for (int i = 10; i <= 100; i += 5) cfg.c_grid.push_back(i / 100.0);
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) invalid("tolerances", "must be an object");
    for (const auto& [key, value] : t.items()) {
      if (key != "pi_c") invalid("tolerances." + key, "unknown field");
      if (!value.is_number() || !(value.get<double>() > 0.0)) invalid("tolerances.pi_c", "must be positive");
      cfg.pi_c_tol = value.get<double>();
    }
  }
  if (doc.contains("trajectory_replicas")) cfg.trajectory_replicas = positive_int(doc, "trajectory_replicas", 0);
  return cfg;
}

ExperimentConfig load_config(const fs::path& path, const ConfigOverrides& overrides) {
  std::ifstream is(path);
  if (!is) invalid("$", "cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(is);
  } catch (const Json::exception& e) {
    invalid("$", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(doc, overrides);
}

Json theory_report(const TheoryInputs& in) {
  const auto pred = giant_prediction(in);
  Json report{{"p", pmf_to_json(in.p)},
              {"catalog", catalog_to_json(in.catalog)},
              {"gamma", in.gamma},
              {"eta_l", pred.eta_l},
              {"eta_r", pred.eta_r},
              {"xi_l", pred.xi_l},
              {"xi_r", pred.xi_r},
              {"supercritical", pred.supercritical},
              {"criticality_value", pred.criticality_value}};
  if (pred.supercritical) {
    report["t_star"] = giant_time(pred);
    report["edges_in_giant_rigc"] = edges_in_giant_rigc(in, pred);
    report["edges_in_giant_via_Akd"] = edges_in_giant_via_Akd(in, pred);
    report["bcm"] = bcm_json(bcm_predictions(in, pred));
    Json table = Json::array();
    for (const auto& [kd, a] : deg_in_giant_table(in, pred)) table.push_back(Json::array({kd.first, kd.second, a}));
    report["deg_in_giant"] = table;
  }
  return report;
}

std::vector<fs::path> run_experiment(const ExperimentConfig& cfg, const fs::path& out_dir, unsigned threads) {
  fs::create_directories(out_dir);
  if (cfg.mode == "theory") return run_theory(cfg, out_dir);
  if (cfg.mode == "generate") return run_generate(cfg, out_dir, threads);
  if (cfg.mode == "giant") return run_giant(cfg, out_dir, threads);
  if (cfg.mode == "percolate") return run_percolate(cfg, out_dir, threads);
  if (cfg.mode == "pi-c") return run_pi_c(cfg, out_dir);
  if (cfg.mode == "explore") return run_explore(cfg, out_dir, threads);
  if (cfg.mode == "sweep") return run_sweep(cfg, out_dir, threads);
  invalid("mode", "unknown mode '" + cfg.mode + "'");
}

Json compare_reports(const Json& theory, const CsvTable& empirical, std::optional<double> tolerance) {
  if (empirical.rows.empty()) throw Error(ErrorCode::KeyMismatch, "empirical table has no rows");

  std::vector<CompareRule> rules = compare_rules();
  for (const auto& col : empirical.header) {
    const bool mapped = std::any_of(rules.begin(), rules.end(), [&](const CompareRule& r) { return r.column == col; });
    if (!mapped && theory.is_object() && theory.contains(col) && theory[col].is_number())
      rules.push_back({col, {col}, 0.01});
  }

  Json quantities = Json::object();
  bool all_pass = true;
  for (const auto& rule : rules) {
    const auto it = std::find(empirical.header.begin(), empirical.header.end(), rule.column);
    if (it == empirical.header.end()) continue;
    const Json* th = lookup(theory, rule.theory_path);
    if (!th) continue;
    const auto col = static_cast<std::size_t>(it - empirical.header.begin());
    const double expected = th->get<double>();
    double offset = 0.0;
    double worst = 0.0;
    for (const auto& row : empirical.rows) {
      if (col >= row.size()) throw Error(ErrorCode::KeyMismatch, "row shorter than header");
      const double x = std::stod(row[col]);
      offset += x - expected;
      worst = std::max(worst, std::abs(x - expected));
    }
    const double avg = expected + offset / static_cast<double>(empirical.rows.size());
    const double tol = tolerance.value_or(rule.tolerance);
    const bool pass = std::abs(avg - expected) <= tol;
    all_pass = all_pass && pass;
    std::string key;
    for (const auto& part : rule.theory_path) key += (key.empty() ? "" : ".") + part;
    quantities[rule.column] = Json{{"theory_key", key},          {"theory", expected},
                                   {"empirical_mean", avg},      {"deviation", std::abs(avg - expected)},
                                   {"max_row_deviation", worst}, {"tolerance", tol},
                                   {"pass", pass}};
  }
  if (quantities.empty()) throw Error(ErrorCode::KeyMismatch, "no empirical column matches a theory quantity");
  return Json{{"rows", empirical.rows.size()}, {"quantities", quantities}, {"all_pass", all_pass}};
}

}  // namespace rigc
