#include "kanon/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "kanon/partition.hpp"
#include "kanon/stats.hpp"

namespace kanon {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- config

std::uint64_t ExperimentConfig::run_seed(std::size_t run) const {
  if (!seeds.empty()) return seeds.at(run);
  return seed + run;
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw Error("experiment: runs must be >= 1");
  if (!seeds.empty() && seeds.size() != runs) throw Error("experiment: seeds list must have one entry per run");
  if (!(budget_fraction > 0.0 && budget_fraction <= 1.0)) throw Error("experiment: budget fraction must lie in (0, 1]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("experiment: alpha must lie in (0, 1]");
  if (k < 1 || d < 1) throw Error("experiment: k and d must be >= 1");
  if (networks.empty()) throw Error("experiment: no networks configured");
  std::set<std::string> names;
  for (const auto& n : networks) {
    if (n.name.empty()) throw Error("experiment: every network needs a name");
    if (!names.insert(n.name).second) throw Error("experiment: duplicate network name '" + n.name + "'");
    if (n.path.has_value() == n.model.has_value()) {
      throw Error("experiment: network '" + n.name + "' needs exactly one of path or model");
    }
    if (n.path && !fs::exists(*n.path)) {
      std::string hint = n.url ? " (fetch it from " + *n.url + ")" : "";
      throw Error("experiment: dataset '" + n.name + "' not readable at " + *n.path + hint);
    }
  }
}

namespace {

template <class T, class F>
std::vector<T> parse_list(const json& j, F&& parse) {
  std::vector<T> out;
  if (j.is_string()) {
    out.push_back(parse(j.get<std::string>()));
  } else {
    for (const auto& x : j) out.push_back(parse(x.get<std::string>()));
  }
  return out;
}

ModelSpec model_from_json(const json& j) {
  ModelSpec m;
  m.kind = parse_model_kind(j.at("model").get<std::string>());
  m.n = j.value("n", m.n);
  m.avg_degree = j.value("avg_degree", m.avg_degree);
  m.rewire_p = j.value("rewire_p", m.rewire_p);
  return m;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const json& j, const fs::path& base_dir) {
  ExperimentConfig c;
  if (j.contains("measures")) c.measures = parse_list<MeasureType>(j["measures"], parse_measure_type);
  if (j.contains("heuristics")) c.heuristics = parse_list<HeuristicKind>(j["heuristics"], parse_heuristic);
  if (j.contains("variants")) c.variants = parse_list<Variant>(j["variants"], parse_variant);
  c.k = j.value("k", c.k);
  c.d = j.value("d", c.d);
  c.runs = j.value("runs", c.runs);
  c.seed = j.value("seed", c.seed);
  if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  if (j.contains("recompute_gap")) {
    const auto& g = j["recompute_gap"];
    c.gap = g.is_number() ? RecomputeGap::absolute(g.get<std::size_t>()) : RecomputeGap::parse(g.get<std::string>());
  }
  c.budget_fraction = j.value("budget_fraction", c.budget_fraction);
  c.alpha = j.value("alpha", c.alpha);
  c.runtime_limit_s = j.value("runtime_limit_s", c.runtime_limit_s);
  c.utility = j.value("utility", c.utility);
  c.community_runs = j.value("community_runs", c.community_runs);
  c.threads = j.value("threads", c.threads);
  c.output_dir = j.value("output_dir", c.output_dir);
  for (const auto& n : j.value("networks", json::array())) {
    NetworkSpec s;
    s.name = n.at("name").get<std::string>();
    if (n.contains("path")) {
      fs::path p = n["path"].get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      s.path = p.string();
    }
    if (n.contains("url")) s.url = n["url"].get<std::string>();
    if (n.contains("sha256")) s.sha256 = n["sha256"].get<std::string>();
    if (n.contains("model")) s.model = model_from_json(n);
    s.runtime_only = n.value("runtime_only", false);
    c.networks.push_back(std::move(s));
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  auto names = [](const auto& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
  };
  j["measures"] = names(c.measures);
  j["heuristics"] = names(c.heuristics);
  j["variants"] = names(c.variants);
  j["k"] = c.k;
  j["d"] = c.d;
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  if (!c.seeds.empty()) j["seeds"] = c.seeds;
  j["recompute_gap"] = c.gap.to_string();
  j["budget_fraction"] = c.budget_fraction;
  j["alpha"] = c.alpha;
  j["runtime_limit_s"] = c.runtime_limit_s;
  j["utility"] = c.utility;
  j["community_runs"] = c.community_runs;
  j["threads"] = c.threads;
  j["output_dir"] = c.output_dir;
  j["networks"] = json::array();
  for (const auto& n : c.networks) {
    json x;
    x["name"] = n.name;
    if (n.path) x["path"] = *n.path;
    if (n.url) x["url"] = *n.url;
    if (n.sha256) x["sha256"] = *n.sha256;
    if (n.model) {
      x["model"] = to_string(n.model->kind);
      x["n"] = n.model->n;
      x["avg_degree"] = n.model->avg_degree;
      x["rewire_p"] = n.model->rewire_p;
    }
    x["runtime_only"] = n.runtime_only;
    j["networks"].push_back(x);
  }
  return j;
}

ExperimentConfig load_experiment_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open config '" + file.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("config '" + file.string() + "': " + e.what());
  }
  return experiment_config_from_json(j, file.parent_path());
}

fs::path resolve_output_dir(const std::string& dir) {
  fs::path p = dir;
  if (p.is_relative()) {
    if (const char* root = std::getenv("KANON_OUTPUT_ROOT"); root && *root) return fs::path(root) / p;
  }
  return p;
}

std::string sha256_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open '" + file.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

Graph load_network(const NetworkSpec& spec, std::uint64_t run_seed) {
  if (spec.model) return generate_model(*spec.model, run_seed);
  if (!spec.path) throw Error("network '" + spec.name + "' has neither path nor model");
  if (spec.sha256) {
    auto actual = sha256_file(*spec.path);
    if (actual != *spec.sha256) {
      throw Error("dataset '" + spec.name + "' checksum mismatch: expected " + *spec.sha256 + ", got " + actual);
    }
  }
  return parse_edge_list_file(*spec.path);
}

// ------------------------------------------------------------ properties

double transitivity(const Graph& g) {
  double closed = 0.0, triples = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const double deg = static_cast<double>(g.degree(v));
    triples += deg * (deg - 1.0) / 2.0;
    for (NodeId w : g.neighbors(v)) closed += static_cast<double>(common_neighbor_count(g, v, w));
  }
  // closed counts each triangle 6 times; 3 * triangles / triples.
  return triples == 0.0 ? 0.0 : (closed / 2.0) / triples;
}

double degree_assortativity(const Graph& g) {
  std::vector<double> xs, ys;
  for (const Edge& e : g.edges()) {
    const double a = static_cast<double>(g.degree(e.u));
    const double b = static_cast<double>(g.degree(e.v));
    xs.push_back(a);
    ys.push_back(b);
    xs.push_back(b);
    ys.push_back(a);
  }
  if (xs.size() < 3) return std::nan("");
  try {
    return pearson_correlation(xs, ys).r;
  } catch (const Error&) {
    return std::nan("");
  }
}

NetworkProperties network_properties(const Graph& g, std::size_t exact_cap) {
  NetworkProperties p;
  p.nodes = g.node_count();
  p.edges = g.edge_count();
  p.avg_degree = p.nodes == 0 ? 0.0 : 2.0 * static_cast<double>(p.edges) / static_cast<double>(p.nodes);
  std::vector<std::size_t> degs;
  for (NodeId v = 0; v < g.node_count(); ++v) degs.push_back(g.degree(v));
  std::sort(degs.begin(), degs.end());
  if (!degs.empty()) {
    const std::size_t m = degs.size();
    p.median_degree = m % 2 ? static_cast<double>(degs[m / 2]) : (degs[m / 2 - 1] + degs[m / 2]) / 2.0;
  }
  p.clustering = clustering_coefficient(g);
  p.transitivity = transitivity(g);
  p.assortativity = degree_assortativity(g);
  p.lcc = lcc_fraction(g);
  if (g.node_count() <= exact_cap) {
    p.diameter = static_cast<double>(diameter(g));
    try {
      p.avg_distance = average_shortest_path(g, {.exact_node_cap = 0});
    } catch (const Error&) {
      p.avg_distance = std::nan("");
    }
  } else {
    p.diameter = std::nan("");
    p.avg_distance = std::nan("");
  }
  return p;
}

// ------------------------------------------------------------- CSV utils

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error("csv: missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const auto& cell = rows.at(row).at(column(name));
  if (cell.empty() || cell == "nan" || cell == "NA" || cell == "-") return std::nan("");
  return std::stod(cell);
}

CsvTable read_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open '" + file.string() + "'");
  CsvTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (std::getline(in, line)) t.header = split(line);
  while (std::getline(in, line)) {
    if (!line.empty()) t.rows.push_back(split(line));
  }
  return t;
}

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "NA";
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

std::string safe_name(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  }
  return out;
}

fs::path config_dir(const fs::path& root, const std::string& network, const std::string& measure,
                    const std::string& heuristic, const std::string& variant) {
  return root / "runs" / safe_name(network) / measure / heuristic / variant;
}

template <class F>
void run_pool(std::size_t jobs, std::size_t threads, F&& work) {
  threads = std::max<std::size_t>(1, std::min(threads, jobs));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs; i = next++) work(i);
  };
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
}

struct Instance {
  Graph graph;
  NetworkProperties props;
  std::optional<UtilityBaseline> baseline;
};

void write_utility_header(std::ostream& out) {
  out << "snapshot_index,edges_deleted,fraction_deleted,uniqueness";
  for (auto m : kAllUtilityMetrics) out << ',' << to_string(m);
  out << '\n';
}

}  // namespace

// ------------------------------------------------------------ experiment

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.directory = resolve_output_dir(cfg.output_dir);
  fs::create_directories(result.directory);

  const std::size_t nets = cfg.networks.size();
  UtilityOptions uopts;
  uopts.community_runs = cfg.community_runs;

  // Phase 1: graphs, properties and utility baselines per (network, run).
  // Datasets are identical across runs, so they are loaded once.
  std::vector<std::vector<std::shared_ptr<Instance>>> instances(nets, std::vector<std::shared_ptr<Instance>>(cfg.runs));
  std::vector<std::pair<std::size_t, std::size_t>> load_jobs;
  for (std::size_t n = 0; n < nets; ++n) {
    const std::size_t copies = cfg.networks[n].model ? cfg.runs : 1;
    for (std::size_t r = 0; r < copies; ++r) load_jobs.emplace_back(n, r);
  }
  std::mutex error_mutex;
  run_pool(load_jobs.size(), cfg.threads, [&](std::size_t i) {
    auto [n, r] = load_jobs[i];
    const auto& spec = cfg.networks[n];
    auto inst = std::make_shared<Instance>();
    try {
      inst->graph = load_network(spec, cfg.run_seed(r));
      inst->props = network_properties(inst->graph);
      if (cfg.utility && !spec.runtime_only) {
        uopts.seed = cfg.run_seed(r);
        inst->baseline = utility_baseline(inst->graph, uopts);
      }
    } catch (const std::exception& e) {
      std::lock_guard lock(error_mutex);
      result.errors.push_back(spec.name + ": " + e.what());
      inst.reset();
    }
    instances[n][r] = inst;
  });
  for (std::size_t n = 0; n < nets; ++n) {
    if (!cfg.networks[n].model) {
      for (std::size_t r = 1; r < cfg.runs; ++r) instances[n][r] = instances[n][0];
    }
  }
  if (!result.errors.empty()) throw Error("experiment: " + result.errors.front());

  {
    std::ofstream props(result.directory / "network_properties.csv");
    props << "network,run,nodes,edges,avg_degree,median_degree,clustering,transitivity,assortativity,lcc,diameter,"
             "avg_distance,runtime_only\n";
    for (std::size_t n = 0; n < nets; ++n) {
      for (std::size_t r = 0; r < cfg.runs; ++r) {
        const auto& p = instances[n][r]->props;
        props << cfg.networks[n].name << ',' << r << ',' << p.nodes << ',' << p.edges << ',' << fmt(p.avg_degree) << ','
              << fmt(p.median_degree) << ',' << fmt(p.clustering) << ',' << fmt(p.transitivity) << ','
              << fmt(p.assortativity) << ',' << fmt(p.lcc) << ',' << fmt(p.diameter) << ',' << fmt(p.avg_distance)
              << ',' << (cfg.networks[n].runtime_only ? 1 : 0) << '\n';
      }
    }
  }

  struct Job {
    std::size_t network;
    MeasureType measure;
    HeuristicKind heuristic;
    Variant variant;
    std::size_t run;
  };
  std::vector<Job> jobs;
  for (std::size_t n = 0; n < nets; ++n) {
    for (auto m : cfg.measures) {
      for (auto h : cfg.heuristics) {
        for (auto v : cfg.variants) {
          if (cfg.networks[n].runtime_only && v != Variant::budgeted) continue;
          for (std::size_t r = 0; r < cfg.runs; ++r) jobs.push_back({n, m, h, v, r});
        }
      }
    }
  }

  json manifest;
  manifest["config"] = to_json(cfg);
  manifest["jobs"] = json::array();
  for (const auto& jb : jobs) {
    manifest["jobs"].push_back({{"network", cfg.networks[jb.network].name},
                                {"measure", to_string(jb.measure)},
                                {"heuristic", to_string(jb.heuristic)},
                                {"variant", to_string(jb.variant)},
                                {"run", jb.run},
                                {"seed", cfg.run_seed(jb.run)}});
  }
  std::ofstream(result.directory / "experiment.json") << manifest.dump(2) << '\n';

  result.jobs = jobs.size();
  std::atomic<std::size_t> failed{0};
  run_pool(jobs.size(), cfg.threads, [&](std::size_t i) {
    const Job& jb = jobs[i];
    const auto& spec = cfg.networks[jb.network];
    const auto& inst = *instances[jb.network][jb.run];
    const auto dir = config_dir(result.directory, spec.name, to_string(jb.measure), to_string(jb.heuristic),
                                to_string(jb.variant));
    try {
      fs::create_directories(dir);
      VariantConfig vc;
      vc.variant = jb.variant;
      vc.alpha = cfg.alpha;
      vc.budget_fraction = cfg.budget_fraction;
      vc.k = cfg.k;
      vc.measure = MeasureKind{jb.measure, cfg.d, {}};
      vc.heuristic = jb.heuristic;
      vc.gap = cfg.gap;
      vc.seed = cfg.run_seed(jb.run);
      vc.runtime_limit_s = cfg.runtime_limit_s;
      auto res = anonymize(inst.graph, vc);

      const std::string prefix = "run" + std::to_string(jb.run);
      const std::string run_id = spec.name + "/" + to_string(jb.measure) + "/" + to_string(jb.heuristic) + "/" +
                                 to_string(jb.variant) + "/" + std::to_string(jb.run);
      {
        std::ofstream out(dir / (prefix + "_trace.csv"));
        write_trace_csv(out, res.trace, run_id, vc.seed);
      }
      {
        std::ofstream out(dir / (prefix + "_best.edges"));
        write_edge_list(out, res.best_graph);
      }
      {
        json meta = {{"run_id", run_id},
                     {"seed", vc.seed},
                     {"budget", res.trace.budget},
                     {"target", res.trace.target},
                     {"recompute_gap", res.trace.recompute_gap},
                     {"completed", res.trace.completed},
                     {"best_index", res.trace.best_index},
                     {"original_edges", inst.graph.edge_count()}};
        std::ofstream(dir / (prefix + "_meta.json")) << meta.dump(2) << '\n';
      }
      if (inst.baseline) {
        UtilityOptions local = uopts;
        local.seed = vc.seed;
        std::ofstream out(dir / (prefix + "_utility.csv"));
        write_utility_header(out);
        Graph g = inst.graph;
        std::size_t applied = 0;
        for (const auto& s : res.trace.snapshots) {
          for (; applied < s.edges_deleted; ++applied) g.remove_edge(res.trace.deletion_log[applied].u,
                                                                     res.trace.deletion_log[applied].v);
          UtilityValues u = s.edges_deleted == 0 ? inst.baseline->values : evaluate_utility(*inst.baseline, g, local);
          out << s.batch_index << ',' << s.edges_deleted << ',' << fmt(s.fraction_deleted) << ',' << fmt(s.uniqueness);
          for (auto m : kAllUtilityMetrics) out << ',' << fmt(metric_value(u, m));
          out << '\n';
        }
      }
    } catch (const std::exception& e) {
      ++failed;
      std::lock_guard lock(error_mutex);
      result.errors.push_back(spec.name + " job " + std::to_string(i) + ": " + e.what());
    }
  });
  result.failed = failed;
  write_reports(result.directory);
  return result;
}

// --------------------------------------------------------------- reports

namespace {

struct RunData {
  CsvTable trace;
  std::optional<CsvTable> utility;
  std::size_t best_index = 0;
  bool completed = true;
};

std::size_t best_row(const CsvTable& t) {
  std::size_t best = 0;
  double best_k = -1.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    double k = t.number(i, "k_anonymous");
    if (k > best_k) {
      best_k = k;
      best = i;
    }
  }
  return best;
}

double outcome_from_trace(Variant v, const CsvTable& t, std::size_t best) {
  if (v == Variant::budgeted) {
    double u0 = t.number(0, "uniqueness");
    if (u0 <= 0.0) return 1.0;
    return 1.0 - t.number(best, "uniqueness") / u0;
  }
  return 1.0 - t.number(best, "fraction_deleted");
}

struct ConfigKey {
  std::string network, measure, heuristic, variant;
  auto operator<=>(const ConfigKey&) const = default;
};

}  // namespace

ReportResult write_reports(const fs::path& dir) {
  ReportResult rep;
  json manifest;
  {
    std::ifstream in(dir / "experiment.json");
    if (!in) throw Error("report: '" + dir.string() + "' has no experiment.json");
    in >> manifest;
  }
  const auto cfg = experiment_config_from_json(manifest.at("config"));

  // Raw per-run files, grouped by configuration.
  std::map<ConfigKey, std::vector<RunData>> groups;
  for (const auto& jb : manifest.at("jobs")) {
    ConfigKey key{jb["network"], jb["measure"], jb["heuristic"], jb["variant"]};
    const auto cdir = config_dir(dir, key.network, key.measure, key.heuristic, key.variant);
    const std::string prefix = "run" + std::to_string(jb["run"].get<std::size_t>());
    const auto trace_file = cdir / (prefix + "_trace.csv");
    auto& bucket = groups[key];
    if (!fs::exists(trace_file)) {
      rep.missing.push_back(trace_file.string());
      continue;
    }
    RunData rd;
    rd.trace = read_csv(trace_file);
    if (rd.trace.rows.empty()) {
      rep.missing.push_back(trace_file.string() + " (empty)");
      continue;
    }
    rd.best_index = best_row(rd.trace);
    if (fs::exists(cdir / (prefix + "_meta.json"))) {
      json meta;
      std::ifstream(cdir / (prefix + "_meta.json")) >> meta;
      rd.completed = meta.value("completed", true);
    }
    const auto util_file = cdir / (prefix + "_utility.csv");
    if (cfg.utility) {
      const bool runtime_only = std::any_of(cfg.networks.begin(), cfg.networks.end(), [&](const NetworkSpec& n) {
        return n.name == key.network && n.runtime_only;
      });
      if (fs::exists(util_file)) {
        rd.utility = read_csv(util_file);
      } else if (!runtime_only) {
        rep.missing.push_back(util_file.string());
      }
    }
    bucket.push_back(std::move(rd));
  }
  rep.configurations = groups.size();

  // Per-configuration summary and utility aggregation.
  std::ofstream summary(dir / "summary.csv");
  summary << "network,measure,heuristic,variant,runs,complete_runs,initial_uniqueness,outcome_mean,outcome_std,"
             "best_uniqueness_mean,best_uniqueness_std,edges_deleted_mean,edges_deleted_std,runtime_ms_mean\n";
  std::ofstream timing(dir / "timing.csv");
  timing << "network,measure,heuristic,variant,batches_mean,select_ms_mean,update_ms_mean,elapsed_ms_mean,"
            "select_ms_total_mean,update_ms_total_mean,elapsed_ms_total_mean\n";
  std::ofstream pareto(dir / "pareto.csv");
  pareto << "network,measure,heuristic,variant,metric,snapshot_index,uniqueness,difference\n";

  std::map<ConfigKey, MeanStd> outcomes;
  std::map<std::string, double> initial_u;  // network|measure -> mean U(G)
  // (variant, heuristic, metric) -> [preserved networks, networks]
  std::map<std::tuple<std::string, std::string, std::string>, std::pair<std::size_t, std::size_t>> preserved_counts;

  for (const auto& [key, runs] : groups) {
    if (runs.empty()) continue;
    const Variant variant = parse_variant(key.variant);
    std::vector<double> outcome, best_u, deleted, runtime, u0;
    std::vector<double> batches, sel, upd, ela, sel_t, upd_t, ela_t;
    std::size_t complete = 0;
    for (const auto& rd : runs) {
      outcome.push_back(outcome_from_trace(variant, rd.trace, rd.best_index));
      best_u.push_back(rd.trace.number(rd.best_index, "uniqueness"));
      deleted.push_back(rd.trace.number(rd.best_index, "edges_deleted"));
      u0.push_back(rd.trace.number(0, "uniqueness"));
      double s = 0, u = 0, e = 0;
      for (std::size_t i = 1; i < rd.trace.rows.size(); ++i) {
        s += rd.trace.number(i, "select_ms");
        u += rd.trace.number(i, "update_ms");
        e += rd.trace.number(i, "elapsed_ms");
      }
      const double nb = static_cast<double>(rd.trace.rows.size() - 1);
      batches.push_back(nb);
      sel_t.push_back(s);
      upd_t.push_back(u);
      ela_t.push_back(e);
      if (nb > 0) {
        sel.push_back(s / nb);
        upd.push_back(u / nb);
        ela.push_back(e / nb);
      }
      runtime.push_back(e);
      complete += rd.completed ? 1 : 0;
    }
    auto o = mean_std(outcome);
    auto bu = mean_std(best_u);
    auto dl = mean_std(deleted);
    outcomes[key] = o;
    initial_u[key.network + "|" + key.measure] = mean_std(u0).mean;
    summary << key.network << ',' << key.measure << ',' << key.heuristic << ',' << key.variant << ',' << runs.size()
            << ',' << complete << ',' << fmt(mean_std(u0).mean) << ',' << fmt(o.mean) << ',' << fmt(o.std) << ','
            << fmt(bu.mean) << ',' << fmt(bu.std) << ',' << fmt(dl.mean) << ',' << fmt(dl.std) << ','
            << fmt(mean_std(runtime).mean) << '\n';
    timing << key.network << ',' << key.measure << ',' << key.heuristic << ',' << key.variant << ','
           << fmt(mean_std(batches).mean) << ',' << fmt(mean_std(sel).mean) << ',' << fmt(mean_std(upd).mean) << ','
           << fmt(mean_std(ela).mean) << ',' << fmt(mean_std(sel_t).mean) << ',' << fmt(mean_std(upd_t).mean) << ','
           << fmt(mean_std(ela_t).mean) << '\n';

    // Utility trajectory: mean/std per snapshot index across runs.
    std::vector<const CsvTable*> utils;
    for (const auto& rd : runs) {
      if (rd.utility && !rd.utility->rows.empty()) utils.push_back(&*rd.utility);
    }
    if (utils.empty()) continue;
    std::size_t max_rows = 0;
    for (auto* t : utils) max_rows = std::max(max_rows, t->rows.size());
    std::ofstream agg(config_dir(dir, key.network, key.measure, key.heuristic, key.variant) / "utility.csv");
    agg << "snapshot_index,fraction_deleted,uniqueness_mean,uniqueness_std";
    for (auto m : kAllUtilityMetrics) agg << ',' << to_string(m) << "_mean," << to_string(m) << "_std";
    agg << '\n';

    std::map<UtilityMetric, double> original;
    for (auto m : kAllUtilityMetrics) {
      std::vector<double> v0;
      for (auto* t : utils) v0.push_back(t->number(0, to_string(m)));
      original[m] = mean_std(v0).mean;
    }
    std::map<UtilityMetric, std::vector<ParetoPoint>> points;
    for (std::size_t row = 0; row < max_rows; ++row) {
      std::vector<double> frac, uq;
      std::map<UtilityMetric, std::vector<double>> vals;
      for (auto* t : utils) {
        if (row >= t->rows.size()) continue;
        frac.push_back(t->number(row, "fraction_deleted"));
        uq.push_back(t->number(row, "uniqueness"));
        for (auto m : kAllUtilityMetrics) vals[m].push_back(t->number(row, to_string(m)));
      }
      const auto uqs = mean_std(uq);
      agg << row << ',' << fmt(mean_std(frac).mean) << ',' << fmt(uqs.mean) << ',' << fmt(uqs.std);
      for (auto m : kAllUtilityMetrics) {
        auto ms = mean_std(vals[m]);
        agg << ',' << fmt(ms.mean) << ',' << fmt(ms.std);
        if (!std::isnan(ms.mean) && !std::isnan(original[m])) {
          points[m].push_back({uqs.mean, std::abs(ms.mean - original[m]), row});
        }
      }
      agg << '\n';
    }
    for (auto m : kAllUtilityMetrics) {
      for (const auto& p : pareto_front(points[m])) {
        pareto << key.network << ',' << key.measure << ',' << key.heuristic << ',' << key.variant << ','
               << to_string(m) << ',' << p.tag << ',' << fmt(p.uniqueness) << ',' << fmt(p.difference) << '\n';
      }
    }

    // Preserved-property matrix at each run's best snapshot. Partial
    // anonymization skips networks that start above the target.
    if (variant == Variant::partial && mean_std(u0).mean < 1.0 - cfg.alpha) continue;
    for (auto m : kAllUtilityMetrics) {
      std::vector<double> at_best;
      for (const auto& rd : runs) {
        if (!rd.utility || rd.best_index >= rd.utility->rows.size()) continue;
        at_best.push_back(rd.utility->number(rd.best_index, to_string(m)));
      }
      auto ms = mean_std(at_best);
      auto& slot = preserved_counts[{key.variant + "|" + key.measure, key.heuristic, to_string(m)}];
      slot.second += 1;
      slot.first += preserved(original[m], ms.mean, ms.std) ? 1 : 0;
    }
  }

  {
    std::ofstream out(dir / "preserved.csv");
    out << "variant,measure,heuristic,property,preserved_networks,networks,fraction\n";
    for (const auto& [k, c] : preserved_counts) {
      const auto& [vm, h, prop] = k;
      auto bar = vm.find('|');
      out << vm.substr(0, bar) << ',' << vm.substr(bar + 1) << ',' << h << ',' << prop << ',' << c.first << ','
          << c.second << ',' << fmt(c.second ? static_cast<double>(c.first) / c.second : std::nan("")) << '\n';
    }
  }

  // Improvement ratios vs ES.
  std::map<std::string, std::optional<double>> ua_ratio;  // network|measure|variant
  std::map<std::string, double> best_outcome;            // network|measure|variant
  {
    std::ofstream out(dir / "improvement.csv");
    out << "network,measure,variant,heuristic,outcome_mean,es_outcome_mean,ratio\n";
    for (const auto& [key, o] : outcomes) {
      const std::string tag = key.network + "|" + key.measure + "|" + key.variant;
      auto& best = best_outcome.try_emplace(tag, -1.0).first->second;
      best = std::max(best, o.mean);
      ConfigKey es_key{key.network, key.measure, "es", key.variant};
      auto it = outcomes.find(es_key);
      if (it == outcomes.end()) continue;
      auto ratio = improvement_ratio(o.mean, it->second.mean);
      if (key.heuristic == "ua") ua_ratio[tag] = ratio;
      out << key.network << ',' << key.measure << ',' << key.variant << ',' << key.heuristic << ',' << fmt(o.mean)
          << ',' << fmt(it->second.mean) << ',' << (ratio ? fmt(*ratio) : "-") << '\n';
    }
  }

  // Network table.
  CsvTable props;
  if (fs::exists(dir / "network_properties.csv")) props = read_csv(dir / "network_properties.csv");
  std::map<std::string, std::map<std::string, std::vector<double>>> prop_values;
  for (std::size_t i = 0; i < props.rows.size(); ++i) {
    const auto& name = props.rows[i][props.column("network")];
    for (const char* c : {"nodes", "edges", "avg_degree", "median_degree", "clustering", "transitivity",
                          "assortativity", "lcc", "diameter", "avg_distance", "runtime_only"}) {
      prop_values[name][c].push_back(props.number(i, c));
    }
  }
  const std::string measure0 = cfg.measures.empty() ? "count" : to_string(cfg.measures.front());
  {
    std::ofstream out(dir / "networks.csv");
    out << "network,nodes,edges,avg_degree,clustering,lcc,diameter,avg_distance,initial_uniqueness,"
           "ua_vs_es_full,ua_vs_es_partial,ua_vs_es_budgeted\n";
    for (const auto& n : cfg.networks) {
      auto& pv = prop_values[n.name];
      auto mean_of = [&](const char* c) { return mean_std(pv[c]).mean; };
      auto ratio = [&](const char* v) -> std::string {
        auto it = ua_ratio.find(n.name + "|" + measure0 + "|" + v);
        if (it == ua_ratio.end() || !it->second) return "-";
        return fmt(*it->second);
      };
      auto u = initial_u.find(n.name + "|" + measure0);
      out << n.name << ',' << fmt(mean_of("nodes")) << ',' << fmt(mean_of("edges")) << ',' << fmt(mean_of("avg_degree"))
          << ',' << fmt(mean_of("clustering")) << ',' << fmt(mean_of("lcc")) << ',' << fmt(mean_of("diameter")) << ','
          << fmt(mean_of("avg_distance")) << ',' << (u == initial_u.end() ? "NA" : fmt(u->second)) << ','
          << ratio("full") << ',' << ratio("partial") << ',' << ratio("budgeted") << '\n';
    }
  }

  // Correlation of network properties with the best outcome per variant.
  {
    std::ofstream out(dir / "correlation.csv");
    out << "property,variant,pearson_r,p_value,networks\n";
    const std::vector<std::pair<std::string, std::string>> properties = {
        {"unique_start", ""},          {"nodes", "nodes"},
        {"avg_degree", "avg_degree"},   {"median_degree", "median_degree"},
        {"transitivity", "transitivity"}, {"assortativity", "assortativity"},
        {"diameter", "diameter"},       {"avg_distance", "avg_distance"}};
    for (const auto& [prop, column] : properties) {
      for (auto v : {Variant::full, Variant::partial, Variant::budgeted}) {
        std::vector<double> xs, ys;
        for (const auto& n : cfg.networks) {
          if (n.runtime_only && v != Variant::budgeted) continue;
          auto bo = best_outcome.find(n.name + "|" + measure0 + "|" + to_string(v));
          if (bo == best_outcome.end()) continue;
          double x;
          if (column.empty()) {
            auto u = initial_u.find(n.name + "|" + measure0);
            x = u == initial_u.end() ? std::nan("") : u->second;
          } else {
            x = mean_std(prop_values[n.name][column]).mean;
          }
          if (std::isnan(x) || std::isnan(bo->second)) continue;
          xs.push_back(x);
          ys.push_back(bo->second);
        }
        out << prop << ',' << to_string(v) << ',';
        try {
          auto c = pearson_correlation(xs, ys);
          out << fmt(c.r) << ',' << fmt(c.p);
        } catch (const Error&) {
          out << "NA,NA";
        }
        out << ',' << xs.size() << '\n';
      }
    }
  }

  {
    std::ofstream out(dir / "missing.txt");
    for (const auto& m : rep.missing) out << m << '\n';
  }
  return rep;
}

// ---------------------------------------------------- operation compare

std::string to_string(AlterationKind k) {
  switch (k) {
    case AlterationKind::deletion:
      return "deletion";
    case AlterationKind::addition:
      return "addition";
    case AlterationKind::rewiring:
      return "rewiring";
  }
  return "?";
}

AlterationKind parse_alteration_kind(const std::string& s) {
  if (s == "deletion" || s == "delete") return AlterationKind::deletion;
  if (s == "addition" || s == "add") return AlterationKind::addition;
  if (s == "rewiring" || s == "rewire") return AlterationKind::rewiring;
  throw Error("unknown operation '" + s + "' (expected deletion, addition or rewiring)");
}

double OperationCurve::area() const { return trapezoid_area(fraction, mean_uniqueness); }

namespace {

// Edge list with O(1) uniform sampling and removal.
class EdgePool {
 public:
  explicit EdgePool(const Graph& g) : edges_(g.edges()) {
    for (std::size_t i = 0; i < edges_.size(); ++i) index_[edges_[i].key()] = i;
  }
  std::size_t size() const { return edges_.size(); }
  const Edge& at(std::size_t i) const { return edges_[i]; }
  void add(const Edge& e) {
    index_[e.key()] = edges_.size();
    edges_.push_back(e);
  }
  void remove(const Edge& e) {
    auto it = index_.find(e.key());
    std::size_t i = it->second;
    index_.erase(it);
    if (i + 1 != edges_.size()) {
      edges_[i] = edges_.back();
      index_[edges_[i].key()] = i;
    }
    edges_.pop_back();
  }

 private:
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// One random alteration of the given kind; returns the number of altered
// edges (0 when the draw was abandoned).
std::size_t random_alteration(Graph& g, EdgePool& pool, AlterationKind op, Rng& rng, std::size_t max_retries) {
  const std::size_t n = g.node_count();
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  switch (op) {
    case AlterationKind::deletion: {
      if (pool.size() == 0) return 0;
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      Edge e = pool.at(pick(rng));
      apply_alteration(g, Alteration::deletion(e.u, e.v));
      pool.remove(e);
      return 1;
    }
    case AlterationKind::addition: {
      if (g.edge_count() >= n * (n - 1) / 2) return 0;
      for (;;) {
        NodeId a = node(rng), b = node(rng);
        if (a == b || g.has_edge(a, b)) continue;
        apply_alteration(g, Alteration::addition(a, b));
        pool.add(Edge(a, b));
        return 1;
      }
    }
    case AlterationKind::rewiring: {
      if (pool.size() < 2) return 0;
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::bernoulli_distribution flip(0.5);
      for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
        Edge e1 = pool.at(pick(rng));
        Edge e2 = pool.at(pick(rng));
        NodeId v = e1.u, w = e1.v, v2 = e2.u, w2 = e2.v;
        if (flip(rng)) std::swap(v2, w2);
        if (v == v2 || v == w2 || w == v2 || w == w2) continue;
        if (g.has_edge(v, w2) || g.has_edge(v2, w)) continue;
        apply_alteration(g, Alteration::rewiring(v, w, v2, w2));
        pool.remove(e1);
        pool.remove(e2);
        pool.add(Edge(v, w2));
        pool.add(Edge(v2, w));
        return 2;
      }
      return 0;
    }
  }
  return 0;
}

}  // namespace

std::vector<OperationCurve> operation_comparison(const ModelSpec& model, const std::vector<AlterationKind>& ops,
                                                 const OperationComparisonConfig& cfg) {
  if (cfg.points < 2) throw Error("operation comparison needs at least 2 sample points");
  std::vector<OperationCurve> curves;
  for (auto op : ops) {
    OperationCurve c;
    c.operation = op;
    std::vector<std::vector<double>> samples(cfg.points);
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      const Graph start = generate_model(model, cfg.seed + r);
      const std::size_t m0 = start.edge_count();
      Graph g = start;
      EdgePool pool(g);
      Rng rng((cfg.seed + r) * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(op) + 1);
      std::size_t altered = 0;
      std::size_t consecutive_skips = 0;
      bool exhausted = false;
      double last = 0.0;
      for (std::size_t i = 0; i < cfg.points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(cfg.points - 1);
        const auto goal = static_cast<std::size_t>(std::llround(f * static_cast<double>(m0)));
        while (!exhausted && altered < goal) {
          std::size_t step = random_alteration(g, pool, op, rng, cfg.max_retries);
          if (step == 0) {
            ++c.skipped;
            if (++consecutive_skips >= cfg.max_retries) {
              std::cerr << "warning: " << to_string(op) << " stopped at " << altered << " of " << goal
                        << " altered edges (no feasible draw)\n";
              exhausted = true;
            }
            continue;
          }
          consecutive_skips = 0;
          altered += step;
        }
        if (!exhausted || i == 0) last = uniqueness(build_partition(g, cfg.measure));
        samples[i].push_back(last);
      }
    }
    for (std::size_t i = 0; i < cfg.points; ++i) {
      c.fraction.push_back(static_cast<double>(i) / static_cast<double>(cfg.points - 1));
      auto ms = mean_std(samples[i]);
      c.mean_uniqueness.push_back(ms.mean);
      c.std_uniqueness.push_back(ms.std);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

void write_operation_curves_csv(std::ostream& out, const std::vector<OperationCurve>& curves) {
  out << "operation,fraction_altered,uniqueness_mean,uniqueness_std\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.fraction.size(); ++i) {
      out << to_string(c.operation) << ',' << fmt(c.fraction[i]) << ',' << fmt(c.mean_uniqueness[i]) << ','
          << fmt(c.std_uniqueness[i]) << '\n';
    }
  }
}

}  // namespace kanon
