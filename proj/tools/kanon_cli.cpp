// kanon: command-line front end for the anonymization library.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <unordered_map>

#include "CLI11.hpp"

#include "kanon/anonymizer.hpp"
#include "kanon/generators.hpp"
#include "kanon/graph.hpp"
#include "kanon/harness.hpp"
#include "kanon/partition.hpp"
#include "kanon/utility.hpp"

namespace fs = std::filesystem;
using namespace kanon;

namespace {

struct AnonymizeArgs {
  std::string input;
  std::string output = "anonymize-out";
  std::string variant = "budgeted";
  std::string measure = "count";
  std::string heuristic = "ua";
  std::string gap = "B/100";
  std::size_t k = 2;
  std::uint32_t d = 1;
  double budget_frac = 0.05;
  std::optional<std::size_t> budget;
  double alpha = 0.95;
  std::uint64_t seed = 1;
  double runtime_limit = 0.0;
  bool verify = false;
};

// Maps `other` onto the node ids of `reference` by label. Nodes unknown to
// the reference are an error; reference nodes absent from `other` become
// isolated.
Graph align_to(const Graph& reference, const Graph& other) {
  std::unordered_map<std::string, NodeId> ids;
  for (NodeId v = 0; v < reference.node_count(); ++v) ids.emplace(reference.label(v), v);
  Graph out(reference.node_count());
  auto lookup = [&](NodeId v) {
    auto it = ids.find(other.label(v));
    if (it == ids.end()) throw Error("node '" + other.label(v) + "' does not occur in the original graph");
    return it->second;
  };
  for (const Edge& e : other.edges()) out.add_edge(lookup(e.u), lookup(e.v));
  for (NodeId v = 0; v < other.node_count(); ++v) lookup(v);
  std::vector<std::string> labels;
  for (NodeId v = 0; v < reference.node_count(); ++v) labels.push_back(reference.label(v));
  out.set_labels(std::move(labels));
  return out;
}

void print_utility(const UtilityValues& u) {
  for (auto m : kAllUtilityMetrics) std::cout << std::left << std::setw(22) << to_string(m) << metric_value(u, m) << '\n';
}

int cmd_anonymize(const AnonymizeArgs& a) {
  const Graph g = parse_edge_list_file(a.input);
  VariantConfig cfg;
  cfg.variant = parse_variant(a.variant);
  cfg.alpha = a.alpha;
  cfg.budget = a.budget;
  cfg.budget_fraction = a.budget_frac;
  cfg.k = a.k;
  cfg.measure = MeasureKind{parse_measure_type(a.measure), a.d, {}};
  cfg.heuristic = parse_heuristic(a.heuristic);
  cfg.gap = RecomputeGap::parse(a.gap);
  cfg.seed = a.seed;
  cfg.runtime_limit_s = a.runtime_limit;
  cfg.verify_partition = a.verify;

  auto res = anonymize(g, cfg);
  const fs::path dir = resolve_output_dir(a.output);
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "trace.csv");
    write_trace_csv(out, res.trace, fs::path(a.input).stem().string(), a.seed);
  }
  {
    std::ofstream out(dir / "best.edges");
    write_edge_list(out, res.best_graph);
  }
  const auto& t = res.trace;
  const auto& first = t.snapshots.front();
  const auto& best = t.best();
  std::cout << "nodes               " << g.node_count() << '\n'
            << "edges               " << g.edge_count() << '\n'
            << "budget              " << t.budget << '\n'
            << "target              " << t.target << '\n'
            << "recompute gap       " << t.recompute_gap << '\n'
            << "initial uniqueness  " << first.uniqueness << '\n'
            << "best uniqueness     " << best.uniqueness << '\n'
            << "best k-anonymous    " << best.k_anonymous << '\n'
            << "edges deleted       " << best.edges_deleted << '\n'
            << "outcome             " << run_outcome(cfg.variant, t, g.edge_count()) << '\n'
            << "completed           " << (t.completed ? "yes" : "no (runtime limit)") << '\n'
            << "output              " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-anonymity for graphs by heuristic edge deletion"};
  app.require_subcommand(1);

  // anonymize
  AnonymizeArgs an;
  auto* anon = app.add_subcommand("anonymize", "Anonymize one graph and write its trace and best graph");
  anon->add_option("input", an.input, "Edge list file")->required()->check(CLI::ExistingFile);
  anon->add_option("-o,--output", an.output, "Output directory");
  anon->add_option("--variant", an.variant, "full | partial | budgeted");
  anon->add_option("--measure", an.measure, "degree | count | dk | vrq");
  anon->add_option("--heuristic", an.heuristic, "es | degree | aff | unique | ua");
  anon->add_option("--recompute-gap", an.gap, "Deletions per batch: N, B/N or E/N");
  anon->add_option("--k", an.k, "Anonymity threshold");
  anon->add_option("--d", an.d, "Neighborhood radius");
  anon->add_option("--budget-frac", an.budget_frac, "Budget as a fraction of |E|");
  anon->add_option("--budget", an.budget, "Absolute budget (overrides --budget-frac)");
  anon->add_option("--alpha", an.alpha, "Partial target fraction of k-anonymous nodes");
  anon->add_option("--seed", an.seed, "Random seed");
  anon->add_option("--runtime-limit", an.runtime_limit, "Seconds; 0 disables");
  anon->add_flag("--verify", an.verify, "Rebuild the partition after each batch and compare");

  // measure
  std::string m_input, m_measure = "count", m_partition;
  std::uint32_t m_d = 1;
  std::size_t m_k = 2;
  auto* meas = app.add_subcommand("measure", "Initial uniqueness and equivalence partition");
  meas->add_option("input", m_input, "Edge list file")->required()->check(CLI::ExistingFile);
  meas->add_option("--measure", m_measure, "degree | count | dk | vrq");
  meas->add_option("--d", m_d, "Neighborhood radius");
  meas->add_option("--k", m_k, "Anonymity threshold");
  meas->add_option("--partition", m_partition, "Write node,class,size CSV here");

  // utility
  std::string u_orig, u_anon;
  UtilityOptions u_opts;
  auto* util = app.add_subcommand("utility", "Compare utility metrics of an anonymized graph with its original");
  util->add_option("original", u_orig, "Original edge list")->required()->check(CLI::ExistingFile);
  util->add_option("anonymized", u_anon, "Anonymized edge list")->required()->check(CLI::ExistingFile);
  util->add_option("--seed", u_opts.seed, "Seed for communities and path sampling");
  util->add_option("--community-runs", u_opts.community_runs, "Louvain runs for consensus");
  util->add_option("--top-n", u_opts.top_n, "Betweenness top set size");

  // generate
  ModelSpec g_spec;
  std::string g_model = "er", g_output;
  std::uint64_t g_seed = 1;
  auto* gen = app.add_subcommand("generate", "Generate a model graph");
  gen->add_option("--model", g_model, "er | ba | ws");
  gen->add_option("--n", g_spec.n, "Number of nodes");
  gen->add_option("--avg-degree", g_spec.avg_degree, "Average degree");
  gen->add_option("--rewire-p", g_spec.rewire_p, "WS rewiring probability");
  gen->add_option("--seed", g_seed, "Random seed");
  gen->add_option("-o,--output", g_output, "Output edge list (stdout if omitted)");

  // compare-ops
  ModelSpec c_spec;
  std::string c_model = "ba", c_output, c_measure = "count";
  std::vector<std::string> c_ops{"deletion", "addition", "rewiring"};
  OperationComparisonConfig c_cfg;
  std::uint32_t c_d = 1;
  auto* cmp = app.add_subcommand("compare-ops", "Uniqueness under random deletion, addition and rewiring");
  cmp->add_option("--model", c_model, "er | ba | ws");
  cmp->add_option("--n", c_spec.n, "Number of nodes");
  cmp->add_option("--avg-degree", c_spec.avg_degree, "Average degree");
  cmp->add_option("--rewire-p", c_spec.rewire_p, "WS rewiring probability");
  cmp->add_option("--ops", c_ops, "Operations to compare")->delimiter(',');
  cmp->add_option("--runs", c_cfg.runs, "Runs to average");
  cmp->add_option("--points", c_cfg.points, "Sample points over [0, 1]");
  cmp->add_option("--seed", c_cfg.seed, "Base seed");
  cmp->add_option("--measure", c_measure, "degree | count | dk | vrq");
  cmp->add_option("--d", c_d, "Neighborhood radius");
  cmp->add_option("-o,--output", c_output, "Curve CSV (relative to the output root)");

  // experiment
  std::string e_config;
  std::optional<std::uint64_t> e_seed;
  std::optional<std::size_t> e_threads, e_k, e_runs;
  std::optional<std::uint32_t> e_d;
  std::optional<std::string> e_gap, e_output;
  std::optional<double> e_budget, e_alpha;
  std::vector<std::string> e_variants, e_measures, e_heuristics;
  bool e_no_utility = false;
  auto* exp = app.add_subcommand("experiment", "Run a configured experiment grid");
  exp->add_option("config", e_config, "JSON experiment config")->required()->check(CLI::ExistingFile);
  exp->add_option("--seed", e_seed, "Base seed (run r uses seed + r)");
  exp->add_option("--threads", e_threads, "Worker threads");
  exp->add_option("--recompute-gap", e_gap, "N, B/N or E/N");
  exp->add_option("--budget-frac", e_budget, "Budget fraction");
  exp->add_option("--alpha", e_alpha, "Partial target");
  exp->add_option("--variant", e_variants, "Variants")->delimiter(',');
  exp->add_option("--measure", e_measures, "Measures")->delimiter(',');
  exp->add_option("--heuristic", e_heuristics, "Heuristics")->delimiter(',');
  exp->add_option("--k", e_k, "Anonymity threshold");
  exp->add_option("--d", e_d, "Neighborhood radius");
  exp->add_option("--runs", e_runs, "Runs per configuration");
  exp->add_option("-o,--output", e_output, "Output directory");
  exp->add_flag("--no-utility", e_no_utility, "Skip utility trajectories");

  // report
  std::string r_dir;
  auto* rep = app.add_subcommand("report", "Aggregate a finished experiment directory");
  rep->add_option("dir", r_dir, "Experiment directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*anon) return cmd_anonymize(an);

    if (*meas) {
      const Graph g = parse_edge_list_file(m_input);
      const MeasureKind m{parse_measure_type(m_measure), m_d, {}};
      const auto p = build_partition(g, m);
      const auto s = uniqueness_stats(p, g);
      std::cout << "nodes          " << g.node_count() << '\n'
                << "edges          " << g.edge_count() << '\n'
                << "classes        " << p.classes().size() << '\n'
                << "unique nodes   " << s.unique_nodes.size() << '\n'
                << "unique edges   " << s.unique_edges.size() << '\n'
                << "uniqueness     " << s.uniqueness << '\n'
                << "k-anonymous    " << k_anonymous_count(p, m_k) << " (k=" << m_k << ")\n";
      if (!m_partition.empty()) {
        std::ofstream out(resolve_output_dir(m_partition));
        write_partition_csv(out, p, g);
      }
      return 0;
    }

    if (*util) {
      const Graph a = parse_edge_list_file(u_orig);
      const Graph b = align_to(a, parse_edge_list_file(u_anon));
      const auto base = utility_baseline(a, u_opts);
      std::cout << "# original\n";
      print_utility(base.values);
      std::cout << "# anonymized\n";
      print_utility(evaluate_utility(base, b, u_opts));
      return 0;
    }

    if (*gen) {
      g_spec.kind = parse_model_kind(g_model);
      const Graph g = generate_model(g_spec, g_seed);
      if (g_output.empty()) {
        write_edge_list(std::cout, g);
      } else {
        std::ofstream out(resolve_output_dir(g_output));
        write_edge_list(out, g);
      }
      return 0;
    }

    if (*cmp) {
      c_spec.kind = parse_model_kind(c_model);
      c_cfg.measure = MeasureKind{parse_measure_type(c_measure), c_d, {}};
      std::vector<AlterationKind> ops;
      for (const auto& o : c_ops) ops.push_back(parse_alteration_kind(o));
      const auto curves = operation_comparison(c_spec, ops, c_cfg);
      for (const auto& c : curves) {
        std::cout << std::left << std::setw(10) << to_string(c.operation) << " area " << c.area() << "  skipped "
                  << c.skipped << '\n';
      }
      if (!c_output.empty()) {
        const auto path = resolve_output_dir(c_output);
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream out(path);
        write_operation_curves_csv(out, curves);
      }
      return 0;
    }

    if (*exp) {
      auto cfg = load_experiment_config(e_config);
      if (e_seed) {
        cfg.seed = *e_seed;
        cfg.seeds.clear();
      }
      if (e_threads) cfg.threads = *e_threads;
      if (e_gap) cfg.gap = RecomputeGap::parse(*e_gap);
      if (e_budget) cfg.budget_fraction = *e_budget;
      if (e_alpha) cfg.alpha = *e_alpha;
      if (e_k) cfg.k = *e_k;
      if (e_d) cfg.d = *e_d;
      if (e_runs) {
        cfg.runs = *e_runs;
        cfg.seeds.clear();
      }
      if (e_output) cfg.output_dir = *e_output;
      if (e_no_utility) cfg.utility = false;
      if (!e_variants.empty()) {
        cfg.variants.clear();
        for (const auto& v : e_variants) cfg.variants.push_back(parse_variant(v));
      }
      if (!e_measures.empty()) {
        cfg.measures.clear();
        for (const auto& m : e_measures) cfg.measures.push_back(parse_measure_type(m));
      }
      if (!e_heuristics.empty()) {
        cfg.heuristics.clear();
        for (const auto& h : e_heuristics) cfg.heuristics.push_back(parse_heuristic(h));
      }
      const auto res = run_experiment(cfg);
      std::cout << "jobs     " << res.jobs << '\n' << "failed   " << res.failed << '\n'
                << "output   " << res.directory.string() << '\n';
      for (const auto& e : res.errors) std::cerr << "error: " << e << '\n';
      return res.failed == 0 ? 0 : 1;
    }

    if (*rep) {
      const auto r = write_reports(resolve_output_dir(r_dir));
      std::cout << "configurations  " << r.configurations << '\n' << "missing files   " << r.missing.size() << '\n';
      for (const auto& m : r.missing) std::cerr << "missing: " << m << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
