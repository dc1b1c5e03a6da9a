#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kanon/anonymizer.hpp"
#include "kanon/generators.hpp"
#include "kanon/graph.hpp"
#include "kanon/utility.hpp"

namespace kanon {

/// A dataset on local disk or a model graph regenerated per run.
struct NetworkSpec {
  std::string name;
  std::optional<std::string> path;
  std::optional<std::string> url;     // informational; never fetched
  std::optional<std::string> sha256;  // verified when present
  std::optional<ModelSpec> model;
  bool runtime_only = false;          // budgeted variant only, no utility
};

struct ExperimentConfig {
  std::vector<NetworkSpec> networks;
  std::vector<MeasureType> measures{MeasureType::count};
  std::vector<HeuristicKind> heuristics{HeuristicKind::edge_sampling, HeuristicKind::degree, HeuristicKind::affected,
                                        HeuristicKind::unique, HeuristicKind::unique_affected};
  std::vector<Variant> variants{Variant::full, Variant::partial, Variant::budgeted};
  std::size_t k = 2;
  std::uint32_t d = 1;
  std::size_t runs = 5;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds;  // explicit per-run seeds, overrides `seed`
  RecomputeGap gap = RecomputeGap::budget_over(100);
  double budget_fraction = 0.05;
  double alpha = 0.95;
  double runtime_limit_s = 1800.0;
  bool utility = true;
  std::size_t community_runs = 10;
  std::size_t threads = 1;
  std::string output_dir = "kanon-out";

  std::uint64_t run_seed(std::size_t run) const;
  void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig load_experiment_config(const std::filesystem::path& file);

/// Output root: $KANON_OUTPUT_ROOT/<dir> for relative dirs when the
/// variable is set.
std::filesystem::path resolve_output_dir(const std::string& dir);

/// Loads a dataset (checksum verified) or generates the model for `run`.
Graph load_network(const NetworkSpec& spec, std::uint64_t run_seed);

std::string sha256_file(const std::filesystem::path& file);

struct ExperimentResult {
  std::filesystem::path directory;
  std::size_t jobs = 0;
  std::size_t failed = 0;
  std::vector<std::string> errors;
};

/// Runs every (network x measure x heuristic x variant x run) job on a
/// worker pool and writes traces, utility trajectories, best graphs and the
/// aggregated reports.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct ReportResult {
  std::vector<std::string> missing;
  std::size_t configurations = 0;
};

/// Aggregates a finished experiment directory from its raw per-run files.
ReportResult write_reports(const std::filesystem::path& dir);

/// Structural properties used in the network table and the correlation
/// analysis.
struct NetworkProperties {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double avg_degree = 0.0;
  double median_degree = 0.0;
  double clustering = 0.0;
  double transitivity = 0.0;
  double assortativity = 0.0;
  double lcc = 0.0;
  double diameter = 0.0;  // NaN when skipped
  double avg_distance = 0.0;
};

NetworkProperties network_properties(const Graph& g, std::size_t exact_cap = 20000);
double transitivity(const Graph& g);
double degree_assortativity(const Graph& g);

// Random-alteration comparison (deletion / addition / rewiring).

struct OperationCurve {
  AlterationKind operation = AlterationKind::deletion;
  std::vector<double> fraction;
  std::vector<double> mean_uniqueness;
  std::vector<double> std_uniqueness;
  std::size_t skipped = 0;  // rewiring draws abandoned after bounded retries
  double area() const;
};

struct OperationComparisonConfig {
  MeasureKind measure = MeasureKind::count(1);
  std::size_t runs = 5;
  std::uint64_t seed = 1;
  std::size_t points = 101;
  std::size_t max_retries = 100;
};

std::vector<OperationCurve> operation_comparison(const ModelSpec& model, const std::vector<AlterationKind>& ops,
                                                 const OperationComparisonConfig& cfg);

std::string to_string(AlterationKind k);
AlterationKind parse_alteration_kind(const std::string& s);

void write_operation_curves_csv(std::ostream& out, const std::vector<OperationCurve>& curves);

/// Reads a simple CSV with a header row into column-name -> values.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};
CsvTable read_csv(const std::filesystem::path& file);

}  // namespace kanon
