#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kanon/graph.hpp"
#include "kanon/heuristics.hpp"
#include "kanon/measures.hpp"

namespace kanon {

enum class Variant { full, partial, budgeted };

Variant parse_variant(const std::string& s);
std::string to_string(Variant v);

/// Number of deletions between partition recomputations. Either an
/// absolute count or ceil(base / divisor) with base = B or |E|.
struct RecomputeGap {
  enum class Base { absolute, budget, edges };
  Base base = Base::budget;
  std::size_t value = 100;  // count for absolute, divisor otherwise

  static RecomputeGap absolute(std::size_t r) { return {Base::absolute, r}; }
  static RecomputeGap budget_over(std::size_t div) { return {Base::budget, div}; }
  static RecomputeGap edges_over(std::size_t div) { return {Base::edges, div}; }

  /// Accepts "7", "B/100", "E/200".
  static RecomputeGap parse(const std::string& s);
  std::string to_string() const;
  std::size_t resolve(std::size_t budget, std::size_t edge_count) const;
};

struct VariantConfig {
  Variant variant = Variant::budgeted;
  double alpha = 0.95;               // partial
  std::optional<std::size_t> budget; // budgeted; defaults to round(budget_fraction * |E|)
  double budget_fraction = 0.05;
  std::size_t k = 2;
  MeasureKind measure = MeasureKind::count(1);
  HeuristicKind heuristic = HeuristicKind::unique_affected;
  RecomputeGap gap = RecomputeGap::budget_over(100);
  std::uint64_t seed = 1;
  double runtime_limit_s = 0.0;  // 0 = none
  /// Rebuild the partition from scratch after every batch and compare (slow).
  bool verify_partition = false;
};

struct Snapshot {
  std::size_t batch_index = 0;
  std::size_t edges_deleted = 0;
  double fraction_deleted = 0.0;
  double uniqueness = 0.0;
  std::size_t k_anonymous = 0;
  double elapsed_ms = 0.0;
  double select_ms = 0.0;
  double update_ms = 0.0;
};

struct RunTrace {
  std::vector<Snapshot> snapshots;
  std::size_t best_index = 0;
  std::size_t budget = 0;
  std::size_t target = 0;
  std::size_t recompute_gap = 1;
  bool completed = true;  // false when the runtime limit stopped the run
  /// Edges in deletion order; snapshot i covers the first
  /// snapshots[i].edges_deleted entries.
  std::vector<Edge> deletion_log;

  const Snapshot& best() const { return snapshots.at(best_index); }
};

struct AnonymizationResult {
  Graph best_graph;
  RunTrace trace;
};

/// Resolved (B, T) for a graph.
std::pair<std::size_t, std::size_t> budget_and_target(const Graph& g, const VariantConfig& cfg);

/// Batched heuristic edge deletion until the budget is spent or the target
/// number of k-anonymous nodes is reached. Returns the snapshot graph with
/// the most k-anonymous nodes (earliest on ties).
AnonymizationResult anonymize(const Graph& g, const VariantConfig& cfg);

/// Original graph minus the first `count` logged deletions.
Graph replay_deletions(const Graph& original, std::span<const Edge> log, std::size_t count);

/// Result metric of a run: preserved-edge fraction |E'|/|E| for full and
/// partial, anonymized-unique fraction 1 - U(G')/U(G) for budgeted.
double run_outcome(Variant v, const RunTrace& trace, std::size_t original_edges);

/// Best heuristic's metric divided by ES's metric; empty when ES's metric
/// is zero (reported as "-").
std::optional<double> improvement_ratio(double best_heuristic, double es);

void write_trace_csv(std::ostream& out, const RunTrace& trace, const std::string& run_id, std::uint64_t seed);

}  // namespace kanon
