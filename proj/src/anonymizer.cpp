#include "kanon/anonymizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "kanon/partition.hpp"

namespace kanon {

Variant parse_variant(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "full") return Variant::full;
  if (t == "partial") return Variant::partial;
  if (t == "budgeted") return Variant::budgeted;
  throw Error("unknown variant '" + s + "' (expected full, partial or budgeted)");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::full:
      return "full";
    case Variant::partial:
      return "partial";
    case Variant::budgeted:
      return "budgeted";
  }
  return "?";
}

RecomputeGap RecomputeGap::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      auto r = std::stoull(s);
      if (r == 0) throw Error("recompute gap must be positive");
      return absolute(r);
    }
    std::string base = s.substr(0, slash);
    auto div = std::stoull(s.substr(slash + 1));
    if (div == 0) throw Error("recompute gap divisor must be positive");
    if (base == "B" || base == "b") return budget_over(div);
    if (base == "E" || base == "e") return edges_over(div);
  } catch (const std::logic_error&) {
  }
  throw Error("cannot parse recompute gap '" + s + "' (expected N, B/N or E/N)");
}

std::string RecomputeGap::to_string() const {
  switch (base) {
    case Base::absolute:
      return std::to_string(value);
    case Base::budget:
      return "B/" + std::to_string(value);
    case Base::edges:
      return "E/" + std::to_string(value);
  }
  return "?";
}

std::size_t RecomputeGap::resolve(std::size_t budget, std::size_t edge_count) const {
  auto ceil_div = [](std::size_t a, std::size_t b) { return (a + b - 1) / b; };
  std::size_t r = 1;
  switch (base) {
    case Base::absolute:
      r = value;
      break;
    case Base::budget:
      r = ceil_div(budget, value);
      break;
    case Base::edges:
      r = ceil_div(edge_count, value);
      break;
  }
  return std::max<std::size_t>(r, 1);
}

std::pair<std::size_t, std::size_t> budget_and_target(const Graph& g, const VariantConfig& cfg) {
  const std::size_t n = g.node_count();
  const std::size_t e = g.edge_count();
  switch (cfg.variant) {
    case Variant::full:
      return {e, n};
    case Variant::partial: {
      if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw Error("partial anonymization needs alpha in (0, 1]");
      auto t = static_cast<std::size_t>(std::ceil(cfg.alpha * static_cast<double>(n) - 1e-9));
      return {e, t};
    }
    case Variant::budgeted: {
      std::size_t b;
      if (cfg.budget) {
        b = *cfg.budget;
      } else {
        if (!(cfg.budget_fraction > 0.0 && cfg.budget_fraction <= 1.0)) {
          throw Error("budget fraction must lie in (0, 1]");
        }
        b = static_cast<std::size_t>(std::llround(cfg.budget_fraction * static_cast<double>(e)));
      }
      return {b, n};
    }
  }
  throw Error("unknown variant");
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

AnonymizationResult anonymize(const Graph& g, const VariantConfig& cfg) {
  if (g.node_count() == 0) throw Error("cannot anonymize an empty graph");
  if (cfg.k < 1) throw Error("k must be >= 1");
  cfg.measure.validate();
  auto [budget, target] = budget_and_target(g, cfg);
  if (budget > g.edge_count()) {
    throw Error("budget " + std::to_string(budget) + " exceeds |E| = " + std::to_string(g.edge_count()));
  }
  if (target > g.node_count()) throw Error("target anonymity exceeds |V|");

  const auto run_start = Clock::now();
  const std::size_t original_edges = g.edge_count();
  Rng rng(cfg.seed);

  Graph current = g;
  EquivalencePartition partition = build_partition(current, cfg.measure);
  AffectedSizeCache cache;

  RunTrace trace;
  trace.budget = budget;
  trace.target = target;
  trace.recompute_gap = cfg.gap.resolve(budget, original_edges);

  auto snapshot = [&](std::size_t batch, double elapsed, double select, double update) {
    Snapshot s;
    s.batch_index = batch;
    s.edges_deleted = trace.deletion_log.size();
    s.fraction_deleted =
        original_edges == 0 ? 0.0 : static_cast<double>(s.edges_deleted) / static_cast<double>(original_edges);
    s.uniqueness = uniqueness(partition);
    s.k_anonymous = partition.k_anonymous_count(cfg.k);
    s.elapsed_ms = elapsed;
    s.select_ms = select;
    s.update_ms = update;
    trace.snapshots.push_back(s);
  };

  snapshot(0, ms_since(run_start), 0.0, 0.0);
  std::size_t best_anonymity = trace.snapshots.back().k_anonymous;
  std::size_t remaining = budget;
  std::size_t batch = 0;

  while (remaining > 0 && partition.k_anonymous_count(cfg.k) < target && current.edge_count() > 0) {
    if (cfg.runtime_limit_s > 0.0 && ms_since(run_start) >= cfg.runtime_limit_s * 1000.0) {
      trace.completed = false;
      break;
    }
    const auto batch_start = Clock::now();
    const std::size_t batch_size = std::min({trace.recompute_gap, remaining, current.edge_count()});

    auto t0 = Clock::now();
    const bool use_cache = cfg.heuristic == HeuristicKind::affected;
    auto weights = edge_weights(current, partition, cfg.measure, cfg.heuristic, batch_size,
                                use_cache ? &cache : nullptr);
    auto chosen = select_edges(weights, batch_size, rng);
    const double select_ms = ms_since(t0);

    t0 = Clock::now();
    auto affected = affected_by_deletions(current, chosen, cfg.measure);
    if (use_cache) cache.invalidate(current, affected);
    for (const Edge& e : chosen) {
      current.remove_edge(e.u, e.v);
      trace.deletion_log.push_back(e);
    }
    update_partition(current, partition, cfg.measure, affected);
    const double update_ms = ms_since(t0);

    if (cfg.verify_partition) {
      auto fresh = build_partition(current, cfg.measure);
      if (!fresh.same_as(partition)) {
        throw Error("incremental partition diverged from rebuild after batch " + std::to_string(batch + 1));
      }
    }

    remaining -= batch_size;
    ++batch;
    snapshot(batch, ms_since(batch_start), select_ms, update_ms);
    if (trace.snapshots.back().k_anonymous > best_anonymity) {
      best_anonymity = trace.snapshots.back().k_anonymous;
      trace.best_index = trace.snapshots.size() - 1;
    }
  }

  AnonymizationResult result;
  result.best_graph = replay_deletions(g, trace.deletion_log, trace.best().edges_deleted);
  result.trace = std::move(trace);
  return result;
}

Graph replay_deletions(const Graph& original, std::span<const Edge> log, std::size_t count) {
  if (count > log.size()) throw Error("replay beyond the end of the deletion log");
  Graph g = original;
  for (std::size_t i = 0; i < count; ++i) {
    if (!g.remove_edge(log[i].u, log[i].v)) {
      throw Error("deletion log entry " + to_string(log[i]) + " is not an edge");
    }
  }
  return g;
}

double run_outcome(Variant v, const RunTrace& trace, std::size_t original_edges) {
  const Snapshot& best = trace.best();
  if (v == Variant::budgeted) {
    const double u0 = trace.snapshots.front().uniqueness;
    if (u0 <= 0.0) return 1.0;
    return 1.0 - best.uniqueness / u0;
  }
  if (original_edges == 0) return 1.0;
  return static_cast<double>(original_edges - best.edges_deleted) / static_cast<double>(original_edges);
}

std::optional<double> improvement_ratio(double best_heuristic, double es) {
  if (es == 0.0) return std::nullopt;
  return best_heuristic / es;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace, const std::string& run_id, std::uint64_t seed) {
  out << "run_id,seed,batch_index,edges_deleted,fraction_deleted,uniqueness,k_anonymous,elapsed_ms,select_ms,update_ms\n";
  out << std::setprecision(10);
  // Microsecond resolution; parts round down and the total up so the
  // printed split still satisfies select + update <= elapsed.
  auto down = [](double ms) { return std::floor(ms * 1000.0) / 1000.0; };
  auto up = [](double ms) { return std::ceil(ms * 1000.0) / 1000.0; };
  for (const auto& s : trace.snapshots) {
    out << run_id << ',' << seed << ',' << s.batch_index << ',' << s.edges_deleted << ',' << s.fraction_deleted
        << ',' << s.uniqueness << ',' << s.k_anonymous << ',' << std::fixed << std::setprecision(3)
        << up(s.elapsed_ms) << ',' << down(s.select_ms) << ',' << down(s.update_ms) << std::defaultfloat
        << std::setprecision(10) << '\n';
  }
}

}  // namespace kanon
