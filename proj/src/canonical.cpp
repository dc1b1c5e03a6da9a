#include "kanon/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace kanon {

namespace {

// Ordered partition of the vertices. col[v] is the start position of v's
// cell in lab, so a discrete coloring is exactly a vertex ordering.
struct Coloring {
  std::vector<std::uint32_t> col;
  std::vector<std::uint32_t> lab;
  std::uint32_t cells = 0;

  bool discrete() const { return cells == lab.size(); }
};

class Search {
 public:
  Search(const std::vector<std::vector<std::uint32_t>>& adj) : adj_(adj), n_(adj.size()) {
    words_per_row_ = (n_ + 63) / 64;
    matrix_.assign(n_ * words_per_row_, 0);
    for (std::uint32_t v = 0; v < n_; ++v) {
      for (std::uint32_t w : adj_[v]) matrix_[v * words_per_row_ + w / 64] |= std::uint64_t{1} << (w % 64);
    }
    sig_.resize(n_);
    next_col_.resize(n_);
  }

  CanonicalResult run() {
    Coloring root;
    root.col.assign(n_, 0);
    root.lab.resize(n_);
    std::iota(root.lab.begin(), root.lab.end(), 0u);
    root.cells = n_ == 0 ? 0 : 1;
    refine(root);
    std::vector<std::uint32_t> path;
    descend(root, path);

    CanonicalResult out;
    out.label.words.reserve(best_code_.size() + 1);
    out.label.words.push_back(n_);
    out.label.words.insert(out.label.words.end(), best_code_.begin(), best_code_.end());
    out.canonical_order = best_lab_;
    out.leaves_visited = leaves_;
    out.automorphisms_found = automorphisms_found_;
    return out;
  }

 private:
  bool adjacent(std::uint32_t v, std::uint32_t w) const {
    return (matrix_[v * words_per_row_ + w / 64] >> (w % 64)) & 1u;
  }

  // Synchronous colour refinement until the partition is equitable.
  void refine(Coloring& c) {
    if (n_ == 0) return;
    while (!c.discrete()) {
      bool split = false;
      next_col_ = c.col;
      std::uint32_t p = 0;
      while (p < n_) {
        std::uint32_t start = p;
        std::uint32_t color = c.col[c.lab[p]];
        while (p < n_ && c.col[c.lab[p]] == color) ++p;
        if (p - start == 1) continue;
        for (std::uint32_t q = start; q < p; ++q) {
          std::uint32_t v = c.lab[q];
          auto& s = sig_[v];
          s.clear();
          for (std::uint32_t w : adj_[v]) s.push_back(c.col[w]);
          std::sort(s.begin(), s.end());
        }
        std::sort(c.lab.begin() + start, c.lab.begin() + p,
                  [&](std::uint32_t a, std::uint32_t b) { return sig_[a] < sig_[b]; });
        std::uint32_t group = start;
        for (std::uint32_t q = start; q < p; ++q) {
          if (q > start && sig_[c.lab[q]] != sig_[c.lab[q - 1]]) {
            group = q;
            ++c.cells;
            split = true;
          }
          next_col_[c.lab[q]] = group;
        }
      }
      c.col.swap(next_col_);
      if (!split) break;
    }
  }

  static Coloring individualize(const Coloring& c, std::uint32_t v) {
    Coloring out = c;
    std::uint32_t start = c.col[v];
    auto end = start;
    while (end < c.lab.size() && c.col[c.lab[end]] == start) ++end;
    auto it = std::find(out.lab.begin() + start, out.lab.begin() + end, v);
    std::iter_swap(out.lab.begin() + start, it);
    for (auto q = start + 1; q < end; ++q) out.col[out.lab[q]] = start + 1;
    ++out.cells;
    return out;
  }

  // First smallest non-singleton cell.
  std::vector<std::uint32_t> target_cell(const Coloring& c) const {
    std::uint32_t best_start = 0;
    std::uint32_t best_size = 0;
    std::uint32_t p = 0;
    while (p < n_) {
      std::uint32_t start = p;
      std::uint32_t color = c.col[c.lab[p]];
      while (p < n_ && c.col[c.lab[p]] == color) ++p;
      std::uint32_t size = p - start;
      if (size > 1 && (best_size == 0 || size < best_size)) {
        best_start = start;
        best_size = size;
      }
    }
    std::vector<std::uint32_t> cell(c.lab.begin() + best_start, c.lab.begin() + best_start + best_size);
    std::sort(cell.begin(), cell.end());
    return cell;
  }

  std::vector<std::uint64_t> encode(const Coloring& c) const {
    std::vector<std::uint64_t> code((n_ * (n_ - 1) / 2 + 63) / 64, 0);
    std::size_t bit = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      for (std::uint32_t j = i + 1; j < n_; ++j, ++bit) {
        if (adjacent(c.lab[i], c.lab[j])) code[bit / 64] |= std::uint64_t{1} << (63 - bit % 64);
      }
    }
    return code;
  }

  static std::size_t common_prefix(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
  }

  void record_automorphism(const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to) {
    ++automorphisms_found_;
    if (generators_.size() >= kMaxGenerators) return;
    std::vector<std::uint32_t> gamma(n_);
    for (std::uint32_t p = 0; p < n_; ++p) gamma[from[p]] = to[p];
    generators_.push_back(std::move(gamma));
  }

  // Returns the depth the search should resume at; a value below the
  // caller's depth means its subtree is covered by a known automorphism.
  std::size_t descend(const Coloring& c, std::vector<std::uint32_t>& path) {
    const std::size_t level = path.size();
    if (c.discrete()) return leaf(c, path);

    const auto cell = target_cell(c);
    std::vector<std::uint32_t> explored;
    std::vector<std::uint32_t> parent;
    std::size_t orbit_gens = static_cast<std::size_t>(-1);

    for (std::uint32_t v : cell) {
      if (!explored.empty()) {
        if (orbit_gens != generators_.size()) {
          compute_orbits(path, parent);
          orbit_gens = generators_.size();
        }
        const auto rv = find(parent, v);
        bool covered = std::any_of(explored.begin(), explored.end(),
                                   [&](std::uint32_t x) { return find(parent, x) == rv; });
        if (covered) continue;
      }
      Coloring child = individualize(c, v);
      refine(child);
      path.push_back(v);
      std::size_t resume = descend(child, path);
      path.pop_back();
      explored.push_back(v);
      if (resume < level) return resume;
    }
    return level;
  }

  std::size_t leaf(const Coloring& c, const std::vector<std::uint32_t>& path) {
    ++leaves_;
    auto code = encode(c);
    if (!have_first_) {
      have_first_ = true;
      first_code_ = code;
      first_lab_ = c.lab;
      first_path_ = path;
      best_code_ = std::move(code);
      best_lab_ = c.lab;
      best_path_ = path;
      return path.size();
    }
    if (code == first_code_) {
      record_automorphism(first_lab_, c.lab);
      return common_prefix(path, first_path_);
    }
    if (code == best_code_) {
      record_automorphism(best_lab_, c.lab);
      return common_prefix(path, best_path_);
    }
    if (code < best_code_) {
      best_code_ = std::move(code);
      best_lab_ = c.lab;
      best_path_ = path;
    }
    return path.size();
  }

  // Orbits of the group generated by stored automorphisms that fix the
  // current path pointwise.
  void compute_orbits(const std::vector<std::uint32_t>& path, std::vector<std::uint32_t>& parent) const {
    parent.resize(n_);
    std::iota(parent.begin(), parent.end(), 0u);
    for (const auto& gamma : generators_) {
      bool fixes = std::all_of(path.begin(), path.end(), [&](std::uint32_t x) { return gamma[x] == x; });
      if (!fixes) continue;
      for (std::uint32_t v = 0; v < n_; ++v) {
        auto a = find(parent, v);
        auto b = find(parent, gamma[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  static std::uint32_t find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  static std::uint32_t find(const std::vector<std::uint32_t>& parent, std::uint32_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  }

  static constexpr std::size_t kMaxGenerators = 512;

  const std::vector<std::vector<std::uint32_t>>& adj_;
  std::uint32_t n_;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> matrix_;
  std::vector<std::vector<std::uint32_t>> sig_;
  std::vector<std::uint32_t> next_col_;

  bool have_first_ = false;
  std::vector<std::uint64_t> first_code_, best_code_;
  std::vector<std::uint32_t> first_lab_, best_lab_;
  std::vector<std::uint32_t> first_path_, best_path_;
  std::vector<std::vector<std::uint32_t>> generators_;
  std::size_t leaves_ = 0;
  std::size_t automorphisms_found_ = 0;
};

}  // namespace

CanonicalResult canonical_labeling(const std::vector<std::vector<std::uint32_t>>& adjacency,
                                   const CanonicalOptions& opts) {
  if (opts.max_nodes != 0 && adjacency.size() > opts.max_nodes) {
    throw Error("canonical labeling: graph with " + std::to_string(adjacency.size()) +
                " nodes exceeds the configured cap of " + std::to_string(opts.max_nodes));
  }
  Search search(adjacency);
  return search.run();
}

CanonicalLabel canonical_form(const Subgraph& h, const CanonicalOptions& opts) {
  return canonical_labeling(h.adjacency, opts).label;
}

CanonicalLabel canonical_form(const Graph& g, const CanonicalOptions& opts) {
  std::vector<std::vector<std::uint32_t>> adj(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto nb = g.neighbors(v);
    adj[v].assign(nb.begin(), nb.end());
  }
  return canonical_labeling(adj, opts).label;
}

}  // namespace kanon
