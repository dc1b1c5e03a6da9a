#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "kanon/graph.hpp"

namespace kanon {

using Rng = std::mt19937_64;

enum class ModelKind { erdos_renyi, barabasi_albert, watts_strogatz };

struct ModelSpec {
  ModelKind kind = ModelKind::erdos_renyi;
  std::size_t n = 500;
  double avg_degree = 4.0;
  double rewire_p = 0.05;  // WS only
};

ModelKind parse_model_kind(const std::string& s);
std::string to_string(ModelKind k);

/// ER: G(n, p) with p = avg_degree / (n - 1).
/// BA: m = avg_degree / 2 edges per arriving node, seeded with a star on
///     m + 1 nodes, giving exactly m (n - m) edges.
/// WS: ring lattice of degree avg_degree, each edge rewired with rewire_p.
Graph generate_model(const ModelSpec& spec, std::uint64_t seed);

Graph erdos_renyi(std::size_t n, double p, Rng& rng);
Graph barabasi_albert(std::size_t n, std::size_t m, Rng& rng);
Graph watts_strogatz(std::size_t n, std::size_t k, double p, Rng& rng);

}  // namespace kanon
