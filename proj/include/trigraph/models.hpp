#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "trigraph/graph.hpp"
#include "trigraph/rng.hpp"

namespace trigraph {

struct ModelParams {
  int n = 0;
  double p = 0.0;
  double p_prime = 0.0;
  int k = 0;        // planted set size, 0 = unplanted
  double q = 0.0;   // planted density
  std::uint64_t seed = 0;
};

// Ordered list of (edge, resampling probability) pairs.
struct PlantedSignal {
  std::vector<std::pair<EdgeIndex, double>> entries;
};

inline Graph sample_er(int n, double p, CounterRng& rng) {
  Graph g(n);
  const std::uint64_t slots = num_edge_slots(n);
  std::uint64_t i = rng.geometric_skip(p);
  while (i < slots) {
    g.edge_bits.set(i);
    std::uint64_t skip = rng.geometric_skip(p);
    if (skip >= slots - i) break;
    i += skip + 1;
  }
  return g;
}

// G(n,p) plus each vertex triple's three edges added independently with
// probability p'. Returns the graph and the added triangle indicator.
inline std::pair<Graph, TriangleSet> sample_rgt(int n, double p, double p_prime,
                                                CounterRng& rng) {
  Graph g = sample_er(n, p, rng);
  TriangleSet t(n);
  if (p_prime > 0.0) {
    const std::uint64_t slots = num_triple_slots(n);
    std::uint64_t i = rng.geometric_skip(p_prime);
    while (i < slots) {
      t.tri_bits.set(i);
      for (EdgeIndex e : triangle_edges(i, n)) g.edge_bits.set(e);
      std::uint64_t skip = rng.geometric_skip(p_prime);
      if (skip >= slots - i) break;
      i += skip + 1;
    }
  }
  return {std::move(g), std::move(t)};
}

// Resample every edge with both endpoints in S i.i.d. Bern(q); all other
// edges unchanged.
inline Graph plant_dense_subgraph(const Graph& g, const std::vector<Vertex>& s,
                                  double q, CounterRng& rng) {
  Graph out = g;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      out.set_edge(s[a], s[b], rng.bernoulli(q));
  return out;
}

// General planted signal: each listed edge, in order, set present with its
// own probability; everything else unchanged.
inline Graph gps_apply(const Graph& g, const PlantedSignal& sig, CounterRng& rng) {
  std::unordered_set<EdgeIndex> seen;
  for (const auto& [e, p] : sig.entries) {
    if (e >= num_edge_slots(g.n) || p < 0.0 || p > 1.0)
      throw std::invalid_argument("gps_apply: bad signal entry");
    if (!seen.insert(e).second)
      throw std::invalid_argument("gps_apply: duplicate edge in signal");
  }
  Graph out = g;
  for (const auto& [e, p] : sig.entries) out.edge_bits.assign(e, rng.bernoulli(p));
  return out;
}

inline PlantedSignal clique_signal(const std::vector<Vertex>& s, double q, int n) {
  PlantedSignal sig;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      Vertex u = std::min(s[a], s[b]), v = std::max(s[a], s[b]);
      sig.entries.emplace_back(edge_index(u, v, n), q);
    }
  return sig;
}

// Random intersection graph: n subsets of [d] with i.i.d. Bern(delta)
// membership; edge (i,j) iff subsets intersect.
inline Graph sample_rig(int n, std::uint64_t d, double delta, CounterRng& rng) {
  std::vector<Bitset> sets;
  sets.reserve(n);
  for (int i = 0; i < n; ++i) {
    Bitset s(d == 0 ? 1 : d);
    if (d > 0) {
      std::uint64_t j = rng.geometric_skip(delta);
      while (j < d) {
        s.set(j);
        std::uint64_t skip = rng.geometric_skip(delta);
        if (skip >= d - j) break;
        j += skip + 1;
      }
    }
    sets.push_back(std::move(s));
  }
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (intersect_count(sets[u], sets[v]) > 0) g.set_edge(u, v);
  return g;
}

// Uniformly random k-subset of [n]; convenience for callers that do not
// care where the planted set lands.
inline std::vector<Vertex> random_vertex_subset(int n, int k, CounterRng& rng) {
  if (k < 0 || k > n) throw std::invalid_argument("random_vertex_subset: bad k");
  std::vector<Vertex> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  for (int i = 0; i < k; ++i) {
    std::uint64_t j = i + rng.uniform_below(n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace trigraph
