#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trigraph/bits.hpp"

namespace trigraph {

using Vertex = int;
using EdgeIndex = std::uint64_t;
using TripleIndex = std::uint64_t;

inline std::uint64_t num_edge_slots(int n) {
  return std::uint64_t(n) * (n - 1) / 2;
}
inline std::uint64_t num_triple_slots(int n) {
  return std::uint64_t(n) * (n - 1) * (n - 2) / 6;
}

// Colex index of the pair {u,v}, u < v: v(v-1)/2 + u.
inline EdgeIndex edge_index(Vertex u, Vertex v, int n) {
  if (u < 0 || v < 0 || u >= v || v >= n)
    throw std::invalid_argument("edge_index: need 0 <= u < v < n");
  return std::uint64_t(v) * (v - 1) / 2 + u;
}

inline std::pair<Vertex, Vertex> edge_unindex(EdgeIndex i) {
  // Largest v with v(v-1)/2 <= i.
  std::uint64_t v = std::uint64_t((1.0 + std::sqrt(1.0 + 8.0 * double(i))) / 2.0);
  while (v * (v - 1) / 2 > i) --v;
  while ((v + 1) * v / 2 <= i) ++v;
  return {Vertex(i - v * (v - 1) / 2), Vertex(v)};
}

// Colex index of the triple {u,v,w}, u < v < w: C(w,3) + C(v,2) + C(u,1).
inline TripleIndex triple_index(Vertex u, Vertex v, Vertex w, int n) {
  if (u < 0 || u >= v || v >= w || w >= n)
    throw std::invalid_argument("triple_index: need 0 <= u < v < w < n");
  return std::uint64_t(w) * (w - 1) * (w - 2) / 6 +
         std::uint64_t(v) * (v - 1) / 2 + u;
}

inline std::array<Vertex, 3> triple_unindex(TripleIndex j) {
  std::uint64_t w = 2;
  while ((w + 1) * w * (w - 1) / 6 <= j) ++w;
  j -= w * (w - 1) * (w - 2) / 6;
  std::uint64_t v = 1;
  while ((v + 1) * v / 2 <= j) ++v;
  j -= v * (v - 1) / 2;
  return {Vertex(j), Vertex(v), Vertex(w)};
}

// The three pairwise edges of a triple, as sorted edge indices.
inline std::array<EdgeIndex, 3> triangle_edges(TripleIndex t, int n) {
  auto [u, v, w] = triple_unindex(t);
  return {edge_index(u, v, n), edge_index(u, w, n), edge_index(v, w, n)};
}

// Simple undirected graph over n vertices; bit i = presence of edge i in
// colex order.
struct Graph {
  int n = 0;
  Bitset edge_bits;

  Graph() = default;
  explicit Graph(int n_) : n(n_), edge_bits(num_edge_slots(n_)) {}
  Graph(int n_, Bitset bits) : n(n_), edge_bits(std::move(bits)) {}

  bool has_edge(Vertex u, Vertex v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    return edge_bits.test(edge_index(u, v, n));
  }
  void set_edge(Vertex u, Vertex v, bool present = true) {
    if (u > v) std::swap(u, v);
    edge_bits.assign(edge_index(u, v, n), present);
  }
  std::size_t edge_count() const { return edge_bits.count(); }

  Graph with_edge(Vertex u, Vertex v, bool present = true) const {
    Graph g = *this;
    g.set_edge(u, v, present);
    return g;
  }

  // Adjacency row of u as an n-bit set.
  Bitset adjacency_row(Vertex u) const {
    Bitset row(n);
    for (Vertex v = 0; v < n; ++v)
      if (v != u && has_edge(u, v)) row.set(v);
    return row;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

  static Graph complete(int n) {
    Graph g(n);
    for (std::uint64_t i = 0; i < num_edge_slots(n); ++i) g.edge_bits.set(i);
    return g;
  }
};

// A set of vertex triples; bit j = presence of the j-th triple in colex order.
struct TriangleSet {
  int n = 0;
  Bitset tri_bits;

  TriangleSet() = default;
  explicit TriangleSet(int n_) : n(n_), tri_bits(num_triple_slots(n_)) {}
  TriangleSet(int n_, Bitset bits) : n(n_), tri_bits(std::move(bits)) {}

  std::size_t count() const { return tri_bits.count(); }

  friend bool operator==(const TriangleSet&, const TriangleSet&) = default;
};

// Edge indicator of E(X): same representation as Graph's edge bits, distinct
// role (the Y vector of a triangle set).
struct EdgeSet {
  int n = 0;
  Bitset edge_bits;

  EdgeSet() = default;
  explicit EdgeSet(int n_) : n(n_), edge_bits(num_edge_slots(n_)) {}

  std::size_t count() const { return edge_bits.count(); }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
};

// Union of the edges of all selected triples.
inline EdgeSet edge_union(const TriangleSet& x) {
  EdgeSet y(x.n);
  const std::uint64_t slots = num_triple_slots(x.n);
  for (TripleIndex t = 0; t < slots; ++t) {
    if (!x.tri_bits.test(t)) continue;
    for (EdgeIndex e : triangle_edges(t, x.n)) y.edge_bits.set(e);
  }
  return y;
}

// Vertices adjacent to both u and v, excluding u and v.
inline std::vector<Vertex> wedge_set(const Graph& g, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("wedge_set: u == v");
  std::vector<Vertex> out;
  for (Vertex w = 0; w < g.n; ++w) {
    if (w == u || w == v) continue;
    if (g.has_edge(w, u) && g.has_edge(w, v)) out.push_back(w);
  }
  return out;
}

// True iff every vertex pair has at least c(n-2) wedge vertices.
inline bool is_uniformly_2star_dense(const Graph& g, double c) {
  const double need = c * (g.n - 2);
  std::vector<Bitset> rows;
  rows.reserve(g.n);
  for (Vertex u = 0; u < g.n; ++u) rows.push_back(g.adjacency_row(u));
  for (Vertex u = 0; u < g.n; ++u)
    for (Vertex v = u + 1; v < g.n; ++v)
      if (double(intersect_count(rows[u], rows[v])) < need) return false;
  return true;
}

// Text format: first line "n m", then m lines "u v" in ascending edge index.
inline void write_graph(std::ostream& os, const Graph& g) {
  os << g.n << ' ' << g.edge_count() << '\n';
  for (EdgeIndex i = 0; i < num_edge_slots(g.n); ++i) {
    if (!g.edge_bits.test(i)) continue;
    auto [u, v] = edge_unindex(i);
    os << u << ' ' << v << '\n';
  }
}

inline Graph read_graph(std::istream& is) {
  int n;
  std::size_t m;
  if (!(is >> n >> m) || n <= 0)
    throw std::invalid_argument("read_graph: bad header");
  Graph g(n);
  for (std::size_t k = 0; k < m; ++k) {
    Vertex u, v;
    if (!(is >> u >> v)) throw std::invalid_argument("read_graph: truncated");
    if (u >= v) throw std::invalid_argument("read_graph: need u < v");
    EdgeIndex i = edge_index(u, v, n);
    if (g.edge_bits.test(i)) throw std::invalid_argument("read_graph: duplicate edge");
    g.edge_bits.set(i);
  }
  return g;
}

inline std::string to_text(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

inline Graph from_text(const std::string& s) {
  std::istringstream is(s);
  return read_graph(is);
}

}  // namespace trigraph
