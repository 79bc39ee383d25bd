#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <utility>
#include <vector>

#include "trigraph/graph.hpp"
#include "trigraph/rng.hpp"

namespace trigraph {

// The triangle Gibbs distribution on a fixed graph: weights
// (p'/(1-p'))^{|x|} p^{-e(x)} over triangle subsets supported on G.
struct GibbsSpec {
  Graph graph;
  double p = 0.5;
  double p_prime = 0.1;
  // Triples whose three edges all lie in G, with their edge indices cached.
  std::vector<TripleIndex> candidates;
  std::vector<std::array<EdgeIndex, 3>> candidate_edges;

  static GibbsSpec make(Graph g, double p, double p_prime) {
    GibbsSpec spec;
    spec.p = p;
    spec.p_prime = p_prime;
    const int n = g.n;
    // Enumerate triangles via adjacency-row intersections.
    std::vector<Bitset> rows;
    rows.reserve(n);
    for (Vertex u = 0; u < n; ++u) rows.push_back(g.adjacency_row(u));
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (!g.has_edge(u, v)) continue;
        for (Vertex w = v + 1; w < n; ++w) {
          if (rows[u].test(w) && rows[v].test(w)) {
            TripleIndex t = triple_index(u, v, w, n);
            spec.candidates.push_back(t);
            spec.candidate_edges.push_back(triangle_edges(t, n));
          }
        }
      }
    }
    spec.graph = std::move(g);
    return spec;
  }
};

// Chain configuration over the candidate triples plus per-edge counts of
// selected triples containing each edge; e(x) = #{e : m_e > 0}.
struct ChainState {
  Bitset selected;                      // one bit per candidate position
  std::vector<std::uint32_t> edge_mult; // per edge slot
  std::size_t num_selected = 0;

  static ChainState empty(const GibbsSpec& spec) {
    ChainState st;
    st.selected = Bitset(spec.candidates.size());
    st.edge_mult.assign(num_edge_slots(spec.graph.n), 0);
    return st;
  }

  TriangleSet to_triangle_set(const GibbsSpec& spec) const {
    TriangleSet x(spec.graph.n);
    for (std::size_t i = 0; i < spec.candidates.size(); ++i)
      if (selected.test(i)) x.tri_bits.set(spec.candidates[i]);
    return x;
  }
};

// count * logv with the convention 0 * (-inf) = 0, for log-space weights at
// the p' -> 0 boundary.
inline double count_times_log(std::size_t count, double logv) {
  return count == 0 ? 0.0 : double(count) * logv;
}

// Unnormalized log weight |x| log(p'/(1-p')) - e(x) log p; -inf when x is
// not supported on G.
inline double log_weight(const GibbsSpec& spec, const TriangleSet& x) {
  const std::uint64_t slots = num_triple_slots(x.n);
  std::size_t size = 0;
  std::vector<bool> covered(num_edge_slots(x.n), false);
  for (TripleIndex t = 0; t < slots; ++t) {
    if (!x.tri_bits.test(t)) continue;
    ++size;
    for (EdgeIndex e : triangle_edges(t, x.n)) {
      if (!spec.graph.edge_bits.test(e))
        return -std::numeric_limits<double>::infinity();
      covered[e] = true;
    }
  }
  std::size_t ex = 0;
  for (bool c : covered) ex += c;
  return count_times_log(size, std::log(spec.p_prime / (1.0 - spec.p_prime))) -
         count_times_log(ex, std::log(spec.p));
}

// Conditional P(X_t = 1 | rest) = a / (1 - p' + a) with a = p' p^{-j} and
// j the number of t's edges uncovered by the other selected triples.
inline double conditional_from_uncovered(double p, double p_prime, int j) {
  const double a = p_prime * std::pow(p, -j);
  return a / (1.0 - p_prime + a);
}

inline double conditional_marginal(const GibbsSpec& spec, const ChainState& st,
                                   std::size_t pos) {
  if (pos >= spec.candidates.size()) return 0.0;
  const bool on = st.selected.test(pos);
  int j = 0;
  for (EdgeIndex e : spec.candidate_edges[pos]) {
    std::uint32_t m = st.edge_mult[e];
    if (on) --m;  // exclude t itself
    if (m == 0) ++j;
  }
  return conditional_from_uncovered(spec.p, spec.p_prime, j);
}

// Version taking a triple index rather than a candidate position; returns 0
// for non-candidate triples.
inline double conditional_marginal_triple(const GibbsSpec& spec,
                                          const ChainState& st, TripleIndex t) {
  for (std::size_t i = 0; i < spec.candidates.size(); ++i)
    if (spec.candidates[i] == t) return conditional_marginal(spec, st, i);
  return 0.0;
}

namespace detail {
inline void flip_candidate(const GibbsSpec& spec, ChainState& st,
                           std::size_t pos, bool value) {
  const bool cur = st.selected.test(pos);
  if (cur == value) return;
  st.selected.assign(pos, value);
  const int d = value ? 1 : -1;
  for (EdgeIndex e : spec.candidate_edges[pos]) st.edge_mult[e] += d;
  st.num_selected += d;
}
}  // namespace detail

// One Glauber update: uniform random candidate triple, bit resampled from
// its conditional marginal. No-op on triangle-free inputs.
inline void glauber_step(const GibbsSpec& spec, ChainState& st, CounterRng& rng) {
  const std::size_t nc = spec.candidates.size();
  if (nc == 0) return;
  const std::size_t pos = rng.uniform_below(nc);
  const double m = conditional_marginal(spec, st, pos);
#ifndef NDEBUG
  // Bounded-marginal invariant: p' <= m <= p' p^{-3} / (1 - p' + p' p^{-3}).
  assert(m >= spec.p_prime - 1e-12);
  assert(m <= conditional_from_uncovered(spec.p, spec.p_prime, 3) + 1e-12);
#endif
  detail::flip_candidate(spec, st, pos, rng.uniform() < m);
}

constexpr long kAutoSteps = -1;

// ceil(c_mix * N ln N) Glauber steps, at least one.
inline long auto_steps(std::size_t num_candidates, double c_mix = 8.0) {
  if (num_candidates == 0) return 0;
  const double n = double(num_candidates);
  return std::max<long>(1, long(std::ceil(c_mix * n * std::log(std::max(n, 2.0)))));
}

struct GlauberOptions {
  long steps = kAutoSteps;
  double c_mix = 8.0;
};

inline TriangleSet glauber_sample(const GibbsSpec& spec, const GlauberOptions& opts,
                                  CounterRng& rng) {
  if (double(spec.graph.n) * spec.p_prime > 0.5)
    std::fprintf(stderr,
                 "trigraph: warning: n*p' = %g > 0.5, outside the mixing "
                 "guarantee regime\n",
                 double(spec.graph.n) * spec.p_prime);
  ChainState st = ChainState::empty(spec);
  long steps = opts.steps == kAutoSteps
                   ? auto_steps(spec.candidates.size(), opts.c_mix)
                   : opts.steps;
  for (long s = 0; s < steps; ++s) glauber_step(spec, st, rng);
  return st.to_triangle_set(spec);
}

// Per-candidate marginal estimates from a single chain: AUTO burn-in, then
// `samples` retained states thinned `thin` steps apart. Standard errors via
// batch means (100 batches) so thinning correlation is accounted for.
struct MarginalEstimate {
  TripleIndex triple;
  double estimate;
  double stderr_;
};

inline std::vector<MarginalEstimate> glauber_marginals(
    const GibbsSpec& spec, std::size_t samples, const GlauberOptions& opts,
    CounterRng& rng, long thin = 0) {
  const std::size_t nc = spec.candidates.size();
  std::vector<MarginalEstimate> out;
  if (nc == 0) return out;
  if (thin <= 0) thin = long(nc);
  ChainState st = ChainState::empty(spec);
  const long burn = opts.steps == kAutoSteps ? auto_steps(nc, opts.c_mix) : opts.steps;
  for (long s = 0; s < burn; ++s) glauber_step(spec, st, rng);

  const std::size_t num_batches = std::min<std::size_t>(100, std::max<std::size_t>(samples, 1));
  std::vector<std::vector<double>> batch_sums(nc, std::vector<double>(num_batches, 0.0));
  std::vector<std::size_t> batch_counts(num_batches, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    for (long k = 0; k < thin; ++k) glauber_step(spec, st, rng);
    const std::size_t b = s * num_batches / samples;
    ++batch_counts[b];
    for (std::size_t i = 0; i < nc; ++i)
      if (st.selected.test(i)) batch_sums[i][b] += 1.0;
  }
  for (std::size_t i = 0; i < nc; ++i) {
    double mean = 0.0;
    for (std::size_t b = 0; b < num_batches; ++b) mean += batch_sums[i][b];
    mean /= double(samples);
    double var = 0.0;
    for (std::size_t b = 0; b < num_batches; ++b) {
      const double bm = batch_sums[i][b] / double(batch_counts[b]);
      var += (bm - mean) * (bm - mean);
    }
    var /= double(num_batches - 1);
    out.push_back({spec.candidates[i], mean, std::sqrt(var / double(num_batches))});
  }
  return out;
}

}  // namespace trigraph
