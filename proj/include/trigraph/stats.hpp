#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trigraph/graph.hpp"
#include "trigraph/oracle.hpp"
#include "trigraph/rng.hpp"

namespace trigraph {

// Signed triangle count tau = sum over triples of the centered edge
// products (A_ij - q)(A_jk - q)(A_ik - q). Evaluated per vertex pair via
// adjacency-row intersections restricted to w > v, so the triple loop costs
// O(n^2 n/64) word operations.
inline double signed_triangle_count(const Graph& g, double q) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("signed_triangle_count: bad q");
  const int n = g.n;
  std::vector<Bitset> rows;
  rows.reserve(n);
  for (Vertex u = 0; u < n; ++u) rows.push_back(g.adjacency_row(u));
  // suffix[v]: bitset of vertices w > v.
  std::vector<Bitset> suffix(n, Bitset(n));
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = v + 1; w < n; ++w) suffix[v].set(w);

  double tau = 0.0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      Bitset both = rows[u];
      both &= rows[v];
      both &= suffix[v];
      Bitset either = rows[u];
      either |= rows[v];
      either &= suffix[v];
      const double total = double(n - 1 - v);
      const double c11 = double(both.count());
      const double c10or01 = double(either.count()) - c11;
      const double c00 = total - c11 - c10or01;
      const double pair_sum = c11 * (1.0 - q) * (1.0 - q) -
                              c10or01 * q * (1.0 - q) + c00 * q * q;
      const double a = (g.has_edge(u, v) ? 1.0 : 0.0) - q;
      tau += a * pair_sum;
    }
  }
  return tau;
}

// Change in tau when edge (u,v) is toggled to `present`: the sum over the
// n-2 incident triples of the centered product of the other two edges,
// scaled by the change in the centered indicator.
inline double signed_triangle_delta(const Graph& g, Vertex u, Vertex v,
                                    bool present, double q) {
  const double before = (g.has_edge(u, v) ? 1.0 : 0.0) - q;
  const double after = (present ? 1.0 : 0.0) - q;
  double pair_sum = 0.0;
  for (Vertex w = 0; w < g.n; ++w) {
    if (w == u || w == v) continue;
    pair_sum += ((g.has_edge(u, w) ? 1.0 : 0.0) - q) *
                ((g.has_edge(v, w) ? 1.0 : 0.0) - q);
  }
  return (after - before) * pair_sum;
}

// Expected edge density of RGT(n,p,p'): 1 - (1-p)(1-p')^{n-2}.
inline double rgt_edge_density(double p, double p_prime, int n) {
  return 1.0 - (1.0 - p) * std::exp(double(n - 2) * std::log1p(-p_prime));
}

enum class Hypothesis { null_er, alternative_rgt };

struct TestOutcome {
  double statistic_value = 0.0;
  double threshold = 0.0;
  Hypothesis decision = Hypothesis::null_er;
  std::size_t replicate_id = 0;
};

// Threshold test: output alternative iff tau exceeds C(n,3) p' (1-q)^3 / 2
// with q the matched RGT edge density.
inline TestOutcome er_vs_rgt_test(const Graph& g, int n, double p, double p_prime) {
  const double q = rgt_edge_density(p, p_prime, n);
  const double tau = signed_triangle_count(g, q);
  const double threshold =
      double(num_triple_slots(n)) * p_prime * std::pow(1.0 - q, 3) / 2.0;
  return {tau, threshold,
          tau > threshold ? Hypothesis::alternative_rgt : Hypothesis::null_er, 0};
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_ = 0.0;
  std::size_t replicates = 0;
};

// Sample mean/variance of statistic(sample(rng)) over independent streams.
template <typename Statistic>
Moments moment_estimator(Statistic&& statistic, std::size_t replicates,
                         CounterRng& rng) {
  if (replicates < 2) throw std::invalid_argument("moment_estimator: replicates >= 2");
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    CounterRng stream = rng.split(r);
    const double v = statistic(stream);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / double(replicates);
  const double var = (sumsq - sum * mean) / double(replicates - 1);
  return {mean, var, std::sqrt(var / double(replicates)), replicates};
}

// Max over conditionings y_A of |P(Y_e=1 | y_A^a) - P(Y_e=1 | y_A^b)|
// under the exact edge-indicator law of mu_G. Exact enumeration, n <= 6.
inline double marginal_influence_exact(const Graph& g,
                                       const std::vector<EdgeIndex>& a_edges,
                                       EdgeIndex e, double p, double p_prime) {
  if (g.n > 6)
    throw std::invalid_argument("marginal_influence_exact: n too large");
  ExactDist mu = exact_mu_g(g, p, p_prime);
  const std::size_t tslots = num_triple_slots(g.n);
  // Marginalize to the law of Y once.
  std::vector<double> law_y(std::size_t{1} << num_edge_slots(g.n), 0.0);
  for (std::uint64_t x = 0; x < mu.p.size(); ++x) {
    if (mu.p[x] == 0.0) continue;
    std::uint64_t y = 0;
    for (std::size_t t = 0; t < tslots; ++t)
      if ((x >> t) & 1)
        for (EdgeIndex te : triangle_edges(t, g.n)) y |= std::uint64_t{1} << te;
    law_y[y] += mu.p[x];
  }
  if (a_edges.empty()) return 0.0;
  // Conditional P(Y_e=1 | y_A) for each conditioning with positive mass.
  std::vector<double> cond;
  for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << a_edges.size());
       ++assign) {
    double mass = 0.0, hit = 0.0;
    for (std::uint64_t y = 0; y < law_y.size(); ++y) {
      if (law_y[y] == 0.0) continue;
      bool match = true;
      for (std::size_t i = 0; i < a_edges.size(); ++i)
        if (((y >> a_edges[i]) & 1) != ((assign >> i) & 1)) match = false;
      if (!match) continue;
      mass += law_y[y];
      if ((y >> e) & 1) hit += law_y[y];
    }
    if (mass > 0.0) cond.push_back(hit / mass);
  }
  double lo = 1.0, hi = 0.0;
  for (double c : cond) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return cond.empty() ? 0.0 : hi - lo;
}

}  // namespace trigraph
