#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trigraph/gibbs.hpp"
#include "trigraph/graph.hpp"
#include "trigraph/models.hpp"
#include "trigraph/oracle.hpp"
#include "trigraph/parallel.hpp"
#include "trigraph/rng.hpp"

namespace trigraph {

// Triangle-addition channel: for each vertex triple, add its three edges
// with probability p'. Monotone: E(G) is always a subset of the output.
inline Graph forward_transition(const Graph& g, double p_prime, CounterRng& rng) {
  Graph out = g;
  if (p_prime > 0.0) {
    const std::uint64_t slots = num_triple_slots(g.n);
    std::uint64_t i = rng.geometric_skip(p_prime);
    while (i < slots) {
      for (EdgeIndex e : triangle_edges(i, g.n)) out.edge_bits.set(e);
      std::uint64_t skip = rng.geometric_skip(p_prime);
      if (skip >= slots - i) break;
      i += skip + 1;
    }
  }
  return out;
}

struct ReverseOptions {
  GlauberOptions glauber;
  bool exact_mu = false;  // exact mu_G sampling backend, n <= 6 only
};

namespace detail {
// Enumerate-and-sample from mu_G; all subsets of candidate triples are
// supported, so this is a categorical draw over 2^N log weights.
inline TriangleSet sample_mu_exact(const GibbsSpec& spec, CounterRng& rng) {
  const std::size_t nc = spec.candidates.size();
  if (nc > 20) throw std::invalid_argument("sample_mu_exact: too many candidate triples");
  const std::size_t cfgs = std::size_t{1} << nc;
  const double log_act = std::log(spec.p_prime / (1.0 - spec.p_prime));
  const double log_p = std::log(spec.p);
  std::vector<double> logw(cfgs);
  double maxlw = -std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < cfgs; ++s) {
    std::uint64_t emask = 0;
    for (std::size_t i = 0; i < nc; ++i)
      if ((s >> i) & 1)
        for (EdgeIndex e : spec.candidate_edges[i]) emask |= std::uint64_t{1} << e;
    logw[s] = count_times_log(std::popcount(s), log_act) -
              count_times_log(std::popcount(emask), log_p);
    if (logw[s] > maxlw) maxlw = logw[s];
  }
  double z = 0.0;
  for (double lw : logw) z += std::exp(lw - maxlw);
  double u = rng.uniform() * z;
  std::uint64_t pick = cfgs - 1;
  for (std::uint64_t s = 0; s < cfgs; ++s) {
    u -= std::exp(logw[s] - maxlw);
    if (u <= 0.0) {
      pick = s;
      break;
    }
  }
  TriangleSet x(spec.graph.n);
  for (std::size_t i = 0; i < nc; ++i)
    if ((pick >> i) & 1) x.tri_bits.set(spec.candidates[i]);
  return x;
}
}  // namespace detail

// Reverse transition: X ~ mu_G, keep G outside E(X), resample E(X) edges
// at Bern(p). Triangle-free inputs pass through unchanged.
inline Graph reverse_transition(const Graph& g, double p, double p_prime,
                                const ReverseOptions& opts, CounterRng& rng) {
  if (p <= 0.0 || p >= 1.0)
    throw std::invalid_argument("reverse_transition: need 0 < p < 1");
  GibbsSpec spec = GibbsSpec::make(g, p, p_prime);
  if (spec.candidates.empty()) return g;
  TriangleSet x = opts.exact_mu ? detail::sample_mu_exact(spec, rng)
                                : glauber_sample(spec, opts.glauber, rng);
  EdgeSet y = edge_union(x);
  Graph out = g;
  for (EdgeIndex e = 0; e < num_edge_slots(g.n); ++e)
    if (y.edge_bits.test(e)) out.edge_bits.assign(e, rng.bernoulli(p));
  return out;
}

inline double default_pprime_star(int n) { return 1.0 / (n * std::log(n)); }

// Composed reverse map: lift p' up to p'_* with a forward step, then apply
// the reverse transition at p'_*.
inline Graph reverse_full(const Graph& g, double p, double p_prime,
                          double p_prime_star, const ReverseOptions& opts,
                          CounterRng& rng) {
  if (p_prime > p_prime_star)
    throw std::invalid_argument("reverse_full: p' exceeds p'_*");
  const double p_delta = (p_prime_star - p_prime) / (1.0 - p_prime);
  Graph lifted = p_delta > 0.0 ? forward_transition(g, p_delta, rng) : g;
  return reverse_transition(lifted, p, p_prime_star, opts, rng);
}

// f(q) = q + (1-q)(1 - (1-p')^{n-2}).
inline double param_map_f(double q, double p_prime, int n) {
  const double miss = std::exp(double(n - 2) * std::log1p(-p_prime));
  return q + (1.0 - q) * (1.0 - miss);
}

// g(q) = q p_e for the plain reverse map.
inline double param_map_g(double q, double p_e) { return q * p_e; }

// Composed formula for reverse_full:
// q' = (q + (1-q)(1 - (1 - (p'_*-p')/(1-p'))^{n-2})) p_e.
inline double param_map_g_full(double q, double p_e, double p_prime,
                               double p_prime_star, int n) {
  const double p_delta = (p_prime_star - p_prime) / (1.0 - p_prime);
  return param_map_f(q, p_delta, n) * p_e;
}

struct PeEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t replicates = 0;
};

// Monte Carlo estimate of p_e: the probability that a fixed edge e, added
// to an RGT sample, survives the reverse transition. Uses the colex-first
// edge; RGT is vertex-exchangeable so the choice does not matter.
inline PeEstimate estimate_pe(const ModelParams& params, std::size_t replicates,
                              const ReverseOptions& opts, CounterRng& rng,
                              unsigned threads = 0) {
  if (replicates < 1) throw std::invalid_argument("estimate_pe: replicates >= 1");
  const EdgeIndex e = 0;
  std::atomic<std::size_t> hits{0};
  parallel_for(
      replicates,
      [&](std::size_t r) {
        CounterRng stream = rng.split(r);
        auto [g, tris] = sample_rgt(params.n, params.p, params.p_prime, stream);
        g.edge_bits.set(e);
        Graph out = reverse_transition(g, params.p, params.p_prime, opts, stream);
        if (out.edge_bits.test(e)) hits.fetch_add(1, std::memory_order_relaxed);
      },
      threads);
  const double mean = double(hits.load()) / double(replicates);
  return {mean, std::sqrt(mean * (1.0 - mean) / double(replicates)), replicates};
}

struct ReductionReport {
  ModelParams input_params;
  ModelParams output_params;
  PeEstimate p_e;
  long gibbs_steps_used = 0;
};

}  // namespace trigraph
