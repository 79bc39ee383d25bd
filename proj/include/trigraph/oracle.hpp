#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigraph/gibbs.hpp"
#include "trigraph/graph.hpp"

namespace trigraph {

// Finite probability table indexed by the raw bit encoding (edge bits or
// triangle bits as an integer key). Dense over all 2^slots keys.
struct ExactDist {
  int n = 0;
  std::size_t slots = 0;  // bits per key
  std::vector<double> p;  // size 2^slots

  ExactDist() = default;
  ExactDist(int n_, std::size_t slots_)
      : n(n_), slots(slots_), p(std::size_t{1} << slots_, 0.0) {}

  double total() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }
};

// Markov kernel: one ExactDist row per input encoding.
struct ExactKernel {
  int n = 0;
  std::size_t slots = 0;
  std::vector<std::vector<double>> rows;  // rows[in][out]

  ExactKernel() = default;
  ExactKernel(int n_, std::size_t slots_)
      : n(n_), slots(slots_),
        rows(std::size_t{1} << slots_,
             std::vector<double>(std::size_t{1} << slots_, 0.0)) {}
};

inline double tv_distance(const ExactDist& a, const ExactDist& b) {
  if (a.n != b.n || a.slots != b.slots)
    throw std::invalid_argument("tv_distance: mismatched distributions");
  double s = 0.0;
  for (std::size_t k = 0; k < a.p.size(); ++k) s += std::fabs(a.p[k] - b.p[k]);
  return 0.5 * s;
}

inline ExactDist push(const ExactDist& d, const ExactKernel& k) {
  if (d.slots != k.slots)
    throw std::invalid_argument("push: mismatched key spaces");
  ExactDist out(d.n, d.slots);
  for (std::size_t in = 0; in < d.p.size(); ++in) {
    if (d.p[in] == 0.0) continue;
    const auto& row = k.rows[in];
    for (std::size_t o = 0; o < row.size(); ++o)
      if (row[o] != 0.0) out.p[o] += d.p[in] * row[o];
  }
  return out;
}

namespace oracle_detail {
inline void require_small(int n, int limit, const char* what) {
  if (n > limit)
    throw std::invalid_argument(std::string(what) + ": n too large for exact enumeration");
}
}  // namespace oracle_detail

// Product law over the C(n,2) edge bits.
inline ExactDist exact_er(int n, double p) {
  oracle_detail::require_small(n, 6, "exact_er");
  const std::size_t slots = num_edge_slots(n);
  ExactDist d(n, slots);
  for (std::uint64_t key = 0; key < d.p.size(); ++key) {
    const int m = std::popcount(key);
    d.p[key] = std::pow(p, m) * std::pow(1.0 - p, double(slots - m));
  }
  return d;
}

// Kernel over graphs: independently for each triple, add its three edges
// with probability p'.
inline ExactKernel exact_forward_kernel(int n, double p_prime) {
  oracle_detail::require_small(n, 5, "exact_forward_kernel");
  const std::size_t eslots = num_edge_slots(n);
  const std::size_t tslots = num_triple_slots(n);
  // Edge mask of each triangle subset.
  std::vector<std::uint64_t> subset_edges(std::size_t{1} << tslots, 0);
  std::vector<double> subset_prob(std::size_t{1} << tslots, 0.0);
  for (std::uint64_t tkey = 0; tkey < subset_edges.size(); ++tkey) {
    std::uint64_t mask = 0;
    for (std::size_t t = 0; t < tslots; ++t)
      if ((tkey >> t) & 1)
        for (EdgeIndex e : triangle_edges(t, n)) mask |= std::uint64_t{1} << e;
    subset_edges[tkey] = mask;
    const int c = std::popcount(tkey);
    subset_prob[tkey] =
        std::pow(p_prime, c) * std::pow(1.0 - p_prime, double(tslots - c));
  }
  ExactKernel k(n, eslots);
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << eslots); ++g)
    for (std::uint64_t tkey = 0; tkey < subset_edges.size(); ++tkey)
      k.rows[g][g | subset_edges[tkey]] += subset_prob[tkey];
  return k;
}

inline ExactDist exact_rgt(int n, double p, double p_prime) {
  oracle_detail::require_small(n, 5, "exact_rgt");
  return push(exact_er(n, p), exact_forward_kernel(n, p_prime));
}

// mu_G over the full 2^{C(n,3)} triangle-set key space; zero off-support.
// Weights accumulated in log space with a stable normalization.
inline ExactDist exact_mu_g(const Graph& g, double p, double p_prime) {
  oracle_detail::require_small(g.n, 5, "exact_mu_g");
  const std::size_t tslots = num_triple_slots(g.n);
  GibbsSpec spec = GibbsSpec::make(g, p, p_prime);
  const std::size_t nc = spec.candidates.size();
  ExactDist d(g.n, tslots);
  const double log_act = std::log(p_prime / (1.0 - p_prime));
  const double log_p = std::log(p);
  std::vector<double> logw(std::size_t{1} << nc);
  double maxlw = -std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << nc); ++s) {
    std::uint64_t emask = 0;
    for (std::size_t i = 0; i < nc; ++i)
      if ((s >> i) & 1)
        for (EdgeIndex e : spec.candidate_edges[i]) emask |= std::uint64_t{1} << e;
    const double lw = count_times_log(std::popcount(s), log_act) -
                      count_times_log(std::popcount(emask), log_p);
    logw[s] = lw;
    maxlw = std::max(maxlw, lw);
  }
  double z = 0.0;
  for (double lw : logw) z += std::exp(lw - maxlw);
  for (std::uint64_t s = 0; s < logw.size(); ++s) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < nc; ++i)
      if ((s >> i) & 1) key |= std::uint64_t{1} << spec.candidates[i];
    d.p[key] = std::exp(logw[s] - maxlw) / z;
  }
  return d;
}

// P(Y_e = 1) under mu_G: probability that edge e is covered by X.
inline double exact_mu_edge_marginal(const Graph& g, double p, double p_prime,
                                     EdgeIndex e) {
  ExactDist mu = exact_mu_g(g, p, p_prime);
  const std::size_t tslots = num_triple_slots(g.n);
  double total = 0.0;
  for (std::uint64_t x = 0; x < mu.p.size(); ++x) {
    if (mu.p[x] == 0.0) continue;
    bool covered = false;
    for (std::size_t t = 0; t < tslots && !covered; ++t)
      if ((x >> t) & 1)
        for (EdgeIndex te : triangle_edges(t, g.n))
          if (te == e) covered = true;
    if (covered) total += mu.p[x];
  }
  return total;
}

// Row G of the reverse transition: sample X ~ mu_G, keep G outside E(X),
// resample E(X) edges at Bern(p).
inline ExactKernel exact_reverse_kernel(int n, double p, double p_prime) {
  oracle_detail::require_small(n, 5, "exact_reverse_kernel");
  const std::size_t eslots = num_edge_slots(n);
  ExactKernel k(n, eslots);
  for (std::uint64_t gkey = 0; gkey < (std::uint64_t{1} << eslots); ++gkey) {
    Graph g(n, Bitset::from_key(gkey, eslots));
    ExactDist mu = exact_mu_g(g, p, p_prime);
    for (std::uint64_t x = 0; x < mu.p.size(); ++x) {
      if (mu.p[x] == 0.0) continue;
      // Edge mask of E(x).
      std::uint64_t emask = 0;
      for (std::size_t t = 0; t < num_triple_slots(n); ++t)
        if ((x >> t) & 1)
          for (EdgeIndex e : triangle_edges(t, n)) emask |= std::uint64_t{1} << e;
      // Enumerate Bern(p) outcomes on emask bits.
      std::vector<std::size_t> bits;
      for (std::size_t e = 0; e < eslots; ++e)
        if ((emask >> e) & 1) bits.push_back(e);
      const std::uint64_t base = gkey & ~emask;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << bits.size()); ++a) {
        std::uint64_t out = base;
        double pr = mu.p[x];
        for (std::size_t b = 0; b < bits.size(); ++b) {
          if ((a >> b) & 1) {
            out |= std::uint64_t{1} << bits[b];
            pr *= p;
          } else {
            pr *= 1.0 - p;
          }
        }
        k.rows[gkey][out] += pr;
      }
    }
  }
  return k;
}

// Max |Q(G'|G) - P(G'|G)| between the reverse kernel and the Bayes
// posterior of the forward kernel, over all G with RGT-probability > 0.
inline double verify_posterior(int n, double p, double p_prime) {
  oracle_detail::require_small(n, 4, "verify_posterior");
  const std::size_t eslots = num_edge_slots(n);
  ExactDist prior = exact_er(n, p);
  ExactKernel fwd = exact_forward_kernel(n, p_prime);
  ExactDist marg = push(prior, fwd);
  ExactKernel rev = exact_reverse_kernel(n, p, p_prime);
  double max_err = 0.0;
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << eslots); ++g) {
    if (marg.p[g] <= 0.0) continue;
    for (std::uint64_t gp = 0; gp < (std::uint64_t{1} << eslots); ++gp) {
      const double posterior = prior.p[gp] * fwd.rows[gp][g] / marg.p[g];
      max_err = std::max(max_err, std::fabs(rev.rows[g][gp] - posterior));
    }
  }
  return max_err;
}

// Edge resampling channel Res_e^q as an exact kernel.
inline ExactKernel exact_res_kernel(int n, EdgeIndex e, double q) {
  const std::size_t eslots = num_edge_slots(n);
  ExactKernel k(n, eslots);
  const std::uint64_t bit = std::uint64_t{1} << e;
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << eslots); ++g) {
    k.rows[g][g | bit] += q;
    k.rows[g][g & ~bit] += 1.0 - q;
  }
  return k;
}

// Exact p_e = 1 - (1-p) E_{G ~ RGT}[mu_{G+e}(Y_e = 1)].
inline double exact_pe(int n, double p, double p_prime, EdgeIndex e) {
  oracle_detail::require_small(n, 4, "exact_pe");
  ExactDist rgt = exact_rgt(n, p, p_prime);
  const std::size_t eslots = num_edge_slots(n);
  double mean_marginal = 0.0;
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << eslots); ++g) {
    if (rgt.p[g] == 0.0) continue;
    Graph ge(n, Bitset::from_key(g | (std::uint64_t{1} << e), eslots));
    mean_marginal += rgt.p[g] * exact_mu_edge_marginal(ge, p, p_prime, e);
  }
  return 1.0 - (1.0 - p) * mean_marginal;
}

// Exact TV between A . Res_e^q (RGT) and Res_e^{q p_e} . A (RGT).
inline double exact_commutation_gap(int n, double p, double p_prime, EdgeIndex e,
                                    double q) {
  oracle_detail::require_small(n, 4, "exact_commutation_gap");
  ExactDist rgt = exact_rgt(n, p, p_prime);
  ExactKernel rev = exact_reverse_kernel(n, p, p_prime);
  ExactKernel res_q = exact_res_kernel(n, e, q);
  const double pe = exact_pe(n, p, p_prime, e);
  ExactKernel res_qpe = exact_res_kernel(n, e, q * pe);
  ExactDist lhs = push(push(rgt, res_q), rev);
  ExactDist rhs = push(push(rgt, rev), res_qpe);
  return tv_distance(lhs, rhs);
}

// Exact one-step Glauber kernel over candidate-position encodings, together
// with mu restricted to the same encoding. Supports detailed-balance and
// stationarity checks.
struct GlauberExact {
  GibbsSpec spec;
  std::vector<double> mu;                 // size 2^{num candidates}
  std::vector<std::vector<double>> step;  // one-step kernel
};

inline GlauberExact exact_glauber_kernel(const Graph& g, double p, double p_prime) {
  oracle_detail::require_small(g.n, 5, "exact_glauber_kernel");
  GlauberExact out{GibbsSpec::make(g, p, p_prime), {}, {}};
  const std::size_t nc = out.spec.candidates.size();
  const std::size_t cfgs = std::size_t{1} << nc;
  // mu over candidate subsets.
  const double log_act = std::log(p_prime / (1.0 - p_prime));
  const double log_p = std::log(p);
  std::vector<double> logw(cfgs);
  double maxlw = -std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < cfgs; ++s) {
    std::uint64_t emask = 0;
    for (std::size_t i = 0; i < nc; ++i)
      if ((s >> i) & 1)
        for (EdgeIndex e : out.spec.candidate_edges[i])
          emask |= std::uint64_t{1} << e;
    logw[s] = count_times_log(std::popcount(s), log_act) -
              count_times_log(std::popcount(emask), log_p);
    maxlw = std::max(maxlw, logw[s]);
  }
  double z = 0.0;
  for (double lw : logw) z += std::exp(lw - maxlw);
  out.mu.resize(cfgs);
  for (std::uint64_t s = 0; s < cfgs; ++s) out.mu[s] = std::exp(logw[s] - maxlw) / z;

  out.step.assign(cfgs, std::vector<double>(cfgs, 0.0));
  if (nc == 0) {
    out.step = {{1.0}};
    return out;
  }
  for (std::uint64_t s = 0; s < cfgs; ++s) {
    ChainState st = ChainState::empty(out.spec);
    for (std::size_t i = 0; i < nc; ++i)
      if ((s >> i) & 1) detail::flip_candidate(out.spec, st, i, true);
    for (std::size_t i = 0; i < nc; ++i) {
      const double m = conditional_marginal(out.spec, st, i);
      const std::uint64_t on = s | (std::uint64_t{1} << i);
      const std::uint64_t off = s & ~(std::uint64_t{1} << i);
      out.step[s][on] += m / double(nc);
      out.step[s][off] += (1.0 - m) / double(nc);
    }
  }
  return out;
}

}  // namespace trigraph
