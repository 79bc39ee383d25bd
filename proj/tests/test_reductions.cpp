#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trigraph/models.hpp"
#include "trigraph/reductions.hpp"
#include "trigraph/stats.hpp"

using namespace trigraph;

TEST_CASE("forward_transition: p'=0 is the identity, p'=1 adds everything") {
  CounterRng rng(21);
  Graph g = sample_er(12, 0.3, rng);
  Graph same = forward_transition(g, 0.0, rng);
  CHECK(same == g);

  Graph full = forward_transition(Graph(12), 1.0, rng);
  CHECK(full.edge_count() == num_edge_slots(12));
}

TEST_CASE("forward_transition is monotone") {
  CounterRng rng(22);
  for (int rep = 0; rep < 20; ++rep) {
    CounterRng s = rng.split(rep);
    Graph g = sample_er(15, 0.3, s);
    Graph out = forward_transition(g, 0.1, s);
    CHECK(g.edge_bits.is_subset_of(out.edge_bits));
  }
}

TEST_CASE("forward_transition on ER matches sample_rgt in distribution") {
  // Compare mean edge counts: both should sit at q = 1-(1-p)(1-p')^{n-2}.
  const int n = 40, reps = 4000;
  const double p = 0.3, pp = 0.02;
  const double q = rgt_edge_density(p, pp, n);
  const double slots = double(num_edge_slots(n));
  CounterRng rng(23);
  auto via_forward = [&](CounterRng& s) {
    Graph g = sample_er(n, p, s);
    return double(forward_transition(g, pp, s).edge_count());
  };
  auto via_rgt = [&](CounterRng& s) {
    return double(sample_rgt(n, p, pp, s).first.edge_count());
  };
  CounterRng r1 = rng.split(0), r2 = rng.split(1);
  auto m1 = moment_estimator(via_forward, reps, r1);
  auto m2 = moment_estimator(via_rgt, reps, r2);
  CHECK(std::fabs(m1.mean - q * slots) <= 4 * m1.stderr_);
  CHECK(std::fabs(m2.mean - q * slots) <= 4 * m2.stderr_);
  CHECK(std::fabs(m1.mean - m2.mean) <= 4 * std::hypot(m1.stderr_, m2.stderr_));
}

TEST_CASE("reverse_transition leaves triangle-free graphs unchanged") {
  Graph path(6);
  for (Vertex u = 0; u + 1 < 6; ++u) path.set_edge(u, u + 1);
  CounterRng rng(24);
  ReverseOptions opts;
  Graph out = reverse_transition(path, 0.5, 0.1, opts, rng);
  CHECK(out.edge_bits.to_key() == path.edge_bits.to_key());
}

TEST_CASE("reverse_transition rejects degenerate p") {
  CounterRng rng(25);
  ReverseOptions opts;
  CHECK_THROWS_AS(reverse_transition(Graph::complete(4), 0.0, 0.1, opts, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(reverse_transition(Graph::complete(4), 1.0, 0.1, opts, rng),
                  std::invalid_argument);
}

TEST_CASE("reverse_full: p' above p'_* is rejected") {
  CounterRng rng(26);
  ReverseOptions opts;
  const double star = default_pprime_star(100);
  CHECK_THROWS_AS(
      reverse_full(Graph::complete(4), 0.5, star * 2, star, opts, rng),
      std::invalid_argument);
}

TEST_CASE("reverse_full at p' = p'_* reproduces the pure reverse map") {
  // p_delta = 0, so the forward step is skipped and the rng stream is
  // consumed identically: same seed gives bit-identical output.
  const double star = 0.05;
  CounterRng rng(27);
  Graph g = sample_er(10, 0.4, rng);
  ReverseOptions opts;
  opts.exact_mu = false;
  CounterRng a(99), b(99);
  Graph via_full = reverse_full(g, 0.5, star, star, opts, a);
  Graph via_plain = reverse_transition(g, 0.5, star, opts, b);
  CHECK(via_full.edge_bits.to_key() == via_plain.edge_bits.to_key());
}

TEST_CASE("param_map_f fixed values") {
  CHECK(param_map_f(0.5, 0.0, 100) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(param_map_f(1.0, 0.3, 100) == doctest::Approx(1.0).epsilon(1e-15));
  // n=4: q + (1-q)(1-(1-p')^2).
  CHECK(param_map_f(0.5, 0.1, 4) ==
        doctest::Approx(0.5 + 0.5 * (1 - 0.81)).epsilon(1e-14));
  // Long-double cross-check at a large n.
  const int n = 500;
  const double q = 0.2, pp = 1.0 / (n * std::log(double(n)));
  long double want = (long double)q + (1.0L - q) *
                         (1.0L - powl(1.0L - (long double)pp, n - 2));
  CHECK(param_map_f(q, pp, n) == doctest::Approx(double(want)).epsilon(1e-13));
}

TEST_CASE("param_map_g and the composed version") {
  CHECK(param_map_g(0.6, 1.0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(param_map_g(0.6, 0.9) == doctest::Approx(0.54).epsilon(1e-15));
  // With p' = p'_* the lift is trivial and g_full collapses to g.
  CHECK(param_map_g_full(0.6, 0.9, 0.01, 0.01, 100) ==
        doctest::Approx(param_map_g(0.6, 0.9)).epsilon(1e-14));
  CHECK(param_map_g_full(0.6, 1.0, 0.0, 0.02, 100) ==
        doctest::Approx(param_map_f(0.6, 0.02, 100)).epsilon(1e-14));
}

TEST_CASE("estimate_pe is exactly 1 at p' = 0") {
  ModelParams params;
  params.n = 20;
  params.p = 0.5;
  params.p_prime = 0.0;
  CounterRng rng(30);
  ReverseOptions opts;
  auto est = estimate_pe(params, 50, opts, rng);
  CHECK(est.value == 1.0);
  CHECK(est.stderr_ == 0.0);
  CHECK(est.replicates == 50);
}

TEST_CASE("estimate_pe agrees with the exact p_e at n = 4") {
  ModelParams params;
  params.n = 4;
  params.p = 0.5;
  params.p_prime = 0.1;
  const double exact = exact_pe(4, 0.5, 0.1, 0);
  ReverseOptions opts;
  opts.exact_mu = true;
  CounterRng rng(31);
  auto est = estimate_pe(params, 20000, opts, rng);
  CHECK(std::fabs(est.value - exact) <= 4 * est.stderr_);
}

TEST_CASE("estimate_pe is thread-count invariant") {
  // n = 6 keeps every graph within the exact-mu backend's candidate cap.
  ModelParams params;
  params.n = 6;
  params.p = 0.4;
  params.p_prime = 0.05;
  ReverseOptions opts;
  opts.exact_mu = true;
  CounterRng a(32), b(32);
  auto one = estimate_pe(params, 500, opts, a, 1);
  auto four = estimate_pe(params, 500, opts, b, 4);
  CHECK(one.value == four.value);
}
