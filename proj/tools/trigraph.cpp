// trigraph: samplers, reductions, Gibbs marginals, distinguisher tests, and
// exact small-instance oracles for the triangle random-graph model.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trigraph/gibbs.hpp"
#include "trigraph/graph.hpp"
#include "trigraph/models.hpp"
#include "trigraph/oracle.hpp"
#include "trigraph/parallel.hpp"
#include "trigraph/probexpr.hpp"
#include "trigraph/reductions.hpp"
#include "trigraph/stats.hpp"

namespace tg = trigraph;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "trigraph 1.0.0";

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  return f;
}

tg::Graph load_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open graph file: " + path);
  return tg::read_graph(f);
}

// Every CSV starts with a comment line recording version, seed, and the
// full parameter vector, so runs are self-describing and reproducible.
void write_provenance(std::ostream& os, std::uint64_t seed,
                      const std::string& params) {
  os << "# " << kVersion << " seed=" << seed << ' ' << params << '\n';
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

int cmd_sample(const std::string& model, int n, const std::string& p_s,
               const std::string& pp_s, std::uint64_t d, double delta,
               int plant_k, double plant_q, std::uint64_t seed,
               const std::string& out) {
  tg::CounterRng rng(seed);
  tg::Graph g(std::max(n, 1));
  if (model == "er") {
    g = tg::sample_er(n, tg::parse_probability(p_s, n), rng);
  } else if (model == "rgt") {
    g = tg::sample_rgt(n, tg::parse_probability(p_s, n),
                       tg::parse_probability(pp_s, n), rng)
            .first;
  } else if (model == "rig") {
    g = tg::sample_rig(n, d, delta, rng);
  } else {
    throw CLI::ValidationError("--model must be er, rgt, or rig");
  }
  if (plant_k > 0) {
    auto s = tg::random_vertex_subset(n, plant_k, rng);
    g = tg::plant_dense_subgraph(g, s, plant_q, rng);
  }
  if (out.empty() || out == "-") {
    tg::write_graph(std::cout, g);
  } else {
    auto f = open_out(out);
    tg::write_graph(f, g);
  }
  return 0;
}

int cmd_gibbs(const std::string& graph_path, const std::string& p_s,
              const std::string& pp_s, const std::string& steps_s,
              std::size_t samples, double cmix, std::uint64_t seed,
              const std::string& out) {
  tg::Graph g = load_graph(graph_path);
  const double p = tg::parse_probability(p_s, g.n);
  const double pp = tg::parse_probability(pp_s, g.n);
  tg::GlauberOptions opts;
  opts.c_mix = cmix;
  if (steps_s != "AUTO") opts.steps = std::stol(steps_s);
  tg::CounterRng rng(seed);
  tg::GibbsSpec spec = tg::GibbsSpec::make(g, p, pp);
  auto marginals = tg::glauber_marginals(spec, samples, opts, rng);

  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!out.empty() && out != "-") {
    f = open_out(out);
    os = &f;
  }
  std::ostringstream params;
  params << "p=" << p_s << " pprime=" << pp_s << " steps=" << steps_s
         << " samples=" << samples << " cmix=" << cmix;
  write_provenance(*os, seed, params.str());
  *os << "triple_index,estimate,stderr\n";
  for (const auto& m : marginals)
    *os << m.triple << ',' << fmt(m.estimate) << ',' << fmt(m.stderr_) << '\n';
  return 0;
}

int cmd_reduce(const std::string& direction, const std::string& graph_path,
               const std::string& p_s, const std::string& pp_s,
               const std::string& pps_s, std::uint64_t seed,
               const std::string& out, const std::string& report_path,
               std::size_t pe_replicates, double cmix, unsigned threads) {
  tg::Graph g = load_graph(graph_path);
  const int n = g.n;
  const double p = tg::parse_probability(p_s, n);
  const double pp = tg::parse_probability(pp_s, n);
  const double pps = pps_s.empty() ? tg::default_pprime_star(n)
                                   : tg::parse_probability(pps_s, n);
  tg::ReverseOptions opts;
  opts.glauber.c_mix = cmix;
  tg::CounterRng rng(seed);

  tg::Graph result(n);
  if (direction == "forward") {
    result = tg::forward_transition(g, pp, rng);
  } else if (direction == "reverse") {
    result = tg::reverse_transition(g, p, pp, opts, rng);
  } else if (direction == "reverse-full") {
    result = tg::reverse_full(g, p, pp, pps, opts, rng);
  } else {
    throw CLI::ValidationError("--direction must be forward, reverse, or reverse-full");
  }
  if (out.empty() || out == "-") {
    tg::write_graph(std::cout, result);
  } else {
    auto f = open_out(out);
    tg::write_graph(f, result);
  }

  if (!report_path.empty()) {
    tg::ModelParams in{n, p, pp, 0, 0.0, seed};
    tg::ReductionReport rep;
    rep.input_params = in;
    rep.output_params = in;
    if (direction == "forward") {
      rep.output_params.q = tg::param_map_f(in.q, pp, n);
      rep.gibbs_steps_used = 0;
    } else {
      const double op_pp = direction == "reverse" ? pp : pps;
      if (pe_replicates > 0) {
        tg::ModelParams pe_params{n, p, op_pp, 0, 0.0, seed};
        tg::CounterRng pe_rng = rng.split(0xfeedULL);
        rep.p_e = tg::estimate_pe(pe_params, pe_replicates, opts, pe_rng, threads);
      }
      rep.output_params.p_prime = 0.0;
      rep.output_params.q =
          direction == "reverse"
              ? tg::param_map_g(in.q, rep.p_e.value)
              : tg::param_map_g_full(in.q, rep.p_e.value, pp, pps, n);
      rep.gibbs_steps_used =
          tg::auto_steps(tg::GibbsSpec::make(g, p, op_pp).candidates.size(), cmix);
    }
    json j;
    j["input_params"] = {{"n", in.n},       {"p", in.p}, {"p_prime", in.p_prime},
                         {"k", in.k},       {"q", in.q}, {"seed", in.seed}};
    j["output_params"] = {{"n", rep.output_params.n},
                          {"p", rep.output_params.p},
                          {"p_prime", rep.output_params.p_prime},
                          {"k", rep.output_params.k},
                          {"q", rep.output_params.q},
                          {"seed", rep.output_params.seed}};
    j["p_e_estimate"] = {{"value", rep.p_e.value},
                         {"stderr", rep.p_e.stderr_},
                         {"replicates", rep.p_e.replicates}};
    j["gibbs_steps_used"] = rep.gibbs_steps_used;
    auto f = open_out(report_path);
    f << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_test(int n, const std::string& p_s, const std::string& pp_s,
             std::size_t trials, std::uint64_t seed, const std::string& out,
             unsigned threads) {
  const double p = tg::parse_probability(p_s, n);
  const double pp = tg::parse_probability(pp_s, n);
  const double q = tg::rgt_edge_density(p, pp, n);
  tg::CounterRng rng(seed);

  struct Row {
    int truth;
    double tau, threshold;
    int decision;
  };
  std::vector<Row> rows(2 * trials);
  tg::parallel_for(
      2 * trials,
      [&](std::size_t t) {
        tg::CounterRng stream = rng.split(t);
        const bool alt = t >= trials;
        tg::Graph g = alt ? tg::sample_rgt(n, p, pp, stream).first
                          : tg::sample_er(n, q, stream);
        auto outc = tg::er_vs_rgt_test(g, n, p, pp);
        rows[t] = {alt ? 1 : 0, outc.statistic_value, outc.threshold,
                   outc.decision == tg::Hypothesis::alternative_rgt ? 1 : 0};
      },
      threads);

  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!out.empty() && out != "-") {
    f = open_out(out);
    os = &f;
  }
  std::ostringstream params;
  params << "n=" << n << " p=" << p_s << " pprime=" << pp_s
         << " trials=" << trials;
  write_provenance(*os, seed, params.str());
  *os << "trial,truth,tau,threshold,decision\n";
  double sum_null = 0.0, sum_alt = 0.0;
  std::size_t correct = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Row& r = rows[t];
    *os << t << ',' << r.truth << ',' << fmt(r.tau) << ',' << fmt(r.threshold)
        << ',' << r.decision << '\n';
    (r.truth ? sum_alt : sum_null) += r.tau;
    if (r.decision == r.truth) ++correct;
  }
  *os << "# summary accuracy=" << fmt(double(correct) / double(rows.size()))
      << " mean_tau_null=" << fmt(sum_null / double(trials))
      << " mean_tau_alt=" << fmt(sum_alt / double(trials)) << '\n';
  return 0;
}

int cmd_oracle(const std::string& check, int n, const std::string& p_s,
               const std::string& pp_s, double q) {
  const double p = tg::parse_probability(p_s, n);
  const double pp = pp_s.empty() ? 0.0 : tg::parse_probability(pp_s, n);
  double err = 0.0;
  double tol = 1e-9;
  if (check == "reverse-identity") {
    err = tg::tv_distance(
        tg::push(tg::exact_rgt(n, p, pp), tg::exact_reverse_kernel(n, p, pp)),
        tg::exact_er(n, p));
  } else if (check == "posterior") {
    err = tg::verify_posterior(n, p, pp);
  } else if (check == "glauber-balance") {
    tol = 1e-12;
    const std::size_t eslots = tg::num_edge_slots(n);
    for (std::uint64_t gk = 0; gk < (std::uint64_t{1} << eslots); ++gk) {
      tg::Graph g(n, tg::Bitset::from_key(gk, eslots));
      auto ex = tg::exact_glauber_kernel(g, p, pp);
      const std::size_t cfgs = ex.mu.size();
      for (std::size_t x = 0; x < cfgs; ++x) {
        double row = 0.0;
        for (std::size_t y = 0; y < cfgs; ++y) {
          row += ex.mu[y] * ex.step[y][x];
          err = std::max(err, std::fabs(ex.mu[x] * ex.step[x][y] -
                                        ex.mu[y] * ex.step[y][x]));
        }
        err = std::max(err, std::fabs(row - ex.mu[x]));
      }
    }
  } else if (check == "commutation") {
    tol = 1e-12;
    err = tg::exact_commutation_gap(n, p, 0.0, 0, q);
    const double g01 = tg::exact_commutation_gap(n, p, 0.01, 0, q);
    const double g10 = tg::exact_commutation_gap(n, p, 0.1, 0, q);
    if (g01 >= g10) err = std::max(err, 1.0);  // trend violated
  } else {
    throw CLI::ValidationError(
        "--check must be reverse-identity, posterior, glauber-balance, or commutation");
  }
  const bool pass = err <= tol;
  std::cout << check << " max-error " << fmt(err) << " tolerance " << fmt(tol)
            << (pass ? " PASS" : " FAIL") << '\n';
  return pass ? 0 : 1;
}

int cmd_experiment(const std::string& name, int n, const std::string& p_s,
                   const std::string& pp_s, double q, std::size_t replicates,
                   std::uint64_t seed, const std::string& out, double cmix,
                   unsigned threads) {
  const double p = tg::parse_probability(p_s, n);
  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!out.empty() && out != "-") {
    f = open_out(out);
    os = &f;
  }
  std::ostringstream params;
  params << "experiment=" << name << " n=" << n << " p=" << p_s << " q=" << q
         << " replicates=" << replicates;
  write_provenance(*os, seed, params.str());

  if (name == "commutation-curve") {
    *os << "pprime,gap,pe\n";
    for (double pp : {0.0, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1}) {
      const double gap = tg::exact_commutation_gap(n, p, pp, 0, q);
      const double pe = tg::exact_pe(n, p, pp, 0);
      *os << fmt(pp) << ',' << fmt(gap) << ',' << fmt(pe) << '\n';
    }
    return 0;
  }
  if (name == "pe-scaling") {
    tg::ReverseOptions opts;
    opts.glauber.c_mix = cmix;
    *os << "pprime,pe,stderr,one_minus_pe\n";
    const double pstar = tg::default_pprime_star(n);
    tg::CounterRng rng(seed);
    int k = 0;
    for (double pp : {pstar, pstar / 2.0}) {
      tg::ModelParams mp{n, p, pp, 0, 0.0, seed};
      tg::CounterRng stream = rng.split(k++);
      auto pe = tg::estimate_pe(mp, replicates, opts, stream, threads);
      *os << fmt(pp) << ',' << fmt(pe.value) << ',' << fmt(pe.stderr_) << ','
          << fmt(1.0 - pe.value) << '\n';
    }
    return 0;
  }
  if (name == "roundtrip") {
    const double pp = pp_s.empty() ? tg::default_pprime_star(n)
                                   : tg::parse_probability(pp_s, n);
    tg::ReverseOptions opts;
    opts.glauber.c_mix = cmix;
    tg::ModelParams mp{n, p, pp, 0, 0.0, seed};
    tg::CounterRng rng(seed);
    auto pe = tg::estimate_pe(mp, replicates, opts, rng, threads);
    const double fg = tg::param_map_f(tg::param_map_g(q, pe.value), pp, n);
    const double gf = tg::param_map_g(tg::param_map_f(q, pp, n), pe.value);
    *os << "q,pprime,pe,pe_stderr,f_of_g,g_of_f\n";
    *os << fmt(q) << ',' << fmt(pp) << ',' << fmt(pe.value) << ','
        << fmt(pe.stderr_) << ',' << fmt(fg) << ',' << fmt(gf) << '\n';
    return 0;
  }
  throw CLI::ValidationError(
      "--name must be commutation-curve, pe-scaling, or roundtrip");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangle random-graph model: samplers, reductions, tests, oracles"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  unsigned threads = tg::default_parallelism();
  app.add_option("--threads", threads, "worker threads for replicate loops");

  // sample
  auto* sample = app.add_subcommand("sample", "draw a graph from er/rgt/rig");
  std::string s_model, s_p = "0.5", s_pp = "0", s_out;
  int s_n = 0, s_plant_k = 0;
  std::uint64_t s_d = 0, s_seed = 0;
  double s_delta = 0.0, s_plant_q = 0.0;
  sample->add_option("--model", s_model)->required();
  sample->add_option("--n", s_n)->required();
  sample->add_option("--p", s_p);
  sample->add_option("--pprime", s_pp);
  sample->add_option("--d", s_d);
  sample->add_option("--delta", s_delta);
  sample->add_option("--plant-k", s_plant_k);
  sample->add_option("--plant-q", s_plant_q);
  sample->add_option("--seed", s_seed);
  sample->add_option("--out", s_out);

  // gibbs
  auto* gibbs = app.add_subcommand("gibbs", "per-triple Glauber marginal estimates");
  std::string g_graph, g_p = "0.5", g_pp = "0.1", g_steps = "AUTO", g_out;
  std::size_t g_samples = 1000;
  std::uint64_t g_seed = 0;
  double g_cmix = 8.0;
  gibbs->add_option("--graph", g_graph)->required();
  gibbs->add_option("--p", g_p);
  gibbs->add_option("--pprime", g_pp);
  gibbs->add_option("--steps", g_steps);
  gibbs->add_option("--samples", g_samples);
  gibbs->add_option("--cmix", g_cmix);
  gibbs->add_option("--seed", g_seed);
  gibbs->add_option("--out", g_out);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "forward/reverse transitions");
  std::string r_dir, r_graph, r_p = "0.5", r_pp = "0.1", r_pps, r_out, r_report;
  std::uint64_t r_seed = 0;
  std::size_t r_pe_reps = 200;
  double r_cmix = 8.0;
  reduce->add_option("--direction", r_dir)->required();
  reduce->add_option("--graph", r_graph)->required();
  reduce->add_option("--p", r_p);
  reduce->add_option("--pprime", r_pp);
  reduce->add_option("--pprime-star", r_pps);
  reduce->add_option("--seed", r_seed);
  reduce->add_option("--out", r_out);
  reduce->add_option("--report", r_report);
  reduce->add_option("--pe-replicates", r_pe_reps);
  reduce->add_option("--cmix", r_cmix);

  // test
  auto* test = app.add_subcommand("test", "signed-triangle ER vs RGT distinguisher");
  std::string t_p = "0.5", t_pp, t_out;
  int t_n = 0;
  std::size_t t_trials = 100;
  std::uint64_t t_seed = 0;
  test->add_option("--n", t_n)->required();
  test->add_option("--p", t_p);
  test->add_option("--pprime", t_pp)->required();
  test->add_option("--trials", t_trials);
  test->add_option("--seed", t_seed);
  test->add_option("--out", t_out);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact small-instance identity checks");
  std::string o_check, o_p = "0.5", o_pp;
  int o_n = 0;
  double o_q = 0.9;
  oracle->add_option("--check", o_check)->required();
  oracle->add_option("--n", o_n)->required();
  oracle->add_option("--p", o_p);
  oracle->add_option("--pprime", o_pp);
  oracle->add_option("--q", o_q);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "named experiment pipelines");
  std::string e_name, e_p = "0.5", e_pp, e_out;
  int e_n = 4;
  double e_q = 0.9, e_cmix = 8.0;
  std::size_t e_reps = 200;
  std::uint64_t e_seed = 0;
  experiment->add_option("--name", e_name)->required();
  experiment->add_option("--n", e_n);
  experiment->add_option("--p", e_p);
  experiment->add_option("--pprime", e_pp);
  experiment->add_option("--q", e_q);
  experiment->add_option("--replicates", e_reps);
  experiment->add_option("--seed", e_seed);
  experiment->add_option("--cmix", e_cmix);
  experiment->add_option("--out", e_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (sample->parsed())
      return cmd_sample(s_model, s_n, s_p, s_pp, s_d, s_delta, s_plant_k,
                        s_plant_q, s_seed, s_out);
    if (gibbs->parsed())
      return cmd_gibbs(g_graph, g_p, g_pp, g_steps, g_samples, g_cmix, g_seed,
                       g_out);
    if (reduce->parsed())
      return cmd_reduce(r_dir, r_graph, r_p, r_pp, r_pps, r_seed, r_out,
                        r_report, r_pe_reps, r_cmix, threads);
    if (test->parsed())
      return cmd_test(t_n, t_p, t_pp, t_trials, t_seed, t_out, threads);
    if (oracle->parsed()) return cmd_oracle(o_check, o_n, o_p, o_pp, o_q);
    if (experiment->parsed())
      return cmd_experiment(e_name, e_n, e_p, e_pp, e_q, e_reps, e_seed, e_out,
                            e_cmix, threads);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
