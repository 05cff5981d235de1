// crem: covariance-profile calculus, tree samplers, partition-function
// estimators, and the proof-constant ledger, behind one command-line tool.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crem/accept.hpp"
#include "crem/batch.hpp"
#include "crem/bounds.hpp"
#include "crem/errors.hpp"
#include "crem/estimators.hpp"
#include "crem/io.hpp"
#include "crem/oracles.hpp"
#include "crem/parallel.hpp"
#include "crem/partition.hpp"
#include "crem/profile.hpp"
#include "crem/rng.hpp"
#include "crem/sampler.hpp"

namespace {

using crem::BarrierParams;
using crem::CovarianceProfile;

int cmd_profile_info(const std::string& path) {
  const CovarianceProfile p = crem::io::load_profile(path);
  const crem::ConcaveHull hull = crem::concave_hull(p);
  nlohmann::json doc;
  doc["digest"] = crem::io::profile_digest_hex(p);
  doc["knots"] = nlohmann::json::array();
  for (const auto& k : p.knots()) doc["knots"].push_back({k.x, k.a});
  doc["hull_knots"] = nlohmann::json::array();
  for (const auto& k : hull.knots) doc["hull_knots"].push_back({k.x, k.a});
  doc["hull_slopes"] = hull.slopes;
  doc["slope_at_zero"] = hull.slope_at_zero();
  doc["beta_c"] = crem::beta_c(hull);
  doc["max_growth_rate"] = crem::max_growth_rate(hull);
  nlohmann::json fe = nlohmann::json::array();
  const double bc = crem::beta_c(hull);
  for (double frac : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    fe.push_back({frac * bc, crem::free_energy(hull, frac * bc)});
  }
  doc["free_energy"] = fe;
  const crem::NearZeroReport nz = crem::near_zero_check(p, 1e-3);
  doc["near_zero_worst_slack"] = nz.worst_slack;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

// Binary dump: magic "CREM", format version, N, k, seed, leaf doubles in
// breadth-first order, all little-endian.
int cmd_sample(const std::string& profile_path, int N, int k, std::uint64_t seed,
               const std::string& out_path) {
  const CovarianceProfile p = crem::io::load_profile(profile_path);
  std::vector<double> leaves;
  crem::fill_leaves(p, N, k, seed, leaves);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return 2;
  }
  const char magic[4] = {'C', 'R', 'E', 'M'};
  const std::uint32_t version = 1;
  const std::uint32_t n32 = static_cast<std::uint32_t>(N);
  const std::uint32_t k32 = static_cast<std::uint32_t>(k);
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&n32), 4);
  out.write(reinterpret_cast<const char*>(&k32), 4);
  out.write(reinterpret_cast<const char*>(&seed), 8);
  out.write(reinterpret_cast<const char*>(leaves.data()),
            static_cast<std::streamsize>(leaves.size() * sizeof(double)));
  std::cout << "wrote " << leaves.size() << " leaves to " << out_path << "\n";
  return 0;
}

void print_estimate(const char* quantity, const crem::estimators::MomentEstimate& est) {
  nlohmann::json doc;
  doc["quantity"] = quantity;
  doc["mean"] = est.mean;
  doc["stderr"] = est.stderr_;
  doc["reps"] = est.reps;
  doc["seed"] = est.seed;
  doc["config"] = est.config;
  doc["warn"] = est.warn;
  std::cout << doc.dump(2) << "\n";
}

struct VerifyRow {
  std::string suite;
  std::string case_id;
  crem::oracles::Estimate a;
  crem::oracles::Estimate b;
  bool pass;
};

int cmd_verify(const std::string& suite, const std::string& profile_path,
               std::uint64_t seed, const std::string& report_path) {
  const CovarianceProfile p = crem::io::load_profile(profile_path);
  const double bc = crem::beta_c(crem::concave_hull(p));
  std::vector<VerifyRow> rows;
  using crem::oracles::Estimate;
  using crem::oracles::Method;

  if (suite == "tilting" || suite == "all") {
    crem::rng::Stream fuzz(crem::rng::substream(seed, 11));
    for (int c = 0; c < 50; ++c) {
      const int n = 1 + static_cast<int>(fuzz.next_u64() % 3);
      const double beta = 1.5 * fuzz.next_unit();
      std::vector<double> variances(n), barrier(n);
      double level = 0.0;
      for (int i = 0; i < n; ++i) {
        variances[i] = 0.2 + 2.8 * fuzz.next_unit();
        level += -1.0 + 4.0 * fuzz.next_unit();
        barrier[i] = level;
      }
      const double direct = crem::oracles::tilting_direct_quadrature(variances, barrier, beta);
      const Estimate tilted = crem::oracles::tilting_expectation(
          variances, barrier, beta, Method::Quadrature, 0, 0);
      const double denom = std::max({std::abs(direct), std::abs(tilted.value), 1e-300});
      rows.push_back({"tilting", "fuzz-" + std::to_string(c), {direct, 0.0}, tilted,
                      std::abs(direct - tilted.value) / denom <= 1e-6});
    }
  }
  if (suite == "many-to-one" || suite == "all") {
    int c = 0;
    for (int N : {8, 10}) {
      for (int k : {0, 2}) {
        for (double frac : {0.5, 0.9}) {
          const double beta = frac * bc;
          const BarrierParams ab{0.2, 0.5};  // binding test barrier
          const std::uint64_t cs = crem::rng::substream(seed, 21 + c);
          const Estimate walk = crem::oracles::many_to_one_expectation(
              p, N, k, beta, ab, Method::MonteCarlo, 100000, crem::rng::substream(cs, 0));
          const Estimate tree = crem::oracles::brute_force_tree_moment(
              p, N, k, beta, ab, 1, 20000, crem::rng::substream(cs, 1));
          std::ostringstream id;
          id << "N" << N << "-k" << k << "-b" << frac;
          rows.push_back({"many-to-one", id.str(), walk, tree,
                          crem::oracles::agree(walk, tree)});
          ++c;
        }
      }
    }
  }
  if (suite == "many-to-two" || suite == "all") {
    int c = 0;
    for (int k : {0, 2}) {
      for (double frac : {0.5, 0.9}) {
        const double beta = frac * bc;
        const BarrierParams ab{0.2, 0.5};  // binding test barrier
        const std::uint64_t cs = crem::rng::substream(seed, 61 + c);
        const Estimate pair = crem::oracles::many_to_two_expectation(
            p, 8, k, beta, ab, 100000, crem::rng::substream(cs, 0));
        const Estimate tree = crem::oracles::brute_force_tree_moment(
            p, 8, k, beta, ab, 2, 20000, crem::rng::substream(cs, 1));
        std::ostringstream id;
        id << "N8-k" << k << "-b" << frac;
        rows.push_back({"many-to-two", id.str(), pair, tree,
                        crem::oracles::agree(pair, tree)});
        ++c;
      }
    }
  }
  if (suite == "one-step" || suite == "all") {
    for (int c = 0; c < 20; ++c) {
      const std::uint64_t cs = crem::rng::substream(seed, 81 + c);
      const crem::TreeSample tree = crem::sample_tree(p, 10, 0, cs);
      const double beta = 0.9 * bc * (c + 1) / 20.0;
      const double res = crem::one_step_residual(tree, beta);
      rows.push_back({"one-step", "sample-" + std::to_string(c), {res, 0.0},
                      {0.0, 0.0}, res <= 1e-10});
    }
  }
  if (rows.empty()) {
    std::cerr << "unknown suite: " << suite
              << " (expected tilting|many-to-one|many-to-two|one-step|all)\n";
    return 2;
  }

  std::ostringstream csv;
  csv << "suite,case_id,value_a,se_a,value_b,se_b,pass\n";
  bool all_pass = true;
  for (const VerifyRow& r : rows) {
    csv << r.suite << ',' << r.case_id << ',' << crem::io::format_double(r.a.value)
        << ',' << crem::io::format_double(r.a.se) << ','
        << crem::io::format_double(r.b.value) << ',' << crem::io::format_double(r.b.se)
        << ',' << (r.pass ? "1" : "0") << '\n';
    if (!r.pass) all_pass = false;
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << csv.str();
  }
  std::cout << csv.str();
  std::cout << (all_pass ? "verify: all cases pass\n" : "verify: FAILURES present\n");
  return all_pass ? 0 : 1;
}

int cmd_bounds(const std::string& profile_path, double beta, double s, int N, double gamma,
               bool empirical, std::size_t reps, std::uint64_t seed, int threads) {
  const CovarianceProfile p = crem::io::load_profile(profile_path);
  const crem::bounds::BoundLedger led =
      crem::bounds::make_ledger(p, beta, s, N, gamma, empirical, reps, seed);
  (void)threads;
  nlohmann::json doc;
  doc["beta"] = led.beta;
  doc["beta_c"] = crem::beta_c(crem::concave_hull(p));
  doc["s"] = led.s;
  doc["gamma"] = led.gamma;
  doc["K"] = led.K;
  doc["K1"] = led.K1;
  doc["a"] = led.a;
  doc["b"] = led.b;
  doc["c"] = led.c;
  doc["hN"] = led.hN;
  doc["LN"] = led.LN;
  doc["log_C_second"] = led.log_C_second;
  doc["eta0_analytic"] = led.eta0_analytic;
  if (led.eta0_empirical) doc["eta0_empirical"] = *led.eta0_empirical;
  doc["eta0_source"] = led.eta0_source;
  doc["log_C_onestep"] = led.log_C_onestep;
  doc["log_eps"] = led.sequences.log_eps;
  doc["log_eta"] = led.sequences.log_eta;
  doc["r_N"] = led.r_N;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous random energy model: samplers, estimators, proof constants"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: CREM_THREADS or hardware)");

  std::string profile_path, out_path, config_path, suite = "all", quantity = "negmoment";
  int N = 16, k = 0;
  double beta = 0.5, s = 1.0, eps = 0.5, gamma = 1.5;
  std::uint64_t seed = 1;
  std::size_t reps = 10000;
  bool empirical = false;
  int only = 0;

  auto* info = app.add_subcommand("profile-info", "hull, beta_c, free energy, growth rate");
  info->add_option("profile", profile_path, "profile JSON path")->required();

  auto* sample = app.add_subcommand("sample", "dump one leaf-level field sample");
  sample->add_option("profile", profile_path)->required();
  sample->add_option("-N,--depth", N, "tree depth")->required();
  sample->add_option("-k,--offset", k, "subtree offset");
  sample->add_option("--seed", seed);
  sample->add_option("-o,--out", out_path, "binary output path")->required();

  auto* est = app.add_subcommand("estimate", "Monte Carlo estimators");
  est->add_option("--config", config_path, "batch config JSON (overrides flags)");
  est->add_option("--profile", profile_path);
  est->add_option("--quantity", quantity, "negmoment|lefttail|freenergy|max");
  est->add_option("-N,--depth", N);
  est->add_option("-k,--offset", k);
  est->add_option("--beta", beta);
  est->add_option("-s,--order", s, "moment order (negmoment)");
  est->add_option("--eps", eps, "threshold fraction (lefttail)");
  est->add_option("--reps", reps);
  est->add_option("--seed", seed);
  est->add_option("-o,--out", out_path, "CSV output path (batch mode)");

  auto* verify = app.add_subcommand("verify", "cross-check oracles pairwise");
  verify->add_option("suite", suite, "tilting|many-to-one|many-to-two|one-step|all");
  verify->add_option("--profile", profile_path)->required();
  verify->add_option("--seed", seed);
  verify->add_option("-o,--report", out_path, "CSV report path");

  auto* bnd = app.add_subcommand("bounds", "explicit proof-constant ledger");
  bnd->add_option("--profile", profile_path)->required();
  bnd->add_option("--beta", beta)->required();
  bnd->add_option("-s,--order", s);
  bnd->add_option("-N,--depth", N);
  bnd->add_option("--gamma", gamma);
  bnd->add_flag("--empirical-eta0", empirical, "estimate eta0 by Monte Carlo too");
  bnd->add_option("--reps", reps);
  bnd->add_option("--seed", seed);

  auto* acc = app.add_subcommand("accept", "run the acceptance criteria");
  acc->add_option("--seed", seed);
  acc->add_option("--only", only, "run a single criterion (1-10)");
  acc->add_option("-o,--report", out_path, "JSON report path");

  CLI11_PARSE(app, argc, argv);
  const int nthreads = crem::resolve_threads(threads);

  try {
    if (*info) return cmd_profile_info(profile_path);
    if (*sample) return cmd_sample(profile_path, N, k, seed, out_path);
    if (*est) {
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
          std::cerr << "cannot read config: " << config_path << "\n";
          return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        crem::batch::ExperimentConfig cfg = crem::batch::parse_config(buf.str());
        if (!out_path.empty()) cfg.out = out_path;
        std::cout << crem::batch::run_batch(cfg, nthreads);
        return 0;
      }
      if (profile_path.empty()) {
        std::cerr << "estimate: need --config or --profile\n";
        return 2;
      }
      const CovarianceProfile p = crem::io::load_profile(profile_path);
      using namespace crem::estimators;
      if (quantity == "negmoment")
        print_estimate("negmoment", estimate_neg_moment(p, N, beta, s, reps, seed, nthreads));
      else if (quantity == "lefttail")
        print_estimate("lefttail",
                       estimate_left_tail(p, N, k, beta, eps, reps, seed, nthreads));
      else if (quantity == "freenergy")
        print_estimate("freenergy", estimate_free_energy(p, N, beta, reps, seed, nthreads));
      else if (quantity == "max")
        print_estimate("max", estimate_max(p, N, reps, seed, nthreads));
      else {
        std::cerr << "unknown quantity: " << quantity << "\n";
        return 2;
      }
      return 0;
    }
    if (*verify) return cmd_verify(suite, profile_path, seed, out_path);
    if (*bnd) return cmd_bounds(profile_path, beta, s, N, gamma, empirical, reps, seed,
                                nthreads);
    if (*acc) {
      const crem::accept::RunResult res = crem::accept::run_all(seed, nthreads, only);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << crem::accept::report_json(res);
      }
      return res.all_pass ? 0 : 1;
    }
  } catch (const crem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
