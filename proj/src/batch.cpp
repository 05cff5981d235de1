#include "crem/batch.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crem/errors.hpp"
#include "crem/estimators.hpp"
#include "crem/io.hpp"
#include "crem/rng.hpp"

namespace crem::batch {

using nlohmann::json;

Quantity quantity_from_string(const std::string& name) {
  if (name == "negmoment") return Quantity::NegMoment;
  if (name == "lefttail") return Quantity::LeftTail;
  if (name == "freenergy") return Quantity::FreeEnergy;
  if (name == "max") return Quantity::Max;
  throw ConfigParseError("unknown quantity: " + name);
}

std::string quantity_to_string(Quantity q) {
  switch (q) {
    case Quantity::NegMoment: return "negmoment";
    case Quantity::LeftTail: return "lefttail";
    case Quantity::FreeEnergy: return "freenergy";
    case Quantity::Max: return "max";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigParseError(std::string("config JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg.profile_path = doc.at("profile").get<std::string>();
    cfg.quantity = quantity_from_string(doc.at("quantity").get<std::string>());
    cfg.reps = doc.at("reps").get<std::size_t>();
    cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.out = doc.value("out", "");
    for (const auto& row : doc.at("grid")) {
      GridPoint p;
      p.n = row.at("n").get<int>();
      p.k = row.value("k", 0);
      p.beta = row.value("beta", 0.0);
      if (row.contains("s")) p.s_or_eps = row["s"].get<double>();
      if (row.contains("eps")) p.s_or_eps = row["eps"].get<double>();
      cfg.grid.push_back(p);
    }
  } catch (const json::exception& e) {
    throw ConfigParseError(std::string("config JSON: ") + e.what());
  }
  if (cfg.reps < 2) throw ConfigParseError("config: reps must be at least 2");
  if (cfg.grid.empty()) throw ConfigParseError("config: grid must be nonempty");
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    const GridPoint& p = cfg.grid[i];
    std::ostringstream os;
    os << "config grid row " << i << ": ";
    if (p.n < 1 || p.k < 0 || p.n - p.k < 1) {
      os << "need 1 <= n and 0 <= k < n";
      throw ConfigParseError(os.str());
    }
    if (p.beta < 0.0) {
      os << "beta must be nonnegative";
      throw ConfigParseError(os.str());
    }
    if (cfg.quantity == Quantity::NegMoment && !(p.s_or_eps > 0.0)) {
      os << "negmoment needs s > 0";
      throw ConfigParseError(os.str());
    }
    if (cfg.quantity == Quantity::LeftTail &&
        !(p.s_or_eps > 0.0 && p.s_or_eps < 1.0)) {
      os << "lefttail needs eps in (0,1)";
      throw ConfigParseError(os.str());
    }
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json doc;
  doc["profile"] = cfg.profile_path;
  doc["quantity"] = quantity_to_string(cfg.quantity);
  doc["reps"] = cfg.reps;
  doc["seed"] = cfg.seed;
  if (!cfg.out.empty()) doc["out"] = cfg.out;
  doc["grid"] = json::array();
  for (const GridPoint& p : cfg.grid) {
    json row;
    row["n"] = p.n;
    row["k"] = p.k;
    row["beta"] = p.beta;
    if (cfg.quantity == Quantity::NegMoment) row["s"] = p.s_or_eps;
    if (cfg.quantity == Quantity::LeftTail) row["eps"] = p.s_or_eps;
    doc["grid"].push_back(row);
  }
  return doc.dump(2);
}

std::string run_batch(const ExperimentConfig& cfg, int threads) {
  const CovarianceProfile profile = io::load_profile(cfg.profile_path);
  std::ostringstream csv;
  csv << "quantity,profile_hash,N,k,beta,s_or_eps,reps,seed,mean,stderr,warn\n";
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    const GridPoint& p = cfg.grid[i];
    const std::uint64_t row_seed = rng::substream(cfg.seed, i);
    estimators::MomentEstimate est;
    switch (cfg.quantity) {
      case Quantity::NegMoment:
        est = estimators::estimate_neg_moment(profile, p.n, p.beta, p.s_or_eps, cfg.reps,
                                              row_seed, threads);
        break;
      case Quantity::LeftTail:
        est = estimators::estimate_left_tail(profile, p.n, p.k, p.beta, p.s_or_eps,
                                             cfg.reps, row_seed, threads);
        break;
      case Quantity::FreeEnergy:
        est = estimators::estimate_free_energy(profile, p.n, p.beta, cfg.reps, row_seed,
                                               threads);
        break;
      case Quantity::Max:
        est = estimators::estimate_max(profile, p.n, cfg.reps, row_seed, threads);
        break;
    }
    csv << quantity_to_string(cfg.quantity) << ',' << io::profile_digest_hex(profile)
        << ',' << p.n << ',' << p.k << ',' << io::format_double(p.beta) << ','
        << io::format_double(p.s_or_eps) << ',' << cfg.reps << ',' << row_seed << ','
        << io::format_double(est.mean) << ',' << io::format_double(est.stderr_) << ','
        << est.warn << '\n';
  }
  const std::string table = csv.str();
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    if (!out) throw ConfigParseError("cannot write output file: " + cfg.out);
    out << table;
  }
  return table;
}

}  // namespace crem::batch
