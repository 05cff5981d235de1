#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crem/profile.hpp"

namespace crem::batch {

enum class Quantity { NegMoment, LeftTail, FreeEnergy, Max };

Quantity quantity_from_string(const std::string& name);
std::string quantity_to_string(Quantity q);

struct GridPoint {
  int n = 0;
  int k = 0;
  double beta = 0.0;
  double s_or_eps = 0.0;  // s for negmoment, eps for lefttail, unused otherwise
};

/// One deterministic experiment batch: every grid point runs from a stream
/// derived from (master seed, row index), so reruns reproduce the numeric
/// columns byte for byte.
struct ExperimentConfig {
  std::string profile_path;
  Quantity quantity = Quantity::NegMoment;
  std::vector<GridPoint> grid;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::string out;  // optional CSV path
};

ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& config);

/// Runs the grid in order and returns the CSV table (header +  one row per
/// point); also writes config.out when set.
std::string run_batch(const ExperimentConfig& config, int threads);

}  // namespace crem::batch
