#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fluctlab/io.hpp"
#include "fluctlab/measure.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

enum class Claim { T1, P5, T6, T7, P9, T10, P11, T13, C14, T16 };

const std::vector<Claim>& all_claims();
std::string claim_name(Claim c);
// Accepts the ids above plus the long forms Prop5, Thm6, Cor14, ...
Claim parse_claim(const std::string& name);  // UnknownClaim

struct ClaimParams {
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> i;
  std::optional<std::int64_t> x;  // T13 start point
  std::optional<TestFunction> phi;
  std::vector<std::int64_t> grid{512, 1024, 2048, 4096};
  std::optional<double> tolerance;
};

// Limit claims carry an extrapolated limit and a predicted constant. The
// boundedness claim (P9) carries the sup over n <= grid.back() in
// `extrapolated`, no prediction, and the growth statistic in rel_dev.
struct LimitReport {
  std::string claim;
  std::string walk_hash;
  std::string sequence;   // what n^p x_n is
  double exponent = 0.0;  // p
  std::vector<std::int64_t> n_grid;
  std::vector<double> grid_values;  // n^p x_n at the grid points
  Estimate extrapolated;
  std::optional<Estimate> predicted;
  std::string predicted_source;
  double rel_dev = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> extras;

  double extra(const std::string& key) const;  // NaN when absent
  Json to_json() const;
};

// Checks the claim's hypotheses first (NotAdapted, NotAperiodic,
// HypothesisViolation), then builds the DP sequence, extrapolates and
// compares with the constant from the limiting objects.
LimitReport verify_claim(Claim claim, const WalkSpec& w, const ClaimParams& params = {});

// Defaults used when ClaimParams leaves a field empty.
double default_tolerance(Claim claim, const WalkSpec& w);

}  // namespace fluct
