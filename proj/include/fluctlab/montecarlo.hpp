#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fluctlab/exactdp.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t paths = 100000;
  std::int64_t horizon = 0;
  int workers = 1;
};

// Counter-based generator: the stream of path p under seed s is a pure
// function of (s, p), so any partition of paths over workers gives the same
// draws.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path);
  std::uint64_t next();
  double uniform();  // [0, 1)

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Vose alias table over the walk's support.
class AliasTable {
 public:
  explicit AliasTable(const WalkSpec& w);
  std::int64_t sample(PathRng& rng) const;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<double> cut_;
  std::vector<std::size_t> alias_;
};

struct McEstimate {
  double p = 0.0;
  double se = 0.0;
  std::int64_t count = 0;
};

// P[tau > n] for n = 0..horizon from one batch of paths.
std::vector<McEstimate> mc_survival_curve(const WalkSpec& w, StoppingTimeKind kind, const SimConfig& cfg);
McEstimate mc_survival(const WalkSpec& w, StoppingTimeKind kind, const SimConfig& cfg);

struct McLaw {
  std::int64_t lo = 0;
  std::vector<McEstimate> points;
  std::int64_t paths = 0;

  McEstimate at(std::int64_t x) const;
  std::int64_t hi() const { return lo + static_cast<std::int64_t>(points.size()) - 1; }
};

// Empirical law of X_N for the reflected chain from x0.
McLaw mc_reflected(const WalkSpec& w, std::int64_t x0, const SimConfig& cfg);

void write_mc_survival_csv(std::ostream& os, const std::vector<McEstimate>& curve);
void write_mc_law_csv(std::ostream& os, const McLaw& law);

}  // namespace fluct
