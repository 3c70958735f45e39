#include "fluctlab/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "fluctlab/errors.hpp"
#include "fluctlab/format.hpp"

namespace fluct {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

McEstimate make_estimate(std::int64_t count, std::int64_t paths) {
  McEstimate e;
  e.count = count;
  if (paths <= 0) return e;
  e.p = static_cast<double>(count) / static_cast<double>(paths);
  e.se = std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(paths));
  return e;
}

void check_config(const SimConfig& cfg) {
  if (cfg.paths < 1) throw Error(ErrorCode::InvalidArgument, "paths must be >= 1");
  if (cfg.horizon < 0) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 0");
  if (cfg.workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
}

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t path) : key_(splitmix(seed ^ splitmix(path))) {}

std::uint64_t PathRng::next() { return splitmix(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

double PathRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

AliasTable::AliasTable(const WalkSpec& w) {
  const std::size_t k = w.size();
  std::vector<double> scaled;
  for (const auto& s : w.steps()) {
    offsets_.push_back(s.offset);
    scaled.push_back(s.prob * static_cast<double>(k));
  }
  cut_.assign(k, 1.0);
  alias_.resize(k);
  for (std::size_t j = 0; j < k; ++j) alias_[j] = j;
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t j = 0; j < k; ++j) (scaled[j] < 1.0 ? small : large).push_back(j);
  while (!small.empty() && !large.empty()) {
    std::size_t s = small.back();
    small.pop_back();
    std::size_t l = large.back();
    cut_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (auto j : small) cut_[j] = 1.0;
  for (auto j : large) cut_[j] = 1.0;
}

std::int64_t AliasTable::sample(PathRng& rng) const {
  const std::uint64_t bits = rng.next();
  const std::size_t column = static_cast<std::size_t>((static_cast<unsigned __int128>(bits) * offsets_.size()) >> 64);
  const double coin = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
  return offsets_[coin < cut_[column] ? column : alias_[column]];
}

std::vector<McEstimate> mc_survival_curve(const WalkSpec& w, StoppingTimeKind kind, const SimConfig& cfg) {
  check_config(cfg);
  const AliasTable table(w);
  const std::size_t len = static_cast<std::size_t>(cfg.horizon) + 1;
  // died[n] counts paths whose stopping time equals n.
  std::vector<std::int64_t> died(len, 0);
#pragma omp parallel num_threads(cfg.workers)
  {
    std::vector<std::int64_t> local(len, 0);
#pragma omp for schedule(static)
    for (std::int64_t p = 0; p < cfg.paths; ++p) {
      PathRng rng(cfg.seed, static_cast<std::uint64_t>(p));
      std::int64_t s = 0;
      for (std::int64_t n = 1; n <= cfg.horizon; ++n) {
        s += table.sample(rng);
        if (!kind.survives(s)) {
          ++local[static_cast<std::size_t>(n)];
          break;
        }
      }
    }
#pragma omp critical
    for (std::size_t n = 0; n < len; ++n) died[n] += local[n];
  }
  std::vector<McEstimate> out;
  std::int64_t alive = cfg.paths;
  for (std::size_t n = 0; n < len; ++n) {
    alive -= died[n];
    out.push_back(make_estimate(alive, cfg.paths));
  }
  return out;
}

McEstimate mc_survival(const WalkSpec& w, StoppingTimeKind kind, const SimConfig& cfg) {
  return mc_survival_curve(w, kind, cfg).back();
}

McEstimate McLaw::at(std::int64_t x) const {
  if (x < lo || x > hi()) return make_estimate(0, paths);
  return points[static_cast<std::size_t>(x - lo)];
}

McLaw mc_reflected(const WalkSpec& w, std::int64_t x0, const SimConfig& cfg) {
  check_config(cfg);
  if (x0 < 0) throw Error(ErrorCode::InvalidArgument, "reflected walk needs x0 >= 0");
  const AliasTable table(w);
  const std::int64_t top = x0 + cfg.horizon * std::max<std::int64_t>(w.max_step(), 0);
  const std::size_t len = static_cast<std::size_t>(top) + 1;
  std::vector<std::int64_t> hist(len, 0);
#pragma omp parallel num_threads(cfg.workers)
  {
    std::vector<std::int64_t> local(len, 0);
#pragma omp for schedule(static)
    for (std::int64_t p = 0; p < cfg.paths; ++p) {
      PathRng rng(cfg.seed, static_cast<std::uint64_t>(p));
      std::int64_t x = x0;
      for (std::int64_t n = 1; n <= cfg.horizon; ++n) x = std::max<std::int64_t>(x + table.sample(rng), 0);
      ++local[static_cast<std::size_t>(x)];
    }
#pragma omp critical
    for (std::size_t j = 0; j < len; ++j) hist[j] += local[j];
  }
  McLaw law;
  law.lo = 0;
  law.paths = cfg.paths;
  std::size_t last = 0;
  for (std::size_t j = 0; j < len; ++j) {
    if (hist[j] != 0) last = j;
  }
  for (std::size_t j = 0; j <= last; ++j) law.points.push_back(make_estimate(hist[j], cfg.paths));
  return law;
}

void write_mc_survival_csv(std::ostream& os, const std::vector<McEstimate>& curve) {
  os << "n,survival_prob,std_error,count\n";
  for (std::size_t n = 0; n < curve.size(); ++n) {
    os << n << ',' << format_number(curve[n].p) << ',' << format_number(curve[n].se) << ',' << curve[n].count << '\n';
  }
}

void write_mc_law_csv(std::ostream& os, const McLaw& law) {
  os << "x,mass,std_error,count\n";
  for (std::int64_t x = law.lo; x <= law.hi(); ++x) {
    const auto& e = law.at(x);
    os << x << ',' << format_number(e.p) << ',' << format_number(e.se) << ',' << e.count << '\n';
  }
}

}  // namespace fluct
