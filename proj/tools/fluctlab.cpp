#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fluctlab/asymptotics.hpp"
#include "fluctlab/claims.hpp"
#include "fluctlab/errors.hpp"
#include "fluctlab/exactdp.hpp"
#include "fluctlab/fluctuation.hpp"
#include "fluctlab/format.hpp"
#include "fluctlab/harmonic.hpp"
#include "fluctlab/io.hpp"
#include "fluctlab/montecarlo.hpp"
#include "fluctlab/series.hpp"

namespace fs = std::filesystem;
using namespace fluct;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kBadInput = 3, kUnknownClaim = 4, kHypothesis = 5, kResource = 6 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput:
    case ErrorCode::EmptyWalk:
    case ErrorCode::MassNotOne:
    case ErrorCode::NegativeMass:
    case ErrorCode::DuplicateOffset:
    case ErrorCode::DegenerateSupport:
      return kBadInput;
    case ErrorCode::UnknownClaim:
      return kUnknownClaim;
    case ErrorCode::NotAdapted:
    case ErrorCode::NotAperiodic:
    case ErrorCode::NotSupercritical:
    case ErrorCode::NoInteriorMinimizer:
    case ErrorCode::HypothesisViolation:
    case ErrorCode::SupportViolation:
      return kHypothesis;
    case ErrorCode::HorizonTooLarge:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::ResidualTooLarge:
    case ErrorCode::WindowInsufficient:
      return kResource;
    case ErrorCode::NoConvergence:
      return kFail;
    case ErrorCode::InvalidArgument:
    case ErrorCode::InexactWalk:
    case ErrorCode::AtomAtZeroIsOne:
    case ErrorCode::WindowEmpty:
    case ErrorCode::NonGeometricGrid:
      return kUsage;
  }
  return kFail;
}

struct Options {
  std::string walk;
  std::string mode = "float";
  std::string out = "fluctlab_out";
  std::int64_t n_max = 4096;
  std::uint64_t seed = 1;
  int workers = 1;

  std::string kind = "gt";
  std::int64_t r = 0;
  std::optional<std::int64_t> i;
  std::int64_t x0 = 0;
  std::optional<std::int64_t> n;
  std::string which;
  std::string method = "factorized";
  std::int64_t extent = 8;
  std::int64_t terms = 20000;
  std::string identity = "both";
  std::int64_t order = 30;
  std::string formulation = "window";
  std::int64_t r_max = 4;
  std::optional<std::int64_t> depth;
  std::string claim;
  std::optional<std::int64_t> claim_r;
  std::optional<std::int64_t> x;
  std::optional<double> tol;
  std::vector<std::int64_t> grid;
  std::string phi_file;
  std::optional<std::int64_t> at;
  std::int64_t paths = 100000;
  bool reflected = false;
};

// Shared state of one invocation: what was written and which walk was used.
struct Run {
  std::string command;
  Options opt;
  Json params = Json::object();
  std::string walk_hash;
  std::vector<std::string> outputs;

  fs::path out_dir() const { return fs::path(opt.out); }

  void write(const std::string& name, const std::string& text) {
    fs::create_directories(out_dir());
    write_text_file(out_dir() / name, text);
    outputs.push_back(name);
    std::cerr << "wrote " << (out_dir() / name).string() << "\n";
  }

  void write_json(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }

  WalkSpec walk() {
    if (opt.walk.empty()) throw Error(ErrorCode::InvalidArgument, "--walk is required for " + command);
    WalkSpec w = load_walk(opt.walk);
    walk_hash = w.hash();
    return w;
  }

  bool rational() const { return opt.mode == "rational"; }

  std::int64_t horizon() const { return opt.n.value_or(opt.n_max); }

  TestFunction phi(std::int64_t fallback) const {
    if (!opt.phi_file.empty()) return load_test_function(opt.phi_file);
    return TestFunction::indicator(opt.at.value_or(fallback));
  }

  void manifest(const std::string& error) {
    RunManifest m{command, walk_hash, params, outputs};
    Json j = m.to_json();
    if (!error.empty()) j["error"] = error;
    try {
      fs::create_directories(out_dir());
      write_text_file(out_dir() / (command + "_manifest.json"), j.dump(2) + "\n");
    } catch (const std::exception& e) {
      std::cerr << "could not write manifest: " << e.what() << "\n";
    }
  }
};

std::string csv(const std::function<void(std::ostream&)>& f) {
  std::ostringstream ss;
  f(ss);
  return ss.str();
}

Json walk_summary(const WalkSpec& w) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < w.size(); ++k) {
    Json s{{"offset", w.steps()[k].offset}};
    s["prob"] = w.is_exact() ? Json(to_string(w.exact_probs()[k])) : number_json(w.steps()[k].prob);
    steps.push_back(s);
  }
  Json j{{"hash", w.hash()}, {"steps", steps}};
  if (w.is_exact()) {
    auto m = moments(w);
    j["mean"] = to_string(m.mean);
    j["variance"] = to_string(m.sigma2);
  }
  j["sigma"] = number_json(w.sigma());
  j["min_step"] = w.min_step();
  j["max_step"] = w.max_step();
  j["adapted"] = w.adapted();
  j["aperiodic"] = w.aperiodic();
  j["period"] = w.period();
  j["centered"] = w.centered();
  return j;
}

int cmd_validate(Run& run) {
  WalkSpec w = run.walk();
  Json summary = walk_summary(w);
  run.write_json("walk.json", summary);
  std::cout << summary.dump(2) << "\n";
  // Full AA(Z) validation: NotAdapted / NotAperiodic surface as exit 5.
  validate(parse_walk_json(read_text_file(run.opt.walk)));
  return kPass;
}

int cmd_table(Run& run) {
  WalkSpec w = run.walk();
  auto kind = parse_kind(run.opt.kind, run.opt.r);
  const std::int64_t n = run.horizon();
  run.params["kind"] = kind.name();
  run.params["n"] = n;
  std::string text;
  if (run.rational()) {
    auto t = constrained_table<Rational>(w, kind, n);
    text = csv([&](std::ostream& os) { write_table_csv(os, t); });
  } else {
    auto t = constrained_table<double>(w, kind, n);
    text = csv([&](std::ostream& os) { write_table_csv(os, t); });
  }
  run.write("table.csv", text);
  std::cout << "table " << kind.name() << " n=" << n << " rows written\n";
  return kPass;
}

int cmd_reflected(Run& run) {
  WalkSpec w = run.walk();
  const std::int64_t n = run.horizon();
  run.params["x0"] = run.opt.x0;
  run.params["n"] = n;
  std::string text;
  if (run.rational()) {
    auto t = reflected_table<Rational>(w, run.opt.x0, n);
    text = csv([&](std::ostream& os) { write_reflected_csv(os, t); });
  } else {
    auto t = reflected_table<double>(w, run.opt.x0, n);
    text = csv([&](std::ostream& os) { write_reflected_csv(os, t); });
  }
  run.write("reflected.csv", text);
  std::cout << "reflected law from x0=" << run.opt.x0 << " to n=" << n << "\n";
  return kPass;
}

LadderSource ladder_source(const Run& run) {
  LadderSource src;
  if (run.opt.method == "dp") {
    src.method = LadderSource::Method::Dp;
    src.horizon = run.opt.n.value_or(1 << 16);
  } else if (run.opt.method != "factorized") {
    throw Error(ErrorCode::InvalidArgument, "--method must be factorized or dp");
  }
  return src;
}

std::string file_tag(std::string tag) {
  for (auto& c : tag) {
    if (c == '*') c = 's';
    if (c == '+') c = 'p';
    if (c == '-') c = 'm';
  }
  return tag;
}

std::vector<Ladder> ladder_selection(const std::string& which) {
  if (which.empty() || which == "all") {
    return {Ladder::StrictAscending, Ladder::WeakAscending, Ladder::WeakDescending, Ladder::StrictDescending};
  }
  return {parse_ladder(which)};
}

int cmd_ladder(Run& run) {
  WalkSpec w = run.walk();
  auto src = ladder_source(run);
  run.params["which"] = run.opt.which.empty() ? "all" : run.opt.which;
  run.params["method"] = run.opt.method;
  for (auto l : ladder_selection(run.opt.which)) {
    auto m = ladder(w, l, src);
    run.write("ladder_" + file_tag(ladder_tag(l)) + ".csv", csv([&](std::ostream& os) { write_measure_csv(os, m); }));
    std::cout << ladder_tag(l) << ": total " << format_number(m.total()) << ", residual " << format_number(m.residual)
              << "\n";
  }
  return kPass;
}

int cmd_potential(Run& run) {
  WalkSpec w = run.walk();
  auto src = ladder_source(run);
  run.params["which"] = run.opt.which.empty() ? "all" : run.opt.which;
  run.params["extent"] = run.opt.extent;
  for (auto l : ladder_selection(run.opt.which)) {
    auto u = ladder_potential(w, l, run.opt.extent, src);
    run.write("potential_" + file_tag(u.tag) + ".csv", csv([&](std::ostream& os) { write_measure_csv(os, u); }));
    std::cout << u.tag << " on [" << u.lo << ", " << u.hi() << "], residual " << format_number(u.residual) << "\n";
  }
  return kPass;
}

int cmd_measures(Run& run) {
  WalkSpec w = run.walk();
  auto src = ladder_source(run);
  run.params["which"] = run.opt.which.empty() ? "all" : run.opt.which;
  run.params["extent"] = run.opt.extent;
  const std::vector<std::string> a_names{"a-", "a*-", "a+", "a*+"};
  const std::vector<std::string> b_names{"b*+", "b+", "b*-", "b-"};
  auto emit = [&](const LatticeMeasure& m, const std::string& name) {
    run.write("measure_" + file_tag(name) + ".csv", csv([&](std::ostream& os) { write_measure_csv(os, m); }));
    std::cout << name << " on [" << m.lo << ", " << m.hi() << "], total " << format_number(m.total()) << "\n";
  };
  const std::string& which = run.opt.which;
  bool any = false;
  for (const auto& a : a_names) {
    if (which.empty() || which == "all" || which == a) {
      emit(a_measure(w, parse_a_flavor(a), run.opt.extent, src), a);
      any = true;
    }
  }
  for (const auto& b : b_names) {
    if (which.empty() || which == "all" || which == b) {
      emit(b_measure(w, parse_b_flavor(b), src), b);
      any = true;
    }
  }
  if (which.empty() || which == "all" || which == "b*+displayed") {
    emit(b_strict_plus_displayed(w, run.opt.extent, src), "b*+displayed");
    any = true;
  }
  if (!any) throw Error(ErrorCode::InvalidArgument, "unknown measure '" + which + "'");
  return kPass;
}

int cmd_constants(Run& run) {
  WalkSpec w = run.walk();
  const std::string which = run.opt.which.empty() ? "all" : run.opt.which;
  if (which != "all" && which != "kappa" && which != "kappa_tilde") {
    throw Error(ErrorCode::InvalidArgument, "--which must be kappa, kappa_tilde or all");
  }
  run.params["which"] = which;
  run.params["terms"] = run.opt.terms;
  auto c = fluctuation_constants(w, run.opt.terms, ladder_source(run));
  Json list = Json::array();
  for (const auto& e : c.all()) {
    const bool tilde = e.object.find("tilde") != std::string::npos;
    if (which == "all" || (which == "kappa_tilde") == tilde) list.push_back(estimate_json(e.object, e.method, e.estimate));
  }
  Json j = constants_json(c);
  j["constants"] = list;
  run.write_json("constants.json", j);
  std::cout << list.dump(2) << "\n";
  return kPass;
}

int cmd_wh_check(Run& run) {
  WalkSpec w = run.walk();
  run.params["identity"] = run.opt.identity;
  run.params["order"] = run.opt.order;
  std::vector<std::pair<std::string, WhIdentity>> ids;
  if (run.opt.identity == "survival" || run.opt.identity == "both") ids.emplace_back("survival", WhIdentity::Survival);
  if (run.opt.identity == "hit" || run.opt.identity == "both") ids.emplace_back("hit", WhIdentity::LadderHit);
  if (ids.empty()) throw Error(ErrorCode::InvalidArgument, "--identity must be survival, hit or both");
  Json j = Json::object();
  bool exact = true;
  for (const auto& [name, id] : ids) {
    Rational res = wh_series_check(w, id, run.opt.order);
    j[name] = to_string(res);
    exact = exact && sgn(res) == 0;
    std::cout << name << " identity, order " << run.opt.order << ": max residual " << to_string(res) << "\n";
  }
  run.write_json("wh_check.json", j);
  return exact ? kPass : kFail;
}

ZFormulation parse_formulation(const std::string& s) {
  if (s == "window") return ZFormulation::Window;
  if (s == "halfline") return ZFormulation::HalfLine;
  if (s == "fullline") return ZFormulation::FullLine;
  throw Error(ErrorCode::InvalidArgument, "--formulation must be window, halfline or fullline");
}

int cmd_z(Run& run) {
  WalkSpec w = run.walk();
  const std::int64_t i = run.opt.i.value_or(run.opt.r);
  run.params["r"] = run.opt.r;
  run.params["i"] = i;
  run.params["formulation"] = run.opt.formulation;
  Estimate z = Z_of(w, run.opt.r, i, parse_formulation(run.opt.formulation), ladder_source(run));
  Json j = estimate_json("Z(" + std::to_string(run.opt.r) + "," + std::to_string(i) + ")", run.opt.formulation, z);
  run.write_json("z.json", j);
  std::cout << j.dump(2) << "\n";
  return kPass;
}

int cmd_t16(Run& run) {
  WalkSpec w = run.walk();
  const std::int64_t i = run.opt.i.value_or(run.opt.r);
  run.params["r"] = run.opt.r;
  run.params["i"] = i;
  HarmonicOptions ho;
  ho.ladder = ladder_source(run);
  Estimate t = theorem16_constant(w, run.opt.r, i, ho);
  Json j = estimate_json("T16(" + std::to_string(run.opt.r) + "," + std::to_string(i) + ")", "harmonic", t);
  run.write_json("t16.json", j);
  std::cout << j.dump(2) << "\n";
  return kPass;
}

int cmd_q1(Run& run) {
  WalkSpec w = run.walk();
  const std::int64_t depth = run.opt.depth.value_or(run.opt.r_max);
  run.params["r_max"] = run.opt.r_max;
  run.params["depth"] = depth;
  run.params["n_max"] = run.opt.n_max;
  Q1Options qo;
  qo.ladder = ladder_source(run);
  qo.max_n = run.opt.n_max;
  auto rep = q1_report(w, q1_cells(run.opt.r_max, depth), qo);
  std::string text = csv([&](std::ostream& os) { write_q1_csv(os, rep); });
  run.write("q1.csv", text);
  std::cout << text;
  return kPass;
}

int cmd_tilt(Run& run) {
  WalkSpec w = run.walk();
  auto t = tilt(w);
  Json steps = Json::array();
  for (const auto& s : t.tilted.steps()) steps.push_back({{"offset", s.offset}, {"prob", number_json(s.prob)}});
  Json j{{"gamma0", number_json(t.gamma0)}, {"rho", number_json(t.rho)}, {"residual", number_json(t.residual)},
         {"tilted_mean", number_json(t.tilted.mean())}, {"tilted", {{"steps", steps}}}};
  run.write_json("tilt.json", j);
  std::cout << j.dump(2) << "\n";
  return kPass;
}

int cmd_t13(Run& run) {
  WalkSpec w = run.walk();
  TestFunction phi = run.phi(0);
  run.params["phi_file"] = run.opt.phi_file;
  if (run.opt.at) run.params["at"] = *run.opt.at;
  Json j;
  if (w.centered()) {
    Estimate c = theorem_constant(w, TheoremConstant::T13c, 0, phi);
    j = estimate_json("T13 centered constant", "kappa~ U+(phi)/sqrt(pi)", c);
  } else {
    NoncenteredOptions no;
    if (!run.opt.grid.empty()) no.grid = run.opt.grid;
    auto nc = theorem13_noncentered(w, phi, no);
    j = estimate_json("T13 non-centered constant C(phi)", "aB + bA on the tilted walk", nc.C);
    j["rho"] = number_json(nc.rho);
    j["gamma0"] = number_json(nc.gamma0);
    j["a"] = number_json(nc.a.value);
    j["A"] = number_json(nc.A.value);
    j["b"] = number_json(nc.b.value);
    j["B"] = number_json(nc.B.value);
  }
  run.write_json("t13.json", j);
  std::cout << j.dump(2) << "\n";
  return kPass;
}

ClaimParams claim_params(Run& run) {
  ClaimParams p;
  p.r = run.opt.claim_r;
  p.i = run.opt.i;
  p.x = run.opt.x;
  p.tolerance = run.opt.tol;
  if (!run.opt.grid.empty()) p.grid = run.opt.grid;
  if (!run.opt.phi_file.empty() || run.opt.at) p.phi = run.phi(0);
  if (p.r) run.params["r"] = *p.r;
  if (p.i) run.params["i"] = *p.i;
  if (p.x) run.params["x"] = *p.x;
  if (p.tolerance) run.params["tol"] = number_json(*p.tolerance);
  if (!run.opt.phi_file.empty()) run.params["phi_file"] = run.opt.phi_file;
  if (run.opt.at) run.params["at"] = *run.opt.at;
  run.params["grid"] = p.grid;
  return p;
}

void print_report(const LimitReport& r) {
  std::cout << r.claim << ": " << r.sequence << " -> " << format_number(r.extrapolated.value);
  if (r.predicted) std::cout << " vs " << format_number(r.predicted->value) << " (" << r.predicted_source << ")";
  std::cout << ", dev " << format_number(r.rel_dev) << ", tol " << format_number(r.tolerance) << ": "
            << (r.pass ? "PASS" : "FAIL") << "\n";
}

int cmd_verify(Run& run) {
  if (run.opt.claim.empty()) throw Error(ErrorCode::InvalidArgument, "--claim is required");
  Claim claim = parse_claim(run.opt.claim);
  run.params["claim"] = claim_name(claim);
  WalkSpec w = run.walk();
  auto rep = verify_claim(claim, w, claim_params(run));
  run.write_json("verify_" + rep.claim + ".json", rep.to_json());
  print_report(rep);
  return rep.pass ? kPass : kFail;
}

int cmd_verify_all(Run& run) {
  WalkSpec w = run.walk();
  ClaimParams p = claim_params(run);
  Json all = Json::array();
  bool pass = true;
  for (auto c : all_claims()) {
    std::cerr << "verifying " << claim_name(c) << "\n";
    auto rep = verify_claim(c, w, p);
    all.push_back(rep.to_json());
    print_report(rep);
    pass = pass && rep.pass;
  }
  run.write_json("verify_all.json", all);
  return pass ? kPass : kFail;
}

int cmd_mc(Run& run) {
  WalkSpec w = run.walk();
  SimConfig cfg;
  cfg.seed = run.opt.seed;
  cfg.paths = run.opt.paths;
  cfg.horizon = run.opt.n.value_or(64);
  cfg.workers = run.opt.workers;
  run.params["seed"] = cfg.seed;
  run.params["paths"] = cfg.paths;
  run.params["n"] = cfg.horizon;
  run.params["workers"] = cfg.workers;
  if (run.opt.reflected) {
    run.params["x0"] = run.opt.x0;
    auto law = mc_reflected(w, run.opt.x0, cfg);
    run.write("mc_reflected.csv", csv([&](std::ostream& os) { write_mc_law_csv(os, law); }));
    std::cout << "reflected law from x0=" << run.opt.x0 << " at n=" << cfg.horizon << " on [" << law.lo << ", "
              << law.hi() << "]\n";
  } else {
    auto kind = parse_kind(run.opt.kind, run.opt.r);
    run.params["kind"] = kind.name();
    auto curve = mc_survival_curve(w, kind, cfg);
    run.write("mc_survival.csv", csv([&](std::ostream& os) { write_mc_survival_csv(os, curve); }));
    std::cout << "P[" << kind.name() << " > " << cfg.horizon << "] ~ " << format_number(curve.back().p) << " +- "
              << format_number(curve.back().se) << "\n";
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluctuation theory of integer-lattice random walks: exact tables, limit constants, verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--walk", opt.walk, "walk JSON file");
  app.add_option("--mode", opt.mode, "arithmetic for tables: rational or float")
      ->check(CLI::IsMember({"rational", "float"}))
      ->capture_default_str();
  app.add_option("--out", opt.out, "output directory")->capture_default_str();
  app.add_option("--n-max", opt.n_max, "default horizon and largest DP time")->capture_default_str();
  app.add_option("--seed", opt.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--workers", opt.workers, "Monte Carlo worker threads")->capture_default_str();

  auto add_kind = [&](CLI::App* s) {
    s->add_option("--kind", opt.kind, "stopping time flavor: ge, gt, le, lt")->capture_default_str();
    s->add_option("--r", opt.r, "threshold r")->capture_default_str();
  };
  auto add_method = [&](CLI::App* s) {
    s->add_option("--method", opt.method, "ladder laws: factorized or dp")->capture_default_str();
  };
  auto add_phi = [&](CLI::App* s) {
    s->add_option("--phi", opt.phi_file, "test function JSON file");
    s->add_option("--at", opt.at, "use the indicator of this point as test function");
  };

  std::vector<std::pair<CLI::App*, int (*)(Run&)>> handlers;
  auto sub = [&](const char* name, const char* help, int (*f)(Run&)) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers.emplace_back(s, f);
    return s;
  };

  sub("validate", "check a walk file and print its moments", cmd_validate);
  auto table = sub("table", "constrained table P[tau > n, S_n = i], P[tau = n, S_n = i]", cmd_table);
  add_kind(table);
  table->add_option("--n", opt.n, "horizon (defaults to --n-max)");
  auto refl = sub("reflected", "law of the reflected walk", cmd_reflected);
  refl->add_option("--x0", opt.x0, "start point")->capture_default_str();
  refl->add_option("--n", opt.n, "horizon (defaults to --n-max)");
  auto lad = sub("ladder", "ladder height laws", cmd_ladder);
  lad->add_option("--which", opt.which, "mu*+, mu+, mu-, mu*- or all");
  lad->add_option("--n", opt.n, "DP horizon for --method dp");
  add_method(lad);
  auto pot = sub("potential", "renewal potentials of the ladder laws", cmd_potential);
  pot->add_option("--which", opt.which, "mu*+, mu+, mu-, mu*- or all");
  pot->add_option("--extent", opt.extent, "window size")->capture_default_str();
  add_method(pot);
  auto mea = sub("measures", "a- and b-measures", cmd_measures);
  mea->add_option("--which", opt.which, "a-, a*-, a+, a*+, b*+, b+, b*-, b-, b*+displayed or all");
  mea->add_option("--extent", opt.extent, "window size for a-measures")->capture_default_str();
  add_method(mea);
  auto con = sub("constants", "kappa and kappa~ by series and ladder routes", cmd_constants);
  con->add_option("--which", opt.which, "kappa, kappa_tilde or all");
  con->add_option("--terms", opt.terms, "series terms")->capture_default_str();
  add_method(con);
  auto wh = sub("wh-check", "exact Wiener-Hopf series identities", cmd_wh_check);
  wh->add_option("--identity", opt.identity, "survival, hit or both")->capture_default_str();
  wh->add_option("--order", opt.order, "series order")->capture_default_str();
  auto z = sub("z", "the constant Z(r, i)", cmd_z);
  z->add_option("--r", opt.r, "r >= 0")->capture_default_str();
  z->add_option("--i", opt.i, "i <= r (defaults to r)");
  z->add_option("--formulation", opt.formulation, "window, halfline or fullline")->capture_default_str();
  add_method(z);
  auto t16 = sub("t16", "harmonic-function constant for (r, i)", cmd_t16);
  t16->add_option("--r", opt.r, "r >= 0")->capture_default_str();
  t16->add_option("--i", opt.i, "i <= r (defaults to r)");
  add_method(t16);
  auto q1 = sub("q1", "Z(r, i) against the harmonic constant and a DP referee", cmd_q1);
  q1->add_option("--r-max", opt.r_max, "largest r")->capture_default_str();
  q1->add_option("--depth", opt.depth, "cells r - depth <= i <= r (defaults to r-max)");
  add_method(q1);
  sub("tilt", "Cramer tilt of a positive-drift walk", cmd_tilt);
  auto t13 = sub("t13", "reflected-walk limit constant", cmd_t13);
  add_phi(t13);
  t13->add_option("--grid", opt.grid, "extrapolation grid for the positive-drift case");
  auto ver = sub("verify", "verify one claim", cmd_verify);
  ver->add_option("--claim", opt.claim, "T1, P5, T6, T7, P9, T10, P11, T13, C14, T16");
  ver->add_option("--r", opt.claim_r, "threshold r (claim default otherwise)");
  ver->add_option("--i", opt.i, "point i for C14/T16");
  ver->add_option("--x", opt.x, "start point for T13");
  ver->add_option("--tol", opt.tol, "relative tolerance");
  ver->add_option("--grid", opt.grid, "extrapolation grid");
  add_phi(ver);
  auto all = sub("verify-all", "verify every registered claim", cmd_verify_all);
  all->add_option("--tol", opt.tol, "relative tolerance for every claim");
  all->add_option("--grid", opt.grid, "extrapolation grid");
  auto mc = sub("mc", "Monte Carlo survival curve or reflected law", cmd_mc);
  add_kind(mc);
  mc->add_flag("--reflected", opt.reflected, "simulate the reflected walk instead");
  mc->add_option("--x0", opt.x0, "start point of the reflected walk")->capture_default_str();
  mc->add_option("--paths", opt.paths, "number of paths")->capture_default_str();
  mc->add_option("--n", opt.n, "horizon (default 64)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  Run run;
  run.opt = opt;
  int (*handler)(Run&) = nullptr;
  for (const auto& [s, f] : handlers) {
    if (s->parsed()) {
      run.command = s->get_name();
      handler = f;
    }
  }
  run.params["walk"] = opt.walk;
  run.params["mode"] = opt.mode;
  run.params["n_max"] = opt.n_max;

  int code = kFail;
  std::string error;
  try {
    code = handler(run);
  } catch (const Error& e) {
    error = e.what();
    code = exit_code(e.code());
  } catch (const std::exception& e) {
    error = e.what();
    code = kFail;
  }
  if (!error.empty()) std::cerr << "error: " << error << "\n";
  run.manifest(error);
  return code;
}
