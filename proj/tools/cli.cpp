#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "mub/constellation.hpp"
#include "mub/gridsearch.hpp"
#include "mub/groebner.hpp"
#include "mub/json_io.hpp"
#include "mub/lasserre.hpp"
#include "mub/linalg.hpp"
#include "mub/sdp_io.hpp"
#include "mub/sdpsolve.hpp"
#include "mub/version.hpp"

namespace mub::cli {

using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string subcommand;
  // problem
  unsigned d = 0;
  std::string sizes;
  std::string spec;
  std::string problem;
  bool reduced = false;
  // output
  std::string format = "json";
  std::string output;
  // groebner
  std::string order = "grevlex";
  std::size_t max_pairs = 1'000'000;
  unsigned max_degree = 64;
  std::size_t max_memory_mb = 1024;
  std::string certificate;
  // grid
  unsigned resolution = 0;
  std::string per_var;
  std::uint64_t budget = 100'000'000;
  std::size_t witnesses = 10;
  unsigned threads = 0;
  // sdp
  std::string r_range;
  std::size_t objective = 0;
  double threshold = 1e-6;
  double tol = 1e-8;
  int max_iter = 200;
  std::string instance;
  // check-mu
  std::string matrices;
  bool with_identity = false;
  double mu_tol = 1e-8;

  json to_json() const {
    json j = {{"subcommand", subcommand}, {"format", format}};
    if (!output.empty()) j["output"] = output;
    auto problem_json = [&]() {
      if (!problem.empty()) j["problem"] = {{"name", problem}, {"reduced", reduced}};
      if (!spec.empty()) j["spec"] = spec;
      if (d != 0) j["d"] = d;
      if (!sizes.empty()) j["sizes"] = sizes;
    };
    if (subcommand == "describe" || subcommand == "polysys") {
      problem_json();
    } else if (subcommand == "groebner") {
      problem_json();
      j["order"] = order;
      j["limits"] = {{"max_pairs", max_pairs}, {"max_degree", max_degree}, {"max_memory_mb", max_memory_mb}};
      if (!certificate.empty()) j["certificate"] = certificate;
    } else if (subcommand == "grid") {
      problem_json();
      j["resolution"] = resolution;
      if (!per_var.empty()) j["per_var"] = per_var;
      j["budget"] = budget;
      j["witnesses"] = witnesses;
      j["threads"] = threads;
    } else if (subcommand == "sdp-build") {
      problem_json();
      j["r"] = r_range;
      j["objective"] = objective;
    } else if (subcommand == "sdp-run") {
      if (!instance.empty()) {
        j["instance"] = instance;
      } else {
        problem_json();
        j["r"] = r_range;
        j["objective"] = objective;
        j["threshold"] = threshold;
      }
      j["tol"] = tol;
      j["max_iter"] = max_iter;
    } else if (subcommand == "verify-cert") {
      j["certificate"] = certificate;
    } else if (subcommand == "check-mu") {
      j["matrices"] = matrices;
      j["with_identity"] = with_identity;
      j["tol"] = mu_tol;
    }
    return j;
  }
};

// "{1,1,1,1}_2" or "2:1,1,1,1".
constellation::ConstellationSpec parse_spec_text(const std::string& text) {
  const auto underscore = text.rfind('_');
  if (underscore != std::string::npos && !text.empty() && text.front() == '{') {
    const auto close = text.find('}');
    if (close == std::string::npos || close > underscore) throw UsageError("malformed spec \"" + text + "\"");
    const auto d = std::stoul(text.substr(underscore + 1));
    return constellation::ConstellationSpec::parse(static_cast<unsigned>(d), text.substr(1, close - 1));
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("malformed spec \"" + text + "\"");
  const auto d = std::stoul(text.substr(0, colon));
  return constellation::ConstellationSpec::parse(static_cast<unsigned>(d), text.substr(colon + 1));
}

std::optional<constellation::ConstellationSpec> spec_of(const RunConfig& cfg) {
  if (!cfg.problem.empty()) return std::nullopt;
  constellation::ConstellationSpec spec;
  try {
    if (!cfg.spec.empty()) {
      if (cfg.d != 0 || !cfg.sizes.empty()) throw UsageError("give either --spec or --d/--sizes");
      spec = parse_spec_text(cfg.spec);
    } else {
      if (cfg.d == 0 || cfg.sizes.empty()) {
        throw UsageError("a problem is required: --d and --sizes, --spec or --problem");
      }
      spec = constellation::ConstellationSpec::parse(cfg.d, cfg.sizes);
    }
    spec.validate();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return spec;
}

constellation::PolynomialSystem system_of(const RunConfig& cfg, poly::MonomialOrder order) {
  if (!cfg.problem.empty()) {
    if (cfg.problem != "spectral-pair") throw UsageError("unknown problem \"" + cfg.problem + "\"");
    if (cfg.d != 0 || !cfg.sizes.empty() || !cfg.spec.empty()) {
      throw UsageError("--problem cannot be combined with --d, --sizes or --spec");
    }
    return constellation::build_spectral_pair_system(cfg.reduced, order);
  }
  if (cfg.reduced) throw UsageError("--reduced applies to --problem spectral-pair only");
  return constellation::build_system(*spec_of(cfg), order);
}

poly::MonomialOrder order_of(const std::string& name) {
  try {
    return poly::parse_order(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(e.what()) + " (grevlex, grlex or lex)");
  }
}

std::pair<unsigned, unsigned> parse_range(const std::string& text, unsigned fallback) {
  if (text.empty()) return {fallback, fallback};
  try {
    const auto colon = text.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const auto r = std::stoul(text, &used);
      if (used != text.size()) throw UsageError("");
      return {static_cast<unsigned>(r), static_cast<unsigned>(r)};
    }
    const auto lo = std::stoul(text.substr(0, colon), &used);
    if (used != colon) throw UsageError("");
    const auto rest = text.substr(colon + 1);
    const auto hi = std::stoul(rest, &used);
    if (used != rest.size() || hi < lo) throw UsageError("");
    return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
  } catch (const std::exception&) {
    throw UsageError("malformed order range \"" + text + "\" (expected r or lo:hi)");
  }
}

std::vector<unsigned> parse_csv(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument("");
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw UsageError("malformed list \"" + text + "\"");
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json envelope(const RunConfig& cfg) { return {{"version", kVersion}, {"config", cfg.to_json()}}; }

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

struct Result {
  json report;
  std::string text;  // human-readable summary
  int code = kRan;
};

Result do_describe(const RunConfig& cfg) {
  Result res;
  res.report = envelope(cfg);
  std::ostringstream t;
  if (const auto spec = spec_of(cfg)) {
    const auto counts = constellation::describe(*spec);
    res.report["spec"] = io::to_json(*spec);
    res.report["counts"] = io::to_json(counts);
    res.report["s"] = counts.s;
    res.report["phases"] = counts.num_phases;
    t << spec->label() << "\n"
      << "  free vectors      " << counts.s << "\n"
      << "  phases            " << counts.num_phases << "\n"
      << "  real variables    " << counts.num_real_vars << "\n"
      << "  equations         " << counts.n_eq << " (" << counts.n_quartic << " quartic, "
      << counts.n_modulus << " modulus)\n";
  } else {
    const auto sys = system_of(cfg, poly::MonomialOrder::GradedRevLex);
    const auto js = io::to_json(sys);
    res.report["problem"] = sys.name;
    res.report["counts"] = js["counts"];
    t << sys.name << "\n"
      << "  real variables    " << sys.num_vars() << "\n"
      << "  equations         " << sys.polys.size() << "\n";
  }
  res.text = t.str();
  return res;
}

Result do_polysys(const RunConfig& cfg) {
  Result res;
  const auto sys = system_of(cfg, poly::MonomialOrder::GradedRevLex);
  res.report = envelope(cfg);
  res.report.update(io::to_json(sys));
  std::ostringstream t;
  t << sys.name << ": " << sys.num_vars() << " variables, " << sys.polys.size() << " polynomials\n";
  const auto names = sys.variable_names();
  for (std::size_t j = 0; j < sys.polys.size(); ++j) {
    t << "  p" << j + 1 << " = " << sys.polys[j].poly.to_string(names) << "\n";
  }
  res.text = t.str();
  return res;
}

Result do_groebner(const RunConfig& cfg) {
  Result res;
  const auto order = order_of(cfg.order);
  const auto sys = system_of(cfg, order);
  const auto polys = sys.polynomials();
  groebner::Options opt;
  opt.limits.max_pairs = cfg.max_pairs;
  opt.limits.max_degree = cfg.max_degree;
  opt.limits.max_memory_bytes = cfg.max_memory_mb << 20;
  opt.track_cofactors = true;
  const auto start = std::chrono::steady_clock::now();
  const auto out = groebner::buchberger(polys, order, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.report = envelope(cfg);
  res.report["system"] = sys.name;
  res.report["wall_seconds"] = secs;
  std::ostringstream t;
  if (!out.done()) {
    res.report["completed"] = false;
    res.report["limit"] = out.exceeded().limit;
    res.report["stats"] = io::to_json(out.exceeded().stats);
    res.report["trivial"] = nullptr;
    res.report["verdict"] = "inconclusive";
    t << sys.name << ": resource limit " << out.exceeded().limit << " reached, inconclusive\n";
    res.code = kInconclusive;
  } else {
    const auto& basis = out.basis();
    res.report["completed"] = true;
    res.report.update(io::to_json(basis));
    const bool trivial = groebner::is_trivial(basis);
    t << sys.name << ": reduced basis has " << basis.generators.size() << " generator(s), "
      << (trivial ? "ideal is trivial" : "ideal is not trivial") << " ("
      << basis.stats.spairs_reduced << " S-pairs, " << fmt(secs, 3) << " s)\n";
    if (trivial && out.trace) {
      const auto cert = groebner::extract_certificate(*out.trace);
      const bool ok = groebner::verify_certificate(polys, cert);
      res.report["certificate_verified"] = ok;
      t << "  certificate " << (ok ? "verified" : "FAILED verification") << "\n";
      if (!cfg.certificate.empty()) {
        std::ofstream f(cfg.certificate);
        if (!f) throw UsageError("cannot write " + cfg.certificate);
        json cj = io::certificate_to_json(polys, cert);
        cj["version"] = kVersion;
        cj["system"] = sys.name;
        f << cj.dump(1) << "\n";
        res.report["certificate_file"] = cfg.certificate;
        t << "  written to " << cfg.certificate << "\n";
      }
    }
    res.report["verdict"] = trivial ? "nonexistent" : "inconclusive";
    res.code = trivial ? kNonexistent : kInconclusive;
  }
  res.text = t.str();
  return res;
}

Result do_grid(const RunConfig& cfg) {
  Result res;
  const auto spec = spec_of(cfg);
  if (!spec) throw UsageError("grid search needs a constellation spec");
  const auto layout = gridsearch::PhaseLayout::from_spec(*spec);
  gridsearch::GridSpec grid;
  if (!cfg.per_var.empty()) {
    grid.resolutions = parse_csv(cfg.per_var);
  } else {
    if (cfg.resolution == 0) throw UsageError("--resolution or --per-var is required");
    grid = gridsearch::GridSpec::uniform(layout.num_phases, cfg.resolution);
  }
  try {
    grid.validate(layout.num_phases);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  gridsearch::SearchOptions opt;
  opt.budget = cfg.budget;
  opt.max_witnesses = cfg.witnesses;
  opt.threads = cfg.threads;
  gridsearch::ExclusionReport rep;
  try {
    rep = gridsearch::exclusion_search(*spec, grid, opt);
  } catch (const gridsearch::BudgetExceeded& e) {
    throw UsageError(std::string("refused: ") + e.what());
  }
  res.report = envelope(cfg);
  res.report.update(io::to_json(rep));
  std::ostringstream t;
  t << rep.constellation << ": " << rep.total_cells << " cells, " << rep.surviving << " surviving, "
    << gridsearch::to_string(rep.verdict) << "\n";
  for (const auto& w : rep.witnesses) {
    t << "  survivor j =";
    for (auto j : w.indices) t << " " << j;
    t << "\n";
  }
  res.text = t.str();
  res.code = rep.verdict == gridsearch::Verdict::ExcludedEverywhere ? kNonexistent : kInconclusive;
  return res;
}

void write_output(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
  if (cfg.output.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw UsageError("cannot write " + cfg.output);
  f << payload;
}

// sdp-build writes the instance itself rather than a report.
int do_sdp_build(const RunConfig& cfg, std::ostream& out) {
  const auto sys = system_of(cfg, poly::MonomialOrder::GradedRevLex);
  if (cfg.objective >= sys.polys.size()) throw UsageError("--objective out of range");
  const auto [r, r_hi] = parse_range(cfg.r_range, lasserre::minimal_order(sys, cfg.objective));
  if (r != r_hi) throw UsageError("sdp-build takes a single order");
  lasserre::MomentRelaxation rel;
  try {
    rel = lasserre::build_relaxation(sys, cfg.objective, r);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto inst = lasserre::to_sdp(rel);
  std::ostringstream payload;
  if (cfg.format == "sdpa") {
    payload << "* version " << kVersion << "\n";
    payload << "* config " << cfg.to_json().dump() << "\n";
    payload << "* relaxation " << sys.name << " r=" << r << " decisions=" << rel.num_decisions()
            << " matrix=" << rel.matrix_size() << " equalities=" << rel.equalities.size() << "\n";
    sdpsolve::write_sdpa(payload, inst);
  } else if (cfg.format == "json") {
    json j = envelope(cfg);
    j["relaxation"] = {{"system", sys.name},
                       {"r", r},
                       {"decision_variables", rel.num_decisions()},
                       {"matrix_size", rel.matrix_size()},
                       {"equalities", rel.equalities.size()}};
    j["instance"] = sdpsolve::to_json(inst);
    payload << j.dump(1) << "\n";
  } else {
    throw UsageError("sdp-build formats are sdpa and json");
  }
  write_output(cfg, payload.str(), out);
  return kRan;
}

Result do_sdp_run(const RunConfig& cfg) {
  Result res;
  sdpsolve::Options sopt;
  sopt.tol = cfg.tol;
  sopt.max_iter = cfg.max_iter;
  sopt.keep_log = false;
  std::ostringstream t;
  if (!cfg.instance.empty()) {
    if (!cfg.problem.empty() || !cfg.spec.empty() || cfg.d != 0) {
      throw UsageError("--instance cannot be combined with a problem");
    }
    sdpsolve::SDPInstance inst;
    std::ifstream in(cfg.instance);
    if (!in) throw UsageError("cannot open " + cfg.instance);
    try {
      const bool is_json = cfg.instance.size() >= 5 && cfg.instance.ends_with(".json");
      if (is_json) {
        const auto j = json::parse(in);
        inst = sdpsolve::instance_from_json(j.contains("instance") ? j.at("instance") : j);
      } else {
        inst = sdpsolve::read_sdpa(in);
      }
    } catch (const std::exception& e) {
      throw UsageError(cfg.instance + ": " + e.what());
    }
    const auto sol = sdpsolve::solve(inst, sopt);
    const auto check = sdpsolve::check_solution(inst, sol, std::max(cfg.tol, 1e-8) * 10);
    res.report = envelope(cfg);
    res.report["solution"] = sdpsolve::to_json(sol);
    res.report["verification"] = {{"clean", check.clean()},
                                  {"violations", check.violations},
                                  {"equality_residual", check.equality_residual},
                                  {"dual_residual", check.dual_residual},
                                  {"gap", check.gap}};
    t << "status " << sdpsolve::to_string(sol.status) << ", primal " << fmt(sol.primal_objective, 10)
      << ", dual " << fmt(sol.dual_objective, 10) << ", " << sol.iterations << " iterations\n"
      << "verification " << (check.clean() ? "clean" : "with violations") << "\n";
    res.text = t.str();
    return res;
  }
  const auto sys = system_of(cfg, poly::MonomialOrder::GradedRevLex);
  if (cfg.objective >= sys.polys.size()) throw UsageError("--objective out of range");
  const unsigned r_min_default = lasserre::minimal_order(sys, cfg.objective);
  const auto [lo, hi] = parse_range(cfg.r_range, r_min_default);
  if (lo < r_min_default) {
    throw UsageError("relaxation order " + std::to_string(lo) +
                     " is too small; minimal admissible order is " + std::to_string(r_min_default));
  }
  lasserre::HierarchyOptions hopt;
  hopt.objective_index = cfg.objective;
  hopt.r_min = lo;
  hopt.r_max = hi;
  hopt.threshold = cfg.threshold;
  hopt.solver = sopt;
  const auto result = lasserre::run_hierarchy(sys, hopt);
  res.report = envelope(cfg);
  res.report["system"] = sys.name;
  res.report.update(io::to_json(result));
  t << sys.name << "\n";
  t << "   r        N_d      F     rows   B_L(r)           status              time\n";
  for (const auto& lv : result.levels) {
    t << std::setw(4) << lv.r << std::setw(11) << lv.num_decisions << std::setw(7) << lv.matrix_size
      << std::setw(9) << lv.num_equalities << "   " << std::left << std::setw(17)
      << fmt(lv.bound, 10) << std::setw(20) << sdpsolve::to_string(lv.status) << std::right
      << std::fixed << std::setprecision(2) << lv.wall_seconds << " s" << std::defaultfloat << (lv.certifies ? "  *" : "") << "\n";
  }
  t << "verdict " << lasserre::to_string(result.verdict);
  if (result.decisive_order) t << " at r=" << *result.decisive_order;
  t << "\n";
  if (result.verdict == lasserre::Verdict::Found) {
    t << "point";
    for (double x : result.point) t << " " << fmt(x, 10);
    t << "\n";
  }
  res.text = t.str();
  switch (result.verdict) {
    case lasserre::Verdict::Nonexistent: res.code = kNonexistent; break;
    case lasserre::Verdict::Found: res.code = kFound; break;
    case lasserre::Verdict::Inconclusive: res.code = kInconclusive; break;
  }
  return res;
}

Result do_verify_cert(const RunConfig& cfg) {
  Result res;
  io::CertificateFile file;
  try {
    file = io::certificate_from_json(read_json_file(cfg.certificate));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(cfg.certificate + ": " + e.what());
  }
  bool valid = false;
  std::string problem;
  try {
    valid = groebner::verify_certificate(file.polys, file.cert);
  } catch (const std::exception& e) {
    problem = e.what();
  }
  res.report = envelope(cfg);
  res.report["valid"] = valid;
  res.report["polynomials"] = file.polys.size();
  if (!problem.empty()) res.report["error"] = problem;
  res.text = std::string("certificate ") + (valid ? "valid: sum r_j p_j = 1" : "NOT valid") +
             (problem.empty() ? "" : " (" + problem + ")") + "\n";
  res.code = valid ? kNonexistent : kInconclusive;
  return res;
}

Result do_check_mu(const RunConfig& cfg) {
  Result res;
  const auto j = read_json_file(cfg.matrices);
  std::vector<linalg::ComplexMatrix> mats;
  try {
    const auto& arr = j.is_array() ? j : j.at("matrices");
    for (const auto& m : arr) mats.push_back(io::matrix_from_json(m));
  } catch (const std::exception& e) {
    throw UsageError(cfg.matrices + ": " + e.what());
  }
  if (mats.empty()) throw UsageError("no matrices given");
  const std::size_t d = mats.front().rows();
  for (const auto& m : mats) {
    if (m.rows() != d || m.cols() != d) throw UsageError("matrices must all be square of the same size");
  }
  if (cfg.with_identity) mats.insert(mats.begin(), linalg::identity_matrix(d));
  json unitarity = json::array();
  double worst = 0.0;
  for (const auto& m : mats) {
    const double u = linalg::unitarity_defect(m);
    unitarity.push_back(u);
    worst = std::max(worst, u);
  }
  json pairs = json::array();
  for (std::size_t a = 0; a < mats.size(); ++a) {
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      const double r = linalg::mu_residual(linalg::columns(mats[a]), linalg::columns(mats[b]), d);
      pairs.push_back({{"a", a}, {"b", b}, {"residual", r}});
      worst = std::max(worst, r);
    }
  }
  res.report = envelope(cfg);
  res.report["dimension"] = d;
  res.report["unitarity_defects"] = unitarity;
  res.report["pair_residuals"] = pairs;
  res.report["max_residual"] = worst;
  res.report["mutually_unbiased"] = worst <= cfg.mu_tol;
  std::ostringstream t;
  t << mats.size() << " bases in dimension " << d << ", max residual " << fmt(worst, 3) << ": "
    << (worst <= cfg.mu_tol ? "mutually unbiased" : "not mutually unbiased") << "\n";
  res.text = t.str();
  return res;
}

void add_problem_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--d", cfg.d, "dimension");
  sub->add_option("--sizes", cfg.sizes, "set sizes, comma separated (first is d-1)");
  sub->add_option("--spec", cfg.spec, "constellation as {a,b,...}_d or d:a,b,...");
  sub->add_option("--problem", cfg.problem, "named built-in problem")->check(CLI::IsMember({"spectral-pair"}));
  sub->add_flag("--reduced", cfg.reduced, "spectral pair with the redundant conditions dropped");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--output,-o", cfg.output, "write the report to a file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Certificates for the (non-)existence of MU constellations", "mubcert"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* describe = app.add_subcommand("describe", "parameter and equation counts");
  add_problem_options(describe, cfg);
  add_output_options(describe, cfg);

  auto* polysys = app.add_subcommand("polysys", "emit the polynomial system");
  add_problem_options(polysys, cfg);
  add_output_options(polysys, cfg);

  auto* gb = app.add_subcommand("groebner", "Groebner basis, triviality and certificate");
  add_problem_options(gb, cfg);
  add_output_options(gb, cfg);
  gb->add_option("--order", cfg.order, "grevlex, grlex or lex");
  gb->add_option("--max-pairs", cfg.max_pairs, "S-pair limit");
  gb->add_option("--max-degree", cfg.max_degree, "degree limit");
  gb->add_option("--max-memory", cfg.max_memory_mb, "memory limit in MB");
  gb->add_option("--certificate", cfg.certificate, "write the cofactor certificate here");

  auto* grid = app.add_subcommand("grid", "exhaustive grid exclusion");
  add_problem_options(grid, cfg);
  add_output_options(grid, cfg);
  grid->add_option("--resolution,-R", cfg.resolution, "grid points per phase");
  grid->add_option("--per-var", cfg.per_var, "per-phase resolutions, comma separated");
  grid->add_option("--budget", cfg.budget, "maximum number of cells");
  grid->add_option("--witnesses", cfg.witnesses, "surviving cells to report");
  grid->add_option("--threads", cfg.threads, "worker threads (0: all cores)");

  auto* build = app.add_subcommand("sdp-build", "emit a moment relaxation");
  add_problem_options(build, cfg);
  build->add_option("--r", cfg.r_range, "relaxation order");
  build->add_option("--objective", cfg.objective, "index of the squared polynomial");
  build->add_option("--format", cfg.format, "sdpa or json")->check(CLI::IsMember({"sdpa", "json"}));
  build->add_option("--output,-o", cfg.output, "write the instance to a file");

  auto* sdprun = app.add_subcommand("sdp-run", "solve the moment hierarchy or a stored instance");
  add_problem_options(sdprun, cfg);
  add_output_options(sdprun, cfg);
  sdprun->add_option("--r", cfg.r_range, "order or range lo:hi");
  sdprun->add_option("--objective", cfg.objective, "index of the squared polynomial");
  sdprun->add_option("--threshold", cfg.threshold, "positivity threshold");
  sdprun->add_option("--tol", cfg.tol, "solver tolerance");
  sdprun->add_option("--max-iter", cfg.max_iter, "solver iteration limit");
  sdprun->add_option("--instance", cfg.instance, "SDPA or JSON instance file to solve");

  auto* verify = app.add_subcommand("verify-cert", "check a cofactor certificate exactly");
  add_output_options(verify, cfg);
  verify->add_option("--certificate,certificate", cfg.certificate, "certificate file")->required();

  auto* checkmu = app.add_subcommand("check-mu", "floating-point MU residuals of matrices");
  add_output_options(checkmu, cfg);
  checkmu->add_option("--matrices,matrices", cfg.matrices, "JSON file with a list of matrices")->required();
  checkmu->add_flag("--with-identity", cfg.with_identity, "include the standard basis");
  checkmu->add_option("--tol", cfg.mu_tol, "tolerance for the verdict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (cfg.subcommand == "sdp-build") {
      if (build->count("--format") == 0) cfg.format = "sdpa";
      return do_sdp_build(cfg, out);
    }
    Result res;
    if (cfg.subcommand == "describe") res = do_describe(cfg);
    else if (cfg.subcommand == "polysys") res = do_polysys(cfg);
    else if (cfg.subcommand == "groebner") res = do_groebner(cfg);
    else if (cfg.subcommand == "grid") res = do_grid(cfg);
    else if (cfg.subcommand == "sdp-run") res = do_sdp_run(cfg);
    else if (cfg.subcommand == "verify-cert") res = do_verify_cert(cfg);
    else res = do_check_mu(cfg);
    res.report["exit_code"] = res.code;
    write_output(cfg, cfg.format == "text" ? res.text : res.report.dump(1) + "\n", out);
    return res.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mub::cli
