#include "sgp_cli/app.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>

#include "sgp/analysis.hpp"
#include "sgp/errors.hpp"
#include "sgp/solver.hpp"
#include "sgp/yy.hpp"
#include "sgp_cli/serialize.hpp"
#include "sgp_cli/spec_parser.hpp"

namespace sgp::cli {

namespace {

struct Options {
  std::string function;
  std::string point;
  std::string x0;
  std::string property;
  long long samples = 1000;
  std::string box;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int max_iter = 100000;
  std::optional<double> lipschitz;
  std::optional<double> rho;
  std::string grid;
  std::string out;
  std::string c_monitor;
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  const char* env = std::getenv("SGP_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || errno == ERANGE || env[0] == '-') usage(std::string("SGP_SEED is not an unsigned integer: ") + env);
  return v;
}

analysis::SampleSpec sample_spec(const Options& o, const catalog::CatalogEntry& e, std::uint64_t seed) {
  if (o.samples < 1) usage("--samples must be at least 1");
  analysis::SampleSpec s;
  if (o.box.empty()) {
    s.lo = e.default_box.lo;
    s.hi = e.default_box.hi;
  } else {
    const Vector b = parse_vector(o.box);
    if (b.size() != 2 || !(b[0] <= b[1])) usage("--box expects lo,hi with lo <= hi");
    s.lo = Vector::Constant(e.dim(), b[0]);
    s.hi = Vector::Constant(e.dim(), b[1]);
  }
  s.count = static_cast<std::size_t>(o.samples);
  s.seed = seed;
  s.validate(e.dim());
  return s;
}

std::vector<double> grid_1d(const Options& o, const analysis::SampleSpec& s) {
  double a = s.lo[0], b = s.hi[0], step = 1e-2;
  if (!o.grid.empty()) {
    const Vector g = parse_vector(o.grid);
    if (g.size() != 3 || !(g[0] <= g[1]) || !(g[2] > 0.0)) usage("--grid expects start,end,step");
    a = g[0];
    b = g[1];
    step = g[2];
  }
  const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  if (n > 10'000'000) usage("--grid is too fine");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + static_cast<double>(i) * step;
  return out;
}

Vector point_for(const std::string& text, const catalog::CatalogEntry& e, const char* flag) {
  if (text.empty()) usage(std::string(flag) + " is required");
  Vector x = parse_vector(text);
  if (x.size() != e.dim()) usage(std::string(flag) + " has dimension " + std::to_string(x.size()) + ", expected " + std::to_string(e.dim()));
  return x;
}

void emit(const json& doc, const Options& o, std::ostream& out, bool to_file) {
  out << doc.dump(2) << '\n';
  if (to_file && !o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) usage("cannot write " + o.out);
    f << doc.dump(2) << '\n';
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) usage("cannot write " + path);
  return f;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  for (const auto& e : catalog::default_catalog()) {
    if (!o.function.empty() && e.name().rfind(o.function, 0) != 0) continue;
    out << e.name() << "  dim=" << e.dim();
    if (!e.parameters.empty()) out << "  " << e.parameters;
    out << '\n';
    for (const auto& k : e.known_properties) {
      out << "    " << (k.holds ? "" : "not ") << catalog::to_string(k.flag) << "  (" << k.note << ")\n";
    }
  }
  return kExitOk;
}

int cmd_project(const Options& o, std::ostream& out) {
  const auto e = parse_function_spec(o.function);
  const Vector x = point_for(o.point, e, "--point");
  json doc = to_json(evaluate_projector(e.handle, x));
  doc["config"] = {{"command", "project"}, {"function", o.function}};
  emit(doc, o, out, true);
  return kExitOk;
}

int cmd_iterate(const Options& o, std::ostream& out) {
  const auto e = parse_function_spec(o.function);
  const Vector x0 = point_for(o.x0, e, "--x0");
  solver::IterateOptions opts;
  opts.max_iter = o.max_iter;
  opts.tol_f = o.tol.value_or(opts.tol_f);
  if (!o.c_monitor.empty()) opts.c_monitor = point_for(o.c_monitor, e, "--c-monitor");
  solver::OperatorChoice op;
  if (o.lipschitz || o.rho) op = solver::OperatorChoice::smoothed({o.lipschitz.value_or(1.0), o.rho.value_or(0.0)});
  const auto trace = solver::iterate(e.handle, x0, op, opts);
  if (!o.out.empty()) {
    auto f = open_out(o.out);
    write_trace_csv(trace, f);
  }
  json doc;
  doc["config"] = {{"command", "iterate"}, {"function", o.function},   {"x0", to_json(x0)},
                   {"operator", trace.op}, {"max_iter", opts.max_iter}, {"tol_f", opts.tol_f}};
  doc["status"] = solver::to_string(trace.status);
  doc["steps"] = trace.steps();
  doc["final_x"] = to_json(trace.last().x);
  doc["final_f"] = trace.last().fx;
  if (opts.c_monitor) doc["fejer"] = to_json(solver::check_fejer(trace));
  out << doc.dump(2) << '\n';
  return kExitOk;
}

analysis::PropertyReport analytic_agreement(const catalog::CatalogEntry& e, const analysis::SampleSpec& s,
                                            double tol) {
  if (!e.handle.has_analytic_G()) throw Error(ErrorCode::MissingOracle, e.name() + " has no closed-form G");
  analysis::ReportBuilder rb("analytic_G", s.seed, tol);
  const auto xs = analysis::draw_points(s);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rb.count_sample();
    const Vector g = apply_projector(e.handle, xs[i]);
    const Vector a = e.handle.analytic_G(xs[i]);
    rb.record(i, "analytic_G", (g - a).cwiseAbs().maxCoeff(), 0.0, {xs[i], g, a}, {});
  }
  return std::move(rb).finish();
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto e = parse_function_spec(o.function);
  const std::uint64_t seed = resolve_seed(o);
  const auto s = sample_spec(o, e, seed);
  const auto& f = e.handle;
  const double tol = o.tol.value_or(analysis::kDefaultTolerance);
  const std::string& p = o.property;

  json extra = json::object();
  analysis::PropertyReport report;
  using analysis::PairwiseMode;
  auto pairwise = [&](PairwiseMode m) { return analysis::check_pairwise(f, s, m, e.witness_pairs, tol); };
  if (p == "fact") {
    report = analysis::check_fact_identities(f, s, analysis::feasible_samples(f, s, e.feasible_points, 16), tol);
  } else if (p == "firm") {
    report = pairwise(PairwiseMode::FirmlyNonexpansive);
  } else if (p == "nonexpansive") {
    report = pairwise(PairwiseMode::Nonexpansive);
  } else if (p == "monotone") {
    report = pairwise(PairwiseMode::Monotone);
  } else if (p == "id_minus_G") {
    report = pairwise(PairwiseMode::IdMinusGNonexpansive);
  } else if (p == "decreasing") {
    report = analysis::check_decreasing(f, s, e.witness_points, tol);
  } else if (p == "strict_persistence") {
    report = analysis::check_strict_persistence(f, s, tol);
  } else if (p == "range_cone") {
    if (!e.recession_polar) throw Error(ErrorCode::UnsupportedSet, e.name() + ": (rec C) polar is not representable");
    report = analysis::check_range_cone(f, s, *e.recession_polar, tol);
  } else if (p == "jacobian_firm" || p == "jacobian_id_minus_G") {
    report = analysis::search_jacobian_violation(
        f, s, p == "jacobian_firm" ? analysis::JacobianMode::Firm : analysis::JacobianMode::IdMinusG, o.tol.value_or(1e-6));
  } else if (p == "nonexpansive_1d") {
    report = analysis::check_1d_nonexpansive_criterion(f, grid_1d(o, s), tol);
  } else if (p == "moreau_1d") {
    auto r = analysis::check_moreau_1d_criterion(f, grid_1d(o, s), s, tol);
    report = std::move(r.criterion);
    extra["corroboration"] = r.corroboration ? to_json(*r.corroboration) : json(nullptr);
  } else if (p == "newton") {
    report = solver::newton_equivalence_check(f, grid_1d(o, s), o.tol.value_or(1e-12));
  } else if (p == "analytic_G") {
    report = analytic_agreement(e, s, o.tol.value_or(1e-10));
  } else {
    usage("unknown --property '" + p + "'");
  }

  json doc;
  doc["config"] = {{"command", "check"}, {"function", o.function}, {"property", p},    {"samples", o.samples},
                   {"seed", seed},       {"tol", report.tolerance}, {"box_lo", to_json(s.lo)}, {"box_hi", to_json(s.hi)}};
  doc["report"] = to_json(report);
  for (auto& [k, v] : extra.items()) doc[k] = v;
  emit(doc, o, out, true);
  bool ok = report.passed();
  if (extra.contains("corroboration") && !extra["corroboration"].is_null()) ok = ok && extra["corroboration"]["passed"].get<bool>();
  return ok ? kExitOk : kExitViolation;
}

int cmd_yy(const Options& o, std::ostream& out) {
  const auto e = parse_function_spec(o.function);
  if (!o.lipschitz) usage("yy needs --L");
  const yy::YYParams params{*o.lipschitz, o.rho.value_or(0.0)};
  yy::GridSpec grid;
  if (!o.grid.empty()) {
    const Vector g = parse_vector(o.grid);
    if (g.size() != 2 || !(g[0] >= 0.0) || !(g[1] > 0.0)) usage("--grid expects extent,step for yy");
    grid.extent = g[0];
    grid.step = g[1];
  }
  const auto recon = yy::reconstruct_y(e.handle, params, grid);
  std::vector<double> xs;
  for (const auto& r : recon.rows()) xs.push_back(r.x);
  const auto z_report = yy::verify_Z_is_Gy(recon, e.handle, xs, o.tol.value_or(1e-8));
  const auto convex = yy::check_y_convexity(recon);
  if (!o.out.empty()) {
    auto f = open_out(o.out);
    write_reconstruction_csv(recon, f);
  }
  json pieces = json::array();
  for (const auto& p : recon.pieces()) {
    pieces.push_back({{"region", yy::to_string(p.region)}, {"anchor", p.anchor}, {"f_anchor", p.f_anchor}});
  }
  const auto& d = recon.D();
  json doc;
  doc["config"] = {{"command", "yy"}, {"function", o.function}, {"L", params.lipschitz}, {"rho", params.rho},
                   {"extent", grid.extent}, {"step", grid.step}};
  doc["D"] = {{"lo", d.lo}, {"hi", d.hi}, {"lo_finite", d.lo_finite}, {"hi_finite", d.hi_finite}};
  doc["pieces"] = pieces;
  doc["rows"] = recon.rows().size();
  doc["Z_equals_Gy"] = to_json(z_report);
  doc["y_convexity"] = to_json(convex);
  out << doc.dump(2) << '\n';
  return z_report.passed() && convex.passed() ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subgradient projectors: evaluate, iterate, check properties, reconstruct y.", "sgp"};
  app.require_subcommand(1);
  app.footer(function_spec_help());
  Options o;

  auto add_function = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--function", o.function, "function spec, see below");
    if (required) opt->required();
  };
  auto add_seed_tol = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "RNG seed (default: $SGP_SEED or 0)");
    c->add_option("--tol", o.tol, "tolerance override");
  };

  auto* cat = app.add_subcommand("catalog", "list catalog entries and their known properties");
  add_function(cat, false);

  auto* proj = app.add_subcommand("project", "evaluate G at a point (JSON)");
  add_function(proj, true);
  proj->add_option("--point", o.point, "x, comma separated")->required();
  proj->add_option("--out", o.out, "also write the JSON here");

  auto* it = app.add_subcommand("iterate", "iterate G (or Z with --L/--rho) and write the trace CSV");
  add_function(it, true);
  it->add_option("--x0", o.x0, "starting point")->required();
  it->add_option("--max-iter", o.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  it->add_option("--tol", o.tol, "stop once f(x_k) <= tol (default 1e-10)");
  it->add_option("--L", o.lipschitz, "use Z with this Lipschitz constant of grad f");
  it->add_option("--rho", o.rho, "use Z with inf f >= -rho");
  it->add_option("--c-monitor", o.c_monitor, "a point of C; records |x_k - c|");
  it->add_option("--out", o.out, "trace CSV path");

  auto* chk = app.add_subcommand("check", "sampled property check (JSON report; exit 1 on violation)");
  add_function(chk, true);
  chk->add_option("--property", o.property,
                  "fact, firm, nonexpansive, monotone, id_minus_G, decreasing, strict_persistence, range_cone, "
                  "jacobian_firm, jacobian_id_minus_G, nonexpansive_1d, moreau_1d, newton, analytic_G")
      ->required();
  chk->add_option("--samples", o.samples, "number of samples or pairs");
  chk->add_option("--box", o.box, "sampling cube lo,hi (default: the entry's box)");
  chk->add_option("--grid", o.grid, "1-D grid start,end,step");
  add_seed_tol(chk);
  chk->add_option("--out", o.out, "also write the JSON here");

  auto* y = app.add_subcommand("yy", "reconstruct y with G_y = Z on the real line");
  add_function(y, true);
  y->add_option("--L", o.lipschitz, "Lipschitz constant of f'")->required();
  y->add_option("--rho", o.rho, "inf f >= -rho");
  y->add_option("--grid", o.grid, "extent,step (default 10,0.01)");
  y->add_option("--tol", o.tol, "tolerance for |G_y - Z| (default 1e-8)");
  y->add_option("--out", o.out, "reconstruction CSV path");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); sub) out << sub->help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  out << std::setprecision(17);
  try {
    if (*cat) return cmd_catalog(o, out);
    if (*proj) return cmd_project(o, out);
    if (*it) return cmd_iterate(o, out);
    if (*chk) return cmd_check(o, out);
    if (*y) return cmd_yy(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numeric_failure(e.code()) ? kExitNumeric : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sgp::cli
