#include "edgeflow/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "edgeflow/errors.hpp"
#include "edgeflow/flow.hpp"
#include "edgeflow/grid.hpp"
#include "edgeflow/holder.hpp"
#include "edgeflow/indicial.hpp"
#include "edgeflow/modeheat.hpp"
#include "edgeflow/norms_appendix.hpp"
#include "edgeflow/specfun.hpp"
#include "edgeflow/spectra.hpp"

namespace edgeflow::cli {

using nlohmann::json;
namespace fs = std::filesystem;

const std::map<std::string, std::string>& module_versions() {
  static const std::map<std::string, std::string> v = {
      {"specfun", "1.0.0"}, {"spectra", "1.1.0"},  {"indicial", "1.0.0"},       {"modeheat", "1.0.0"},
      {"geometry", "1.0.0"}, {"flow", "1.0.0"},    {"norms_appendix", "1.0.0"}, {"cli", "1.0.0"},
  };
  return v;
}

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

fs::path resolve(const Config& c, const std::string& p) {
  fs::path path(p);
  if (path.is_absolute() || c.source() == "<text>") return path;
  return fs::path(c.source()).parent_path() / path;
}

void merge(spectra::SpectrumTable& into, const spectra::SpectrumTable& from) {
  into.records.insert(into.records.end(), from.records.begin(), from.records.end());
  if (into.fibre_dimension == 0) into.fibre_dimension = from.fibre_dimension;
}

// `spectrum = <path>` (any kinds), optional `tt_spectrum = <path>`, or
// `sphere = <f>` for the unit round sphere tables up to `k_max`.
spectra::SpectrumTable load_tables(const Config& c) {
  spectra::SpectrumTable t;
  const int hint = c.get_int("f", 0);
  if (c.has("sphere")) {
    const int f = c.get_int("sphere", 3);
    const int k_max = c.get_int("k_max", 6);
    if (f < 1 || k_max < 2) throw ValidationError("sphere needs f >= 1 and k_max >= 2");
    t = spectra::sphere_scalar_spectrum(f, k_max);
    merge(t, spectra::sphere_tt_spectrum(f, k_max));
    t.source = "unit round S^" + std::to_string(f);
  } else if (c.has("spectrum")) {
    t = spectra::load_spectrum(resolve(c, c.get_string("spectrum", "")).string(), hint);
  } else {
    throw ValidationError("config needs `spectrum = <path>` or `sphere = <f>`");
  }
  if (c.has("tt_spectrum")) {
    merge(t, spectra::load_spectrum(resolve(c, c.get_string("tt_spectrum", "")).string(), hint));
  }
  return t;
}

json stability_json(const spectra::StabilityReport& r) {
  json v = json::array();
  for (const auto& w : r.violations) v.push_back({{"eigenvalue", w.eigenvalue}, {"rule", w.rule}});
  return {{"applicable", r.applicable}, {"tangential", r.tangential}, {"weak", r.weak},
          {"u0", opt(r.u0)},           {"u1", opt(r.u1)},             {"u", opt(r.u)},
          {"violations", v},           {"note", r.note}};
}

void fail_tolerance(CommandResult& r, const std::string& what) {
  r.status = "tolerance-failure";
  r.exit_code = kExitTolerance;
  r.result["failures"].push_back(what);
}

}  // namespace

CommandResult cmd_stability(const Config& c, std::uint64_t) {
  CommandResult r;
  const auto table = load_tables(c);
  const int f = c.get_int("f", table.fibre_dimension);
  if (f < 1) throw ValidationError("stability: fibre dimension unknown (set f)");
  const bool lich = table.has_kind(spectra::Kind::LichnerowiczTracefree);
  const auto strict = spectra::check_tangential_stability(table, table, f, lich ? &table : nullptr);
  const auto weak = spectra::check_weak_tangential_stability(table, table, f, lich ? &table : nullptr);
  r.result["f"] = f;
  r.result["source"] = table.source;
  r.result["records"] = table.records.size();
  r.result["tangential"] = stability_json(strict);
  r.result["weak"] = stability_json(weak);
  r.result["failures"] = json::array();

  const auto text = spectra::format_spectrum(table);
  const bool same = spectra::format_spectrum(spectra::parse_spectrum(text, f)) == text;
  r.result["roundtrip_identical"] = same;
  r.files.push_back({"spectrum.txt", text});
  if (!same) fail_tolerance(r, "spectrum table does not survive save/load");
  if (c.has("expect_tangential") && c.get_bool("expect_tangential", false) != strict.tangential) {
    fail_tolerance(r, "tangential verdict differs from expect_tangential");
  }
  if (c.has("expect_weak") && c.get_bool("expect_weak", false) != weak.weak) {
    fail_tolerance(r, "weak verdict differs from expect_weak");
  }
  return r;
}

CommandResult cmd_indicial(const Config& c, std::uint64_t) {
  CommandResult r;
  r.result["failures"] = json::array();
  std::optional<indicial::IndicialProfile> profile;
  int f = c.get_int("f", 0);
  if (c.has("spectrum") || c.has("sphere")) {
    const auto table = load_tables(c);
    if (f == 0) f = table.fibre_dimension;
    std::optional<int> order;
    if (c.has("perturbation_order")) order = c.get_int("perturbation_order", 0);
    profile = indicial::index_set(table, f, order);
    json el = json::array();
    for (const auto& e : profile->elements) {
      el.push_back({{"value", e.value}, {"lambda", e.lambda}, {"kind", spectra::kind_name(e.kind)}});
    }
    r.result["elements"] = el;
    r.result["mu0"] = opt(profile->mu0);
    r.result["mu1"] = opt(profile->mu1);
    r.result["mu_flat"] = opt(profile->mu_flat);
    r.result["mu1_certified"] = profile->mu1_certified;
  }
  if (f < 1) throw ValidationError("indicial: fibre dimension unknown (set f)");
  r.result["f"] = f;
  if (c.has("eigenvalues")) {
    json el = json::array();
    for (double l : c.get_list("eigenvalues", {})) el.push_back({{"lambda", l}, {"element", indicial::element(l, f)}});
    r.result["eigenvalue_elements"] = el;
  }

  auto mu0 = c.get_optional_double("mu0");
  auto mu1 = c.get_optional_double("mu1");
  if (!mu0 && profile) mu0 = profile->mu0;
  if (!mu1 && profile) mu1 = profile->mu1;
  if (!mu0 || !mu1) {
    r.result["windows"] = nullptr;
    r.result["windows_note"] = "no window sampled: mu0 and mu1 need a lichnerowicz-tracefree table or explicit keys";
    return r;
  }
  indicial::WindowOptions o;
  o.geometry_gamma = c.get_optional_double("geometry_gamma");
  o.alpha_one_over_odd = c.get_bool("alpha_one_over_odd", false);
  const int dimB = c.get_int("dimB", 0);
  const int n = c.get_int("window_samples", 20);
  if (dimB < 0 || n < 1) throw ValidationError("indicial: need dimB >= 0 and window_samples >= 1");
  const auto tuples = indicial::sample_window(*mu0, *mu1, dimB, n, o);
  json ws = json::array();
  int rejected = 0;
  for (const auto& t : tuples) {
    const auto w = indicial::holder_window(*mu0, *mu1, dimB, t, o);
    rejected += !w.feasible;
    ws.push_back({{"gamma0", t.gamma0}, {"gamma1", t.gamma1}, {"alpha", t.alpha}, {"feasible", w.feasible}});
  }
  r.result["window_inputs"] = {{"mu0", *mu0}, {"mu1", *mu1}, {"dimB", dimB}};
  r.result["windows"] = ws;
  r.result["window_recheck_failures"] = rejected;
  if (rejected) fail_tolerance(r, "sampled window tuple failed its recheck");
  return r;
}

CommandResult cmd_kernel(const Config& c, std::uint64_t) {
  using modeheat::ModeKernelSpec;
  CommandResult r;
  r.result["failures"] = json::array();
  const int f = c.get_int("f", 1);
  const auto mus = c.get_list("mu", {0.5, 1.0, 2.0});
  const double t = c.get_double("t", 0.05);
  const int n = c.get_int("n", 200);
  const double x_max = c.get_double("x_max", 4.0);
  const double tol_sym = c.get_double("tol_symmetry", 1e-12);
  const double tol_closed = c.get_double("tol_closed_form", 1e-10);
  const double tol_exp = c.get_double("tol_exponent", 1e-2);
  const double tol_semi = c.get_double("tol_semigroup", 1e-4);
  if (f < 1 || mus.empty() || !(t > 0.0) || n < 10 || !(x_max > 0.0)) {
    throw ValidationError("kernel: need f >= 1, a nonempty mu list, t > 0, n >= 10, x_max > 0");
  }
  const std::vector<double> pts = {0.05, 0.2, 0.5, 1.0, 1.7, 2.5};
  const auto grid = make_radial_grid(n, x_max, 3.0, f);
  std::vector<double> bump(n);
  for (int i = 0; i < n; ++i) {
    const double s = grid.nodes[i];
    bump[i] = s * s * std::exp(-(s - 0.8) * (s - 0.8) / 0.05);
  }

  json rows = json::array();
  std::vector<ModeKernelSpec> specs;
  for (double mu : mus) {
    const ModeKernelSpec sp{mu, f, std::nullopt};
    specs.push_back(sp);
    double sym = 0.0, scale = 0.0;
    for (double s : pts) {
      for (double st : pts) {
        const double a = modeheat::mode_heat_kernel(sp, t, s, st);
        sym = std::max(sym, std::abs(a - modeheat::mode_heat_kernel(sp, t, st, s)));
        scale = std::max(scale, std::abs(a));
      }
    }
    const double rel_sym = scale > 0 ? sym / scale : 0.0;
    const double slope = modeheat::boundary_exponent(sp, 1.0, 1.0, 1e-5, 1e-3);
    const double expected = mu - 0.5 * (f - 1);
    const auto twice = modeheat::mode_propagate(sp, t, grid, modeheat::mode_propagate(sp, t, grid, bump));
    const auto once = modeheat::mode_propagate(sp, 2 * t, grid, bump);
    double md = 0.0, mx = 0.0;
    for (int i = 0; i < n; ++i) {
      md = std::max(md, std::abs(twice[i] - once[i]));
      mx = std::max(mx, std::abs(once[i]));
    }
    const double semi = mx > 0 ? md / mx : 0.0;
    json row = {{"mu", mu},
                {"symmetry_defect", rel_sym},
                {"boundary_exponent", slope},
                {"expected_exponent", expected},
                {"exponent_defect", std::abs(slope - expected)},
                {"semigroup_defect", semi}};
    if (f == 1 && mu == 0.5) {
      double worst = 0.0;
      for (double s : pts) {
        for (double st : pts) {
          const double z = s * st / (2 * t);
          // I_{1/2}(z) = sqrt(2 / (pi z)) sinh z
          const double ref = (1 / (2 * t)) * std::sqrt(2 / (std::numbers::pi * z)) * 0.5 *
                             (std::exp(z - (s * s + st * st) / (4 * t)) -
                              std::exp(-z - (s * s + st * st) / (4 * t)));
          if (ref < 1e-250) continue;
          worst = std::max(worst, std::abs(modeheat::mode_heat_kernel(sp, t, s, st) - ref) / ref);
        }
      }
      row["closed_form_defect"] = worst;
      if (worst > tol_closed) fail_tolerance(r, "closed form mu=0.5, f=1");
    }
    if (rel_sym > tol_sym) fail_tolerance(r, "symmetry at mu=" + std::to_string(mu));
    if (std::abs(slope - expected) > tol_exp) fail_tolerance(r, "boundary exponent at mu=" + std::to_string(mu));
    if (semi > tol_semi) fail_tolerance(r, "semigroup at mu=" + std::to_string(mu));
    rows.push_back(row);
  }
  r.result["f"] = f;
  r.result["t"] = t;
  r.result["n"] = n;
  r.result["modes"] = rows;
  if (r.exit_code != kExitOk) r.result["failing_rows"] = rows;
  std::ostringstream csv;
  modeheat::write_kernel_csv(csv, specs, {t}, pts);
  r.files.push_back({"kernel.csv", csv.str()});
  return r;
}

namespace {

flow::FlowConfig flow_config(const Config& c) {
  flow::FlowConfig fc;
  fc.f = c.get_int("f", fc.f);
  fc.cone_c = c.get_double("cone_c", fc.cone_c);
  fc.einstein_constant = c.get_optional_double("einstein_constant");
  fc.n_space = c.get_int("n_space", fc.n_space);
  fc.x_max = c.get_double("x_max", fc.x_max);
  fc.grading = c.get_double("grading", fc.grading);
  fc.t_end = c.get_double("t_end", fc.t_end);
  fc.n_time = c.get_int("n_time", fc.n_time);
  fc.modes = c.get_int("modes", fc.modes);
  fc.mode = flow::parse_mode(c.get_string("mode", flow::mode_name(fc.mode)));
  fc.profile = flow::parse_profile(c.get_string("profile", flow::profile_name(fc.profile)));
  fc.amplitude_u = c.get_double("amplitude_u", fc.amplitude_u);
  fc.amplitude_omega = c.get_double("amplitude_omega", fc.amplitude_omega);
  fc.tol = c.get_double("tol", fc.tol);
  fc.max_iters = c.get_int("max_iters", fc.max_iters);
  fc.project_kernel = c.get_bool("project_kernel", fc.project_kernel);
  fc.decay_from = c.get_double("decay_from", fc.decay_from);
  if (c.has("gamma0") || c.has("gamma1")) {
    // window from the indicial relations
    const double mu0 = c.get_double("mu0", 0.0), mu1 = c.get_double("mu1", 0.0);
    indicial::Candidate cand{c.get_double("gamma0", 0.0), c.get_double("gamma1", 0.0),
                             c.get_double("alpha", 0.5)};
    fc.weights = holder::weights_from_window(indicial::holder_window(mu0, mu1, 0, cand));
  } else if (c.has("gamma")) {
    const auto w = indicial::flat_window(c.get_double("u", 0.0), fc.f, c.get_double("gamma", 0.0),
                                         c.get_double("alpha", 0.5), 0);
    fc.weights = holder::weights_from_window(w);
  } else {
    fc.weights.alpha = c.get_double("alpha", fc.weights.alpha);
  }
  flow::validate(fc);
  return fc;
}

json report_json(const flow::FlowReport& rep) {
  json d = {{"fitted", rep.decay.fitted}, {"rate", rep.decay.rate}, {"r2", rep.decay.r2},
            {"verdict", rep.decay.verdict}};
  return {{"residual_history", rep.residual_history},
          {"contraction_ratios", rep.contraction_ratios},
          {"holder_trajectory", rep.holder_trajectory},
          {"l2_trajectory", rep.l2_trajectory},
          {"curvature_trajectory", rep.curvature_trajectory},
          {"decay", d},
          {"lambda0", opt(rep.lambda0)},
          {"max_contraction_ratio", rep.max_contraction_ratio},
          {"iterations", rep.iterations},
          {"contracted", rep.contracted},
          {"diverged", rep.diverged},
          {"decayed", rep.decayed},
          {"positivity_preserved", rep.positivity_preserved},
          {"min_metric_factor", rep.min_metric_factor},
          {"trace_source_max", rep.trace_source_max},
          {"tracefree_source_max", rep.tracefree_source_max},
          {"note", rep.note}};
}

}  // namespace

CommandResult cmd_flow(const Config& c, std::uint64_t) {
  CommandResult r;
  const auto fc = flow_config(c);
  const auto run = flow::run_flow(fc);
  r.result["config"] = {{"f", fc.f},
                        {"cone_c", fc.cone_c},
                        {"mode", flow::mode_name(fc.mode)},
                        {"profile", flow::profile_name(fc.profile)},
                        {"gamma_trace", fc.weights.gamma_trace},
                        {"gamma_tracefree", fc.weights.gamma_tracefree},
                        {"alpha", fc.weights.alpha}};
  r.result["report"] = report_json(run.report);

  const flow::FlowProblem problem(fc);
  std::ostringstream state;
  flow::write_state_csv(state, problem, run.state);
  r.files.push_back({"flow_state.csv", state.str()});
  std::ostringstream traj;
  traj << "t,holder,l2,curvature\n";
  traj.precision(17);
  for (std::size_t k = 0; k < run.state.times.size(); ++k) {
    auto at = [&](const std::vector<double>& v) { return k < v.size() ? v[k] : std::nan(""); };
    traj << run.state.times[k] << ',' << at(run.report.holder_trajectory) << ','
         << at(run.report.l2_trajectory) << ',' << at(run.report.curvature_trajectory) << '\n';
  }
  r.files.push_back({"flow_trajectory.csv", traj.str()});

  if (c.has("sweep")) {
    json rows = json::array();
    double prev = -1.0;
    bool monotone = true;
    for (double eps : c.get_list("sweep", {})) {
      auto sc = fc;
      sc.amplitude_u = eps;
      sc.amplitude_omega = eps * c.get_double("sweep_omega_ratio", 0.0);
      const auto s = flow::run_flow(sc);
      monotone = monotone && s.report.max_contraction_ratio >= prev;
      prev = s.report.max_contraction_ratio;
      rows.push_back({{"epsilon", eps},
                      {"max_contraction_ratio", s.report.max_contraction_ratio},
                      {"iterations", s.report.iterations},
                      {"contracted", s.report.contracted},
                      {"diverged", s.report.diverged}});
    }
    r.result["sweep"] = rows;
    r.result["sweep_nondecreasing"] = monotone;
  }

  const auto& rep = run.report;
  if (!rep.positivity_preserved) {
    r.status = "positivity-lost";
    r.exit_code = kExitNonconvergence;
  } else if (rep.diverged) {
    r.status = "diverged";
    r.exit_code = kExitNonconvergence;
  } else if (!rep.contracted) {
    r.status = "not-converged";
    r.exit_code = kExitNonconvergence;
  }
  return r;
}

CommandResult cmd_appendix(const Config& c, std::uint64_t seed) {
  using appendix::Curve;
  CommandResult r;
  r.result["failures"] = json::array();
  const int N = c.get_int("N", 3);
  const appendix::Interval K{c.get_double("K_lo", 0.0), c.get_double("K_hi", 1.0)};
  const int samples = c.get_int("samples", 10000);
  const std::string fn = c.get_string("function", "cube-root");
  Curve w, dw;
  if (fn == "cube-root") {
    w = [](double e) { return Eigen::VectorXd::Constant(1, std::cbrt(e)); };
    dw = [](double e) { return Eigen::VectorXd::Constant(1, 1.0 / (3.0 * std::cbrt(e * e))); };
  } else if (fn == "identity") {
    w = [](double e) { return Eigen::VectorXd::Constant(1, e); };
    dw = [](double) { return Eigen::VectorXd::Constant(1, 1.0); };
  } else if (fn == "square") {
    w = [](double e) { return Eigen::VectorXd::Constant(1, e * e); };
    dw = [](double e) { return Eigen::VectorXd::Constant(1, 2 * e); };
  } else if (fn == "helix") {
    w = [](double e) {
      Eigen::VectorXd v(3);
      v << std::cos(e), std::sin(e), e;
      return v;
    };
  } else {
    throw ValidationError("appendix: unknown function '" + fn + "' (cube-root | identity | square | helix)");
  }

  const double c1 = appendix::holder_quotient_constant(1, K);
  const double cN = appendix::holder_quotient_constant(N, K);
  const auto audit = appendix::mean_value_audit(w, dw, N, K, samples, seed);
  r.result["C_1"] = c1;
  r.result["C_N"] = cN;
  r.result["mean_value"] = {{"function", fn},
                            {"N", N},
                            {"K", {K.lo, K.hi}},
                            {"samples", audit.samples},
                            {"max_fitted_c", audit.max_fitted_c},
                            {"worst_ratio", audit.worst_ratio},
                            {"worst_pair", {audit.worst_eta, audit.worst_eta_prime}},
                            {"holds", audit.holds}};
  if (!audit.holds) fail_tolerance(r, "mean value bound: fitted C exceeds C(N, K) + 1e-6");

  const int edge_samples = c.get_int("edge_samples", 1000);
  if (edge_samples > 0) {
    appendix::EdgeChart chart;
    chart.x = {0.0, c.get_double("edge_x_max", 1.0)};
    chart.y = {c.get_double("edge_y_lo", -1.0), c.get_double("edge_y_hi", 1.0)};
    chart.z = {0.0, 2 * std::numbers::pi};
    const double p = c.get_double("edge_power", 0.7);
    const appendix::EdgeField field = [p](double x, double, double z) {
      return Eigen::VectorXd::Constant(1, std::pow(x, p) * std::cos(z));
    };
    const double y_ref = c.get_double("y_ref", 0.0);
    const int seg = c.get_int("edge_segment", 64);
    const auto e = appendix::edge_mean_value_audit(field, chart, y_ref, N, edge_samples, seed, seg);
    r.result["edge"] = {{"samples", e.samples},
                        {"max_fitted_c", e.max_fitted_c},
                        {"constant", e.constant},
                        {"holds", e.holds},
                        {"power", p},
                        {"segment", seg}};
    if (!e.holds) fail_tolerance(r, "edge mean value bound");
  }
  return r;
}

json make_report(const std::string& command, const Config& config, std::uint64_t seed,
                 const CommandResult& r) {
  json report;
  report["command"] = command;
  report["config"] = config.entries();
  report["config_hash"] = hex64(fnv1a(config.canonical()));
  report["seed"] = seed;
  report["versions"] = module_versions();
  report["status"] = r.status;
  report["exit_code"] = r.exit_code;
  report["unused_keys"] = config.unused_keys();
  report["result"] = r.result;
  return report;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"edgeflow: singular Ricci-de Turck flow experiments on cones"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  const std::map<std::string, std::pair<Command, std::string>> commands = {
      {"stability", {cmd_stability, "tangential stability audit of cross-section spectra"}},
      {"indicial", {cmd_indicial, "index sets and feasible Hoelder windows"}},
      {"kernel", {cmd_kernel, "mode heat kernel property suite"}},
      {"flow", {cmd_flow, "Picard iteration of the perturbed flow"}},
      {"appendix", {cmd_appendix, "mean value and Hoelder quotient audits"}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, cmd] : commands) {
    auto* s = app.add_subcommand(name, cmd.second);
    s->add_option("--config", config_path, "key = value config file")->required();
    s->add_option("--out", out_dir, "output directory for the report and side files");
    s->add_option("--seed", seed, "seed for randomised audits");
    subs[name] = s;
  }

  std::vector<std::string> argv_s = {"edgeflow"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_s) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "edgeflow: " << e.what() << "\n";
    return kExitValidation;
  }
  std::string command;
  for (const auto& [name, s] : subs) {
    if (s->parsed()) command = name;
  }

  Config config;
  CommandResult result;
  auto invalid = [&](const std::exception& e) {
    result = {};
    result.status = "validation-error";
    result.exit_code = kExitValidation;
    result.result = {{"error", e.what()}};
    err << "edgeflow " << command << ": " << e.what() << "\n";
  };
  try {
    config = Config::load(config_path);
    result = commands.at(command).first(config, seed);
  } catch (const ParseError& e) {
    invalid(e);
    result.result["line"] = e.line();
  } catch (const ValidationError& e) {
    invalid(e);
  } catch (const DomainError& e) {
    invalid(e);
  } catch (const QuadratureError& e) {
    invalid(e);
  } catch (const std::exception& e) {
    err << "edgeflow " << command << ": crashed: " << e.what() << "\n";
    return kExitCrash;
  }

  const auto text = dump_report(make_report(command, config, seed, result));
  if (out_dir.empty()) {
    out << text;
    return result.exit_code;
  }
  try {
    fs::create_directories(out_dir);
    auto write = [&](const std::string& name, const std::string& contents) {
      std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
      if (!f) throw Error("cannot write " + (fs::path(out_dir) / name).string());
      f << contents;
    };
    write(command + ".json", text);
    for (const auto& file : result.files) write(file.name, file.contents);
  } catch (const std::exception& e) {
    err << "edgeflow " << command << ": " << e.what() << "\n";
    return kExitCrash;
  }
  out << command << ": " << result.status << " (exit " << result.exit_code << ") -> "
      << (fs::path(out_dir) / (command + ".json")).string() << "\n";
  return result.exit_code;
}

}  // namespace edgeflow::cli
