#include "fixlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fixlab/config.hpp"
#include "fixlab/json_out.hpp"
#include "fixlab/picard.hpp"

namespace fixlab {

namespace {

json tool_header() { return {{"name", "fixlab"}, {"version", FIXLAB_VERSION}}; }

json output_doc(const json& resolved, json result) {
  return {{"tool", tool_header()}, {"config", resolved}, {"result", std::move(result)}};
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

std::string csv_preamble(const json& resolved) {
  return std::string("# fixlab ") + FIXLAB_VERSION + "\n# config " + dump_compact(resolved) + "\n";
}

struct CommonOpts {
  std::string config_path;
  std::string output;
  std::string out_format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true,
                bool csv_available = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "run configuration (JSON)");
  if (config_required) c->required();
  cmd->add_option("--output", opts.output, "write the result here instead of stdout");
  if (csv_available)
    cmd->add_option("--out", opts.out_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

// --- certify -----------------------------------------------------------------

json certificate_json(const ContractionCertificate<double>& cert) {
  json violations = json::array();
  for (const auto& v : cert.violations) {
    json item = {{"x", v.x}, {"y", v.y}, {"lhs", v.lhs}, {"rhs", v.rhs}};
    item["score"] = std::isfinite(v.score) ? json(v.score) : json(nullptr);
    item["reason"] = violation_reason_name(v.reason);
    violations.push_back(std::move(item));
  }
  json result = {{"kind", contraction_kind_name(cert.kind)},
                 {"mode", cert.mode == CertificateMode::omega_gap ? "omega-gap" : "beta-ratio"},
                 {"verdict", verdict_name(cert.verdict)}};
  result["value"] = std::isfinite(cert.value) ? json(cert.value) : json(nullptr);
  result["threshold"] = cert.threshold;
  result["admissible-pairs"] = static_cast<double>(cert.admissible_pairs);
  result["enumerated-pairs"] = static_cast<double>(cert.enumerated_pairs);
  result["condition-i-failures"] = static_cast<double>(cert.condition_i_failures);
  result["truncation"] = cert.truncation;
  if (cert.extremal_pair)
    result["extremal"] = {{"x", cert.extremal_pair->first}, {"y", cert.extremal_pair->second}};
  else
    result["extremal"] = nullptr;
  result["violations"] = std::move(violations);
  return result;
}

void write_pairs_csv(const ContractionCertificate<double>& cert, const json& resolved,
                     const std::string& path) {
  std::string text = csv_preamble(resolved);
  text += "i,j,x,y,lhs,rhs,admissible,c_term,d_term,condition_i_ok,score\n";
  for (const auto& rec : cert.pairs) {
    text += std::to_string(rec.i) + "," + std::to_string(rec.j) + ",";
    text += format_double(rec.x) + "," + format_double(rec.y) + ",";
    text += format_double(rec.terms.lhs) + "," + format_double(rec.terms.rhs_aggregate) + ",";
    text += rec.terms.admissible ? "1," : "0,";
    text += format_double(rec.terms.c_term) + "," + format_double(rec.terms.d_term) + ",";
    text += rec.terms.condition_i_ok ? "1," : "0,";
    text += std::isfinite(rec.score) ? format_double(rec.score) : "";
    text += "\n";
  }
  emit(text, path);
}

int cmd_certify(const CommonOpts& opts, const std::string& pairs_path,
                const std::optional<double>& horizon, const std::optional<double>& step,
                const std::optional<double>& margin) {
  json doc = load_json_file(opts.config_path);
  if (horizon) doc["horizon"] = *horizon;
  if (step) doc["step"] = *step;
  if (margin) doc["margin"] = *margin;
  auto job = parse_certify_config(doc);
  job.options.keep_pairs = !pairs_path.empty();

  ContractionCertificate<double> cert =
      is_omega_kind(job.kind)
          ? certify_omega(job.kind, job.instance.space, job.instance.map, job.instance.aux,
                          *job.instance.f, job.options)
          : certify_beta(job.kind, job.instance.space, job.instance.map, job.instance.aux,
                         job.options);

  if (!pairs_path.empty()) write_pairs_csv(cert, job.instance.resolved, pairs_path);
  emit(dump_deterministic(output_doc(job.instance.resolved, certificate_json(cert))),
       opts.output);
  return cert.verdict == Verdict::certified ? kExitSuccess : kExitNegative;
}

// --- picard ------------------------------------------------------------------

int cmd_picard(const CommonOpts& opts, const std::optional<double>& max_iter,
               const std::optional<double>& tol) {
  json doc = load_json_file(opts.config_path);
  if (max_iter) doc["max-iter"] = *max_iter;
  if (tol) doc["tol"] = *tol;
  auto job = parse_picard_config(doc);
  auto trace = iterate(job.instance.space, job.instance.map, job.start, job.max_iter, job.tol,
                       job.instance.aux);
  bool continuity = orbit_continuity_diagnostic(job.instance.space, job.instance.map, trace);

  const auto& f = job.instance.f;
  double f_base = 0.0;
  bool have_base = false;
  if (f && !trace.lambda_seq.empty() && trace.lambda_seq[0] + trace.eta_seq[0] > 0.0) {
    f_base = f->eval(trace.lambda_seq[0] + trace.eta_seq[0]);
    have_base = true;
  }

  if (opts.out_format == "csv") {
    std::string text = csv_preamble(job.instance.resolved);
    text += std::string("# continuity-diagnostic ") + (continuity ? "true" : "false") + "\n";
    text += "n,x,step_dist,lambda,eta,f_of_sum,decrement_margin\n";
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
      text += std::to_string(n) + "," + format_double(trace.iterates[n]) + ",";
      if (n < trace.steps()) {
        double sum = trace.lambda_seq[n] + trace.eta_seq[n];
        text += format_double(trace.step_dist[n]) + "," + format_double(trace.lambda_seq[n]) +
                "," + format_double(trace.eta_seq[n]) + ",";
        if (f && sum > 0.0) {
          double fs = f->eval(sum);
          text += format_double(fs) + ",";
          if (job.omega && have_base && n >= 1)
            text += format_double(f_base - static_cast<double>(n) * *job.omega - fs);
        } else {
          text += ",";
        }
      } else {
        text += ",,,,";
      }
      text += "\n";
    }
    emit(text, opts.output);
  } else {
    json result = {{"stop-reason", stop_reason_name(trace.stop_reason)},
                   {"steps", static_cast<double>(trace.steps())},
                   {"terminal", trace.terminal()},
                   {"continuity-diagnostic", continuity},
                   {"iterates", trace.iterates},
                   {"step-dist", trace.step_dist},
                   {"lambda", trace.lambda_seq},
                   {"eta", trace.eta_seq}};
    emit(dump_deterministic(output_doc(job.instance.resolved, std::move(result))), opts.output);
  }
  return trace.stop_reason == StopReason::max_iterations ? kExitNegative : kExitSuccess;
}

// --- space-verify ------------------------------------------------------------

int cmd_space_verify(const CommonOpts& opts) {
  json doc = load_json_file(opts.config_path);
  auto job = parse_space_verify_config(doc);

  json result;
  bool all_ok = true;
  std::mt19937_64 rng(job.triple_seed);

  if (job.function_p) {
    auto space = make_function_space("function-grid", job.function_grid_size, *job.function_p);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto random_fn = [&]() {
      std::vector<double> f(job.function_grid_size);
      for (auto& v : f) v = unif(rng);
      return f;
    };
    std::size_t count = job.triple_count ? job.triple_count : 100;
    std::vector<std::array<std::vector<double>, 3>> triples;
    std::vector<std::vector<double>> sample;
    for (std::size_t i = 0; i < count; ++i) {
      triples.push_back({random_fn(), random_fn(), random_fn()});
      if (sample.size() < 24) sample.push_back(triples.back()[0]);
    }
    auto axioms = verify_point_axioms(space, sample);
    auto triangle = verify_triangle_triples(space, triples);
    all_ok = axioms.identity_ok && axioms.symmetry_ok && triangle.triangle_ok;
    result = {{"identity-ok", axioms.identity_ok},
              {"symmetry-ok", axioms.symmetry_ok},
              {"triples",
               {{"count", static_cast<double>(count)},
                {"violations", static_cast<double>(triangle.witnesses.size())}}},
              {"s", space.s}};
  } else {
    const auto& space = job.instance.space;
    auto axioms = verify_point_axioms(space, space.sample);
    all_ok = axioms.identity_ok && axioms.symmetry_ok;
    json failures = json::array();
    for (const auto& w : axioms.witnesses) {
      if (failures.size() >= 16) break;  // keep reports desk-sized
      failures.push_back({{"x", w.x}, {"y", w.y}, {"d", w.d1}});
    }
    result = {{"identity-ok", axioms.identity_ok},
              {"symmetry-ok", axioms.symmetry_ok},
              {"failures", failures}};

    json witness_rows = json::array();
    for (const auto& w : job.witnesses) {
      auto rep = verify_relaxed_triangle(space, w, job.tail_window, job.tol);
      witness_rows.push_back({{"admissible", rep.witness_admissible},
                              {"triangle-ok", rep.triangle_ok}});
      if (rep.witness_admissible && !rep.triangle_ok) all_ok = false;
    }
    result["witnesses"] = witness_rows;

    if (job.triple_count > 0 && space.sample.size() >= 3) {
      std::uniform_int_distribution<std::size_t> pick(0, space.sample.size() - 1);
      std::vector<std::array<double, 3>> triples;
      for (std::size_t i = 0; i < job.triple_count; ++i)
        triples.push_back({space.sample[pick(rng)], space.sample[pick(rng)],
                           space.sample[pick(rng)]});
      auto triangle = verify_triangle_triples(space, triples, job.tol);
      if (!triangle.triangle_ok) all_ok = false;
      result["triples"] = {{"count", static_cast<double>(job.triple_count)},
                           {"violations", static_cast<double>(triangle.witnesses.size())}};
    }
  }

  result["all-ok"] = all_ok;
  emit(dump_deterministic(output_doc(job.resolved, std::move(result))), opts.output);
  return all_ok ? kExitSuccess : kExitNegative;
}

// --- f-check -----------------------------------------------------------------

int cmd_f_check(const CommonOpts& opts, const std::string& builtin_name) {
  json doc;
  if (!builtin_name.empty()) {
    doc = {{"f", {{"name", builtin_name}}}};
  } else {
    if (opts.config_path.empty())
      throw std::invalid_argument("f-check needs --config or --name");
    doc = load_json_file(opts.config_path);
  }
  auto job = parse_f_check_config(doc);

  bool w1 = check_w1(job.f, default_w1_grid()).ok;
  bool w2 = check_w2(job.f, default_w2_sequence(), job.w2_floor);
  bool w3 = check_w3(job.f, default_w3_grid(), job.w3_tol);
  json result = {{"name", job.f.name}, {"k", job.f.w3_exponent},
                 {"w1-ok", w1},        {"w2-ok", w2},
                 {"w3-ok", w3},        {"all-ok", w1 && w2 && w3}};
  if (job.suggest_k) {
    auto k = suggest_w3_exponent(job.f, job.w3_tol);
    result["suggested-k"] = k ? json(*k) : json(nullptr);
  }
  emit(dump_deterministic(output_doc(job.resolved, std::move(result))), opts.output);
  return (w1 && w2 && w3) ? kExitSuccess : kExitNegative;
}

// --- examples ----------------------------------------------------------------

int cmd_examples_run(const CommonOpts& opts, const std::string& id,
                     const std::optional<double>& horizon) {
  RunAllTolerances tol;
  auto rows = run_all(tol, id, horizon ? static_cast<std::size_t>(*horizon) : 0);

  json resolved = {{"id", id.empty() ? json("all") : json(id)},
                   {"horizon", horizon ? json(*horizon) : json("default")}};
  bool negative = false;
  for (const auto& row : rows)
    if (row.status != RowStatus::pass) negative = true;

  if (opts.out_format == "csv") {
    std::string text = csv_preamble(resolved);
    text += "id,check,computed,expected,status,detail\n";
    for (const auto& row : rows) {
      text += row.id + ",\"" + row.check + "\"," + format_double(row.computed) + "," +
              format_double(row.expected) + "," + row_status_name(row.status) + ",\"" +
              row.detail + "\"\n";
    }
    emit(text, opts.output);
  } else {
    json items = json::array();
    for (const auto& row : rows)
      items.push_back({{"id", row.id},
                       {"check", row.check},
                       {"computed", row.computed},
                       {"expected", row.expected},
                       {"status", row_status_name(row.status)},
                       {"detail", row.detail}});
    emit(dump_deterministic(output_doc(resolved, {{"rows", items}})), opts.output);
  }
  return negative ? kExitNegative : kExitSuccess;
}

// --- terrain -----------------------------------------------------------------

json terrain_report_json(const IlcReport& report) {
  json iterates = json::array();
  for (const auto& it : report.iterates) {
    json row = {{"n", static_cast<double>(it.n)},
                {"tracking-error", it.tracking_error},
                {"clamp-count", static_cast<double>(it.clamp_count)}};
    row["delta-max"] = it.delta.empty() ? json(nullptr) : json(it.delta_max);
    row["ratio"] = it.ratio ? json(*it.ratio) : json(nullptr);
    row["f1"] = it.f1_ok ? json(*it.f1_ok) : json(nullptr);
    row["f2"] = it.f2_ok ? json(*it.f2_ok) : json(nullptr);
    row["f2-worst-ratio"] = it.f2_worst_ratio ? json(*it.f2_worst_ratio) : json(nullptr);
    row["f2-worst-xi"] = it.f2_worst_xi ? json(*it.f2_worst_xi) : json(nullptr);
    iterates.push_back(std::move(row));
  }
  json result = {{"converged", report.converged},
                 {"diverged", report.diverged},
                 {"final-error", report.final_error},
                 {"fixed-point-residual", report.fixed_point_residual},
                 {"iterations", static_cast<double>(report.iterates.size() - 1)}};
  result["diverged-at"] =
      report.diverged ? json(static_cast<double>(report.diverged_at)) : json(nullptr);
  auto opt_idx = [](const std::optional<std::size_t>& v) {
    return v ? json(static_cast<double>(*v)) : json(nullptr);
  };
  result["first-f1-violation"] = opt_idx(report.first_f1_violation);
  result["first-f2-violation"] = opt_idx(report.first_f2_violation);
  result["first-ratio-saturation"] = opt_idx(report.first_ratio_saturation);
  result["iterates"] = std::move(iterates);
  return result;
}

std::string terrain_csv(const IlcReport& report, const json& resolved) {
  std::string text = csv_preamble(resolved);
  text += "n,tracking_error,delta_max,ratio,f1,f2,clamp_count\n";
  for (const auto& it : report.iterates) {
    text += std::to_string(it.n) + "," + format_double(it.tracking_error) + ",";
    text += it.delta.empty() ? "" : format_double(it.delta_max);
    text += ",";
    text += it.ratio ? format_double(*it.ratio) : "";
    text += ",";
    text += it.f1_ok ? (*it.f1_ok ? "1" : "0") : "";
    text += ",";
    text += it.f2_ok ? (*it.f2_ok ? "1" : "0") : "";
    text += "," + std::to_string(it.clamp_count) + "\n";
  }
  return text;
}

std::string terrain_fields_csv(const TerrainConfig& cfg, const IlcReport& report,
                               const json& resolved) {
  auto xi = cfg.grid();
  auto gamma = cfg.gamma_samples();
  std::string text = csv_preamble(resolved);
  text += "n,xi,gamma,kappa,sigma,altitude\n";
  for (const auto& it : report.iterates) {
    for (std::size_t i = 0; i < xi.size(); ++i) {
      text += std::to_string(it.n) + "," + format_double(xi[i]) + "," +
              format_double(gamma[i]) + "," + format_double(it.kappa[i]) + "," +
              format_double(it.sigma[i]) + "," + format_double(it.altitude[i]) + "\n";
    }
  }
  return text;
}

int cmd_terrain_simulate(const CommonOpts& opts, const std::string& fields_path,
                         const std::optional<double>& tol,
                         const std::optional<double>& max_iterations) {
  json doc = load_json_file(opts.config_path);
  if (tol) doc["tol"] = *tol;
  if (max_iterations) doc["max-iterations"] = *max_iterations;
  auto job = parse_terrain_config(doc);
  auto report = simulate(job.config);

  if (!fields_path.empty()) emit(terrain_fields_csv(job.config, report, job.resolved), fields_path);
  if (opts.out_format == "csv")
    emit(terrain_csv(report, job.resolved), opts.output);
  else
    emit(dump_deterministic(output_doc(job.resolved, terrain_report_json(report))), opts.output);
  return report.converged ? kExitSuccess : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"super-metric contraction certificates, orbit diagnostics and the "
               "terrain-following control loop"};
  app.require_subcommand(1);

  CommonOpts certify_opts, picard_opts, space_opts, fcheck_opts, examples_opts, terrain_opts;
  std::string pairs_path, fcheck_name, examples_id, fields_path;
  std::optional<double> ov_horizon, ov_step, ov_margin, ov_max_iter, ov_tol, ov_terrain_tol,
      ov_terrain_iters, ov_examples_horizon;

  auto* certify = app.add_subcommand("certify", "evaluate a contraction certificate");
  add_common(certify, certify_opts, true, false);
  certify->add_option("--pairs", pairs_path, "also write a CSV of all pair terms");
  certify->add_option("--horizon", ov_horizon, "override the fixture horizon");
  certify->add_option("--step", ov_step, "override the fixture grid step");
  certify->add_option("--margin", ov_margin, "override the ratio certification margin");

  auto* picard = app.add_subcommand("picard", "run one orbit and emit its trace");
  add_common(picard, picard_opts);
  picard->add_option("--max-iter", ov_max_iter, "override the iteration budget");
  picard->add_option("--tol", ov_tol, "override the stop tolerance");

  auto* space = app.add_subcommand("space-verify", "check the space axioms at desk scale");
  add_common(space, space_opts, true, false);

  auto* fcheck = app.add_subcommand("f-check", "check conditions W1-W3 for a gauge function");
  add_common(fcheck, fcheck_opts, false, false);
  fcheck->add_option("--name", fcheck_name, "check a built-in gauge by name");

  auto* examples = app.add_subcommand("examples", "canonical worked instances");
  auto* examples_run = examples->add_subcommand("run", "run fixtures against their records");
  add_common(examples_run, examples_opts, false);
  examples_run->add_option("--id", examples_id, "run a single fixture");
  examples_run->add_option("--horizon", ov_examples_horizon, "override sequence horizons");

  auto* terrain = app.add_subcommand("terrain", "terrain-following control loop");
  auto* terrain_sim = terrain->add_subcommand("simulate", "run the learning loop");
  add_common(terrain_sim, terrain_opts);
  terrain_sim->add_option("--fields", fields_path, "also write per-xi dumps to this CSV");
  terrain_sim->add_option("--tol", ov_terrain_tol, "override the convergence tolerance");
  terrain_sim->add_option("--max-iterations", ov_terrain_iters, "override the iteration budget");

  std::vector<const char*> argv;
  argv.push_back("fixlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (certify->parsed()) return cmd_certify(certify_opts, pairs_path, ov_horizon, ov_step, ov_margin);
    if (picard->parsed()) return cmd_picard(picard_opts, ov_max_iter, ov_tol);
    if (space->parsed()) return cmd_space_verify(space_opts);
    if (fcheck->parsed()) return cmd_f_check(fcheck_opts, fcheck_name);
    if (examples->parsed()) {
      if (!examples_run->parsed()) throw std::invalid_argument("usage: examples run [...]");
      return cmd_examples_run(examples_opts, examples_id, ov_examples_horizon);
    }
    if (terrain->parsed()) {
      if (!terrain_sim->parsed()) throw std::invalid_argument("usage: terrain simulate [...]");
      return cmd_terrain_simulate(terrain_opts, fields_path, ov_terrain_tol, ov_terrain_iters);
    }
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fixlab
