#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fixlab/cli.hpp"
#include "fixlab/examples.hpp"
#include "fixlab/picard.hpp"
#include "fixlab/terrain.hpp"

namespace py = pybind11;
using namespace fixlab;

namespace {

py::object opt_index(const std::optional<std::size_t>& v) {
  if (!v) return py::none();
  return py::cast(*v);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "super-metric contraction certificates, orbit diagnostics and the "
            "terrain-following control loop";
  m.attr("__version__") = FIXLAB_VERSION;

  py::register_exception<NumericError>(m, "NumericError");
  py::register_exception<DomainEscapeError>(m, "DomainEscapeError");

  py::class_<ScalarSpace>(m, "ScalarSpace")
      .def_readonly("name", &ScalarSpace::name)
      .def_readonly("s", &ScalarSpace::s)
      .def_readonly("sample", &ScalarSpace::sample)
      .def("distance",
           [](const ScalarSpace& space, double x, double y) { return distance(space, x, y); })
      .def("__repr__", [](const ScalarSpace& space) {
        return "<ScalarSpace " + space.name + " s=" + std::to_string(space.s) + " |sample|=" +
               std::to_string(space.sample.size()) + ">";
      });

  m.def(
      "interval_space",
      [](double lo, double hi, double step, const std::string& metric, double s, double p) {
        return make_interval_space("interval:" + metric, lo, hi, step,
                                   named_scalar_metric(metric, p), s);
      },
      py::arg("lo"), py::arg("hi"), py::arg("step"), py::arg("metric") = "euclidean",
      py::arg("s") = 1.0, py::arg("p") = 1.0);
  m.def(
      "finite_points_space",
      [](std::vector<double> points, const std::string& metric, double s, double p) {
        return make_finite_points_space("finite:" + metric, std::move(points),
                                        named_scalar_metric(metric, p), s);
      },
      py::arg("points"), py::arg("metric") = "euclidean", py::arg("s") = 1.0, py::arg("p") = 1.0);
  m.def(
      "finite_table_space",
      [](std::vector<double> points, const std::vector<std::vector<double>>& table, double s) {
        return make_finite_table_space("finite-table", std::move(points), table, s);
      },
      py::arg("points"), py::arg("table"), py::arg("s") = 1.0);

  m.def("verify_point_axioms", [](const ScalarSpace& space) {
    auto report = verify_point_axioms(space, space.sample);
    py::dict out;
    out["identity_ok"] = report.identity_ok;
    out["symmetry_ok"] = report.symmetry_ok;
    out["failures"] = report.witnesses.size();
    return out;
  });
  m.def(
      "is_cauchy",
      [](const std::vector<double>& points, const ScalarSpace& space, std::size_t horizon,
         double tol) {
        auto diag = is_cauchy(points, space, horizon, tol);
        return py::make_tuple(diag.cauchy, diag.sup_tail);
      },
      py::arg("points"), py::arg("space"), py::arg("horizon"), py::arg("tol") = 1e-9);
  m.def(
      "verify_relaxed_triangle",
      [](const ScalarSpace& space, std::vector<double> seq_a, std::vector<double> seq_b,
         double target, std::size_t tail_window, double tol) {
        SequenceWitness<double> witness{std::move(seq_a), std::move(seq_b), target, 0};
        auto report = verify_relaxed_triangle(space, witness, tail_window, tol);
        py::dict out;
        out["admissible"] = report.witness_admissible;
        out["triangle_ok"] = report.triangle_ok;
        return out;
      },
      py::arg("space"), py::arg("seq_a"), py::arg("seq_b"), py::arg("target"),
      py::arg("tail_window") = kDefaultTailWindow, py::arg("tol") = kDefaultTailTol);

  py::class_<SelfMap<double>>(m, "SelfMap")
      .def(py::init([](std::string name, std::function<double(double)> fn) {
             return SelfMap<double>{std::move(name), std::move(fn)};
           }),
           py::arg("name"), py::arg("fn"))
      .def_readonly("name", &SelfMap<double>::name)
      .def("__call__", [](const SelfMap<double>& map, double x) { return map.apply(x); });

  py::class_<AuxiliaryMap<double>>(m, "AuxiliaryMap")
      .def(py::init([](std::string name, std::function<double(double, double)> fn,
                       bool diagonal_identity) {
             return AuxiliaryMap<double>{std::move(name), std::move(fn), diagonal_identity};
           }),
           py::arg("name"), py::arg("fn"), py::arg("diagonal_identity") = false)
      .def_readonly("name", &AuxiliaryMap<double>::name)
      .def_readonly("diagonal_identity", &AuxiliaryMap<double>::diagonal_identity)
      .def("__call__",
           [](const AuxiliaryMap<double>& aux, double x, double y) { return aux.apply(x, y); });

  m.def("aux_map", &named_scalar_aux, py::arg("name"), py::arg("param") = 0.0);

  py::class_<FFunction>(m, "FFunction")
      .def(py::init([](std::string name, std::function<double(double)> fn, double k) {
             return FFunction{std::move(name), std::move(fn), k};
           }),
           py::arg("name"), py::arg("fn"), py::arg("k"))
      .def_readonly("name", &FFunction::name)
      .def_readonly("k", &FFunction::w3_exponent)
      .def("__call__", &FFunction::eval)
      .def("check", [](const FFunction& f) {
        auto report = check_all(f);
        py::dict out;
        out["w1_ok"] = report.w1_ok;
        out["w2_ok"] = report.w2_ok;
        out["w3_ok"] = report.w3_ok;
        return out;
      });
  m.def("builtin_f", &builtin_f, py::arg("name"));
  m.def("builtin_f_names", [] { return builtin_f_names(); });
  m.def(
      "suggest_w3_exponent",
      [](const FFunction& f, double tol) -> py::object {
        auto k = suggest_w3_exponent(f, tol);
        if (!k) return py::none();
        return py::cast(*k);
      },
      py::arg("f"), py::arg("tol") = kDefaultW3Tol);

  py::class_<PairTerms>(m, "PairTerms")
      .def_readonly("lhs", &PairTerms::lhs)
      .def_readonly("rhs", &PairTerms::rhs_aggregate)
      .def_readonly("admissible", &PairTerms::admissible)
      .def_readonly("condition_i_ok", &PairTerms::condition_i_ok)
      .def_readonly("c_term", &PairTerms::c_term)
      .def_readonly("d_term", &PairTerms::d_term);

  m.def(
      "pair_terms",
      [](const std::string& kind, const ScalarSpace& space, const SelfMap<double>& map,
         const AuxiliaryMap<double>& aux, double x, double y) {
        return pair_terms(contraction_kind_from_name(kind), space, map, aux, x, y);
      },
      py::arg("kind"), py::arg("space"), py::arg("map"), py::arg("aux"), py::arg("x"),
      py::arg("y"));

  py::class_<ContractionCertificate<double>>(m, "Certificate")
      .def_property_readonly("kind",
                             [](const ContractionCertificate<double>& c) {
                               return contraction_kind_name(c.kind);
                             })
      .def_property_readonly("verdict",
                             [](const ContractionCertificate<double>& c) {
                               return verdict_name(c.verdict);
                             })
      .def_property_readonly("value",
                             [](const ContractionCertificate<double>& c) -> py::object {
                               if (std::isnan(c.value)) return py::none();
                               return py::cast(c.value);
                             })
      .def_readonly("threshold", &ContractionCertificate<double>::threshold)
      .def_readonly("admissible_pairs", &ContractionCertificate<double>::admissible_pairs)
      .def_readonly("condition_i_failures",
                    &ContractionCertificate<double>::condition_i_failures)
      .def_readonly("truncation", &ContractionCertificate<double>::truncation)
      .def_property_readonly("violations",
                             [](const ContractionCertificate<double>& c) {
                               py::list out;
                               for (const auto& v : c.violations)
                                 out.append(py::make_tuple(v.x, v.y, v.lhs, v.rhs, v.score,
                                                           violation_reason_name(v.reason)));
                               return out;
                             })
      .def("__repr__", [](const ContractionCertificate<double>& c) {
        return "<Certificate " + contraction_kind_name(c.kind) + " " + verdict_name(c.verdict) +
               ">";
      });

  m.def(
      "certify",
      [](const std::string& kind_name, const ScalarSpace& space, const SelfMap<double>& map,
         const AuxiliaryMap<double>& aux, py::object f, double margin,
         std::optional<std::tuple<double, double, double>> reich) {
        auto kind = contraction_kind_from_name(kind_name);
        CertifyOptions opt;
        opt.margin = margin;
        if (reich) opt.reich = {std::get<0>(*reich), std::get<1>(*reich), std::get<2>(*reich)};
        if (is_omega_kind(kind)) {
          if (f.is_none()) throw std::invalid_argument("gauge kinds need an FFunction");
          return certify_omega(kind, space, map, aux, f.cast<FFunction>(), opt);
        }
        return certify_beta(kind, space, map, aux, opt);
      },
      py::arg("kind"), py::arg("space"), py::arg("map"), py::arg("aux"),
      py::arg("f") = py::none(), py::arg("margin") = 1e-9, py::arg("reich") = py::none());

  m.def(
      "check_condition_i",
      [](const std::string& kind, const ScalarSpace& space, const SelfMap<double>& map,
         const AuxiliaryMap<double>& aux) {
        auto result = check_condition_i(contraction_kind_from_name(kind), space, map, aux);
        return py::make_tuple(result.ok, result.checked_pairs);
      },
      py::arg("kind"), py::arg("space"), py::arg("map"), py::arg("aux"));

  py::class_<PicardTrace<double>>(m, "PicardTrace")
      .def_readonly("iterates", &PicardTrace<double>::iterates)
      .def_readonly("step_dist", &PicardTrace<double>::step_dist)
      .def_readonly("lambda_seq", &PicardTrace<double>::lambda_seq)
      .def_readonly("eta_seq", &PicardTrace<double>::eta_seq)
      .def_property_readonly("stop_reason",
                             [](const PicardTrace<double>& t) {
                               return stop_reason_name(t.stop_reason);
                             })
      .def_property_readonly("terminal",
                             [](const PicardTrace<double>& t) { return t.terminal(); });

  m.def(
      "picard_iterate",
      [](const ScalarSpace& space, const SelfMap<double>& map, double x0,
         const AuxiliaryMap<double>& aux, std::size_t max_iter, double tol) {
        return iterate(space, map, x0, max_iter, tol, aux);
      },
      py::arg("space"), py::arg("map"), py::arg("x0"), py::arg("aux"),
      py::arg("max_iter") = 100, py::arg("tol") = 0.0);
  m.def(
      "asymptotic_regularity",
      [](const PicardTrace<double>& trace, double tol, std::size_t window) {
        return asymptotic_regularity(trace, tol, window);
      },
      py::arg("trace"), py::arg("tol") = kDefaultTailTol, py::arg("window") = kDefaultTailWindow);
  m.def(
      "decrement_bound",
      [](const PicardTrace<double>& trace, const FFunction& f, double omega) {
        auto result = decrement_bound(trace, f, omega);
        return py::make_tuple(result.ok, result.margins);
      },
      py::arg("trace"), py::arg("f"), py::arg("omega"));
  m.def("fixed_points", [](const ScalarSpace& space, const SelfMap<double>& map) {
    auto set = fixed_points(space, map);
    return py::make_tuple(set.points, set.unique());
  });
  m.def(
      "orbit_continuity_diagnostic",
      [](const ScalarSpace& space, const SelfMap<double>& map, const PicardTrace<double>& trace,
         double tol, std::size_t window) {
        return orbit_continuity_diagnostic(space, map, trace, tol, window);
      },
      py::arg("space"), py::arg("map"), py::arg("trace"), py::arg("tol") = kDefaultTailTol,
      py::arg("window") = kDefaultTailWindow);

  py::class_<ExampleFixture>(m, "ExampleFixture")
      .def_readonly("id", &ExampleFixture::id)
      .def_readonly("space", &ExampleFixture::space)
      .def_readonly("map", &ExampleFixture::map)
      .def_readonly("aux", &ExampleFixture::aux)
      .def_property_readonly("kind",
                             [](const ExampleFixture& fx) {
                               return contraction_kind_name(fx.kind);
                             })
      .def_property_readonly("f",
                             [](const ExampleFixture& fx) -> py::object {
                               if (!fx.f) return py::none();
                               return py::cast(*fx.f);
                             })
      .def_readonly("expected_value", &ExampleFixture::expected_value)
      .def_readonly("note", &ExampleFixture::note);

  m.def("build_example", &build_example, py::arg("id"), py::arg("horizon") = 0,
        py::arg("step") = 0.0);
  m.def("example_ids", [] { return example_ids(); });
  m.def(
      "run_examples",
      [](const std::string& id, std::size_t horizon) {
        py::list out;
        for (const auto& row : run_all({}, id, horizon)) {
          py::dict item;
          item["id"] = row.id;
          item["check"] = row.check;
          item["computed"] = row.computed;
          item["expected"] = row.expected;
          item["status"] = row_status_name(row.status);
          item["detail"] = row.detail;
          out.append(std::move(item));
        }
        return out;
      },
      py::arg("id") = "", py::arg("horizon") = 0);

  py::class_<GammaSpec>(m, "GammaSpec")
      .def_readwrite("level", &GammaSpec::level)
      .def_readwrite("slope", &GammaSpec::slope)
      .def_readwrite("amplitude", &GammaSpec::amplitude)
      .def_readwrite("wavelength", &GammaSpec::wavelength)
      .def_readwrite("offset", &GammaSpec::offset)
      .def_readwrite("values", &GammaSpec::values)
      .def("set_flat",
           [](GammaSpec& g, double level) {
             g.kind = GammaSpec::Kind::flat;
             g.level = level;
           })
      .def("set_hills", [](GammaSpec& g, double amplitude, double wavelength, double offset) {
        g.kind = GammaSpec::Kind::hills;
        g.amplitude = amplitude;
        g.wavelength = wavelength;
        g.offset = offset;
      });

  py::class_<OdeCoefficients>(m, "OdeCoefficients")
      .def(py::init<>())
      .def_readwrite("a1", &OdeCoefficients::a1)
      .def_readwrite("a2", &OdeCoefficients::a2)
      .def_readwrite("b0", &OdeCoefficients::b0)
      .def_readwrite("b1", &OdeCoefficients::b1)
      .def_readwrite("b2", &OdeCoefficients::b2);

  py::class_<TerrainConfig>(m, "TerrainConfig")
      .def(py::init<>())
      .def_readwrite("xi_lo", &TerrainConfig::xi_lo)
      .def_readwrite("xi_hi", &TerrainConfig::xi_hi)
      .def_readwrite("step", &TerrainConfig::step)
      .def_readwrite("gamma", &TerrainConfig::gamma)
      .def_readwrite("speed", &TerrainConfig::speed)
      .def_readwrite("gain_k", &TerrainConfig::gain_k)
      .def_readwrite("scale_g", &TerrainConfig::scale_g)
      .def_readwrite("delta", &TerrainConfig::delta)
      .def_readwrite("sigma_max", &TerrainConfig::sigma_max)
      .def_readwrite("p", &TerrainConfig::p)
      .def_readwrite("shift_a", &TerrainConfig::shift_a)
      .def_readwrite("omega", &TerrainConfig::omega)
      .def_readwrite("ode", &TerrainConfig::ode)
      .def_readwrite("max_iterations", &TerrainConfig::max_iterations)
      .def_readwrite("tol", &TerrainConfig::tol)
      .def_readwrite("blowup", &TerrainConfig::blowup)
      .def_readwrite("kappa0", &TerrainConfig::kappa0)
      .def_property(
          "plant_mode",
          [](const TerrainConfig& cfg) { return plant_mode_name(cfg.plant_mode); },
          [](TerrainConfig& cfg, const std::string& mode) {
            if (mode == "linear") cfg.plant_mode = PlantMode::linear;
            else if (mode == "integral") cfg.plant_mode = PlantMode::integral;
            else if (mode == "ode") cfg.plant_mode = PlantMode::ode;
            else throw std::invalid_argument("unknown plant mode: " + mode);
          })
      .def("grid", &TerrainConfig::grid)
      .def("gamma_samples", &TerrainConfig::gamma_samples);

  py::class_<ControlIterate>(m, "ControlIterate")
      .def_readonly("n", &ControlIterate::n)
      .def_readonly("kappa", &ControlIterate::kappa)
      .def_readonly("sigma", &ControlIterate::sigma)
      .def_readonly("altitude", &ControlIterate::altitude)
      .def_readonly("delta", &ControlIterate::delta)
      .def_readonly("delta_max", &ControlIterate::delta_max)
      .def_readonly("tracking_error", &ControlIterate::tracking_error)
      .def_readonly("clamp_count", &ControlIterate::clamp_count)
      .def_readonly("f1_ok", &ControlIterate::f1_ok)
      .def_readonly("f2_ok", &ControlIterate::f2_ok)
      .def_readonly("f2_worst_ratio", &ControlIterate::f2_worst_ratio)
      .def_readonly("f2_worst_xi", &ControlIterate::f2_worst_xi)
      .def_readonly("ratio", &ControlIterate::ratio);

  py::class_<IlcReport>(m, "IlcReport")
      .def_readonly("iterates", &IlcReport::iterates)
      .def_readonly("converged", &IlcReport::converged)
      .def_readonly("diverged", &IlcReport::diverged)
      .def_readonly("diverged_at", &IlcReport::diverged_at)
      .def_readonly("final_error", &IlcReport::final_error)
      .def_readonly("fixed_point_residual", &IlcReport::fixed_point_residual)
      .def_property_readonly("first_f1_violation",
                             [](const IlcReport& r) { return opt_index(r.first_f1_violation); })
      .def_property_readonly("first_f2_violation",
                             [](const IlcReport& r) { return opt_index(r.first_f2_violation); })
      .def_property_readonly("first_ratio_saturation", [](const IlcReport& r) {
        return opt_index(r.first_ratio_saturation);
      });

  m.def("terrain_simulate", &simulate, py::arg("config"));
  m.def(
      "plant_apply",
      [](const TerrainConfig& cfg, const std::vector<double>& kappa) {
        auto out = plant_apply(cfg, kappa);
        return py::make_tuple(out.sigma, out.altitude, out.clamp_count);
      },
      py::arg("config"), py::arg("kappa"));
  m.def("ilc_step", &ilc_step, py::arg("config"), py::arg("kappa"));
  m.def("contraction_ratio", &contraction_ratio, py::arg("delta_max_n"),
        py::arg("delta_max_next"), py::arg("a"), py::arg("p"));

  m.def("run_cli", &run_cli, py::arg("args"),
        "run the command-line interface in-process and return its exit status");
}
