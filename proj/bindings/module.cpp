#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <optional>

#include <json.hpp>

#include "lipcert/report.hpp"

namespace py = pybind11;

using namespace lipcert;

namespace {

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2); }

}  // namespace

PYBIND11_MODULE(_lipcert, m) {
    m.doc() =
        "Certified Lipschitz constants of convex functions on balls, and "
        "sampled global-modulus estimation";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    py::class_<Ball>(m, "Ball")
        .def(py::init([](Vec center, double radius) {
                 return make_ball(std::move(center), radius);
             }),
             py::arg("center"), py::arg("radius"))
        .def_readonly("center", &Ball::center)
        .def_readonly("radius", &Ball::radius)
        .def_property_readonly("dim", &Ball::dim)
        .def("__repr__", [](const Ball& b) {
            return "Ball(" + to_json(b).dump() + ")";
        });

    py::enum_<CoverKind>(m, "CoverKind")
        .value("CROSS_POLYTOPE", CoverKind::CrossPolytope)
        .value("SIMPLEX", CoverKind::Simplex)
        .value("SHELL", CoverKind::Shell);

    py::class_<Cover>(m, "Cover")
        .def_readonly("kind", &Cover::kind)
        .def_readonly("points", &Cover::points)
        .def_readonly("target", &Cover::target)
        .def_readonly("outer_radius", &Cover::outer_radius)
        .def_readonly("slack", &Cover::slack)
        .def("__repr__", [](const Cover& c) {
            return "Cover(kind=" + to_string(c.kind) + ", points=" +
                   std::to_string(c.points.size()) + ")";
        });

    py::class_<ContainmentReport>(m, "ContainmentReport")
        .def_readonly("min_margin", &ContainmentReport::min_margin)
        .def_readonly("worst_direction", &ContainmentReport::worst_direction)
        .def_readonly("directions_tested",
                      &ContainmentReport::directions_tested)
        .def_readonly("seed", &ContainmentReport::seed);

    py::class_<FunctionSpec>(m, "FunctionSpec")
        .def_property_readonly(
            "kind", [](const FunctionSpec& s) { return to_string(s.kind); })
        .def_readonly("dim", &FunctionSpec::dim)
        .def_property_readonly("convex", &FunctionSpec::convex)
        .def_property_readonly("id", &FunctionSpec::id)
        .def("to_json", [](const FunctionSpec& s) { return dump_json(to_json(s)); })
        .def("__repr__", [](const FunctionSpec& s) {
            return "FunctionSpec(" + to_json(s).dump() + ")";
        });

    py::class_<EstimatorParams>(m, "EstimatorParams")
        .def(py::init([](double lambda, double alpha) {
                 EstimatorParams p{lambda, alpha};
                 validate_params(p);
                 return p;
             }),
             py::arg("lambda_"), py::arg("alpha"))
        .def_readonly("lambda_", &EstimatorParams::lambda)
        .def_readonly("alpha", &EstimatorParams::alpha);

    py::class_<LipschitzCertificate>(m, "LipschitzCertificate")
        .def_readonly("L", &LipschitzCertificate::constant)
        .def_readonly("ball", &LipschitzCertificate::ball)
        .def_readonly("cover_kind", &LipschitzCertificate::cover_kind)
        .def_readonly("M", &LipschitzCertificate::max_over_cover)
        .def_readonly("f_at_center", &LipschitzCertificate::value_at_center)
        .def_readonly("eval_count", &LipschitzCertificate::eval_count)
        .def_readonly("function_id", &LipschitzCertificate::function_id)
        .def_property_readonly(
            "lambda_",
            [](const LipschitzCertificate& c) { return c.params.lambda; })
        .def_property_readonly(
            "alpha",
            [](const LipschitzCertificate& c) { return c.params.alpha; })
        .def("to_json",
             [](const LipschitzCertificate& c) { return dump_json(to_json(c)); })
        .def("__repr__", [](const LipschitzCertificate& c) {
            return "LipschitzCertificate(L=" + nlohmann::json(c.constant).dump() +
                   ", cover=" + to_string(c.cover_kind) + ")";
        });

    py::class_<TuneResult>(m, "TuneResult")
        .def_readonly("best", &TuneResult::best)
        .def_readonly("grid", &TuneResult::grid);

    py::class_<RadialProfile>(m, "RadialProfile")
        .def_readonly("center", &RadialProfile::center)
        .def_readonly("radii", &RadialProfile::radii)
        .def_readonly("ratios", &RadialProfile::ratios)
        .def_readonly("signed_ratios", &RadialProfile::signed_ratios)
        .def_readonly("directions_used", &RadialProfile::directions_used)
        .def_readonly("seed", &RadialProfile::seed)
        .def("to_json",
             [](const RadialProfile& p) { return dump_json(to_json(p)); });

    py::class_<Verdict>(m, "Verdict")
        .def_property_readonly(
            "kind", [](const Verdict& v) { return to_string(v.kind); })
        .def_readonly("modulus_estimate", &Verdict::modulus_estimate)
        .def_readonly("reason", &Verdict::reason)
        .def("__repr__", [](const Verdict& v) {
            return "Verdict(" + to_json(v).dump() + ")";
        });

    py::class_<CertificateSequence>(m, "CertificateSequence")
        .def_readonly("alpha", &CertificateSequence::alpha)
        .def_readonly("delta", &CertificateSequence::delta)
        .def_readonly("certificates", &CertificateSequence::certificates)
        .def_readonly("reference_bound", &CertificateSequence::reference_bound)
        .def_readonly("ell_reference", &CertificateSequence::ell_reference);

    py::class_<RatioReport>(m, "RatioReport")
        .def_readonly("max_ratio", &RatioReport::max_ratio)
        .def_readonly("witness_x", &RatioReport::witness_x)
        .def_readonly("witness_y", &RatioReport::witness_y)
        .def_readonly("pairs_tested", &RatioReport::pairs_tested)
        .def_readonly("seed", &RatioReport::seed);

    py::class_<ConvexityReport>(m, "ConvexityReport")
        .def_readonly("ok", &ConvexityReport::ok)
        .def_readonly("witness_x", &ConvexityReport::witness_x)
        .def_readonly("witness_y", &ConvexityReport::witness_y)
        .def_readonly("lambda_", &ConvexityReport::lambda)
        .def_readonly("violation", &ConvexityReport::violation)
        .def_readonly("triples_tested", &ConvexityReport::triples_tested)
        .def_readonly("seed", &ConvexityReport::seed);

    py::class_<SoundnessReport>(m, "SoundnessReport")
        .def_readonly("pass_", &SoundnessReport::pass)
        .def_readonly("certificate_constant",
                      &SoundnessReport::certificate_constant)
        .def_readonly("ratios", &SoundnessReport::ratios);

    py::class_<ConstancyReport>(m, "ConstancyReport")
        .def_property_readonly(
            "verdict",
            [](const ConstancyReport& r) { return to_string(r.verdict); })
        .def_readonly("observed_max", &ConstancyReport::observed_max)
        .def_readonly("observed_min", &ConstancyReport::observed_min)
        .def_readonly("per_radius_max", &ConstancyReport::per_radius_max)
        .def_readonly("radii", &ConstancyReport::radii)
        .def_readonly("directions", &ConstancyReport::directions)
        .def_readonly("seed", &ConstancyReport::seed);

    // function zoo
    m.def("parse_function_spec", &parse_function_spec, py::arg("document"),
          "Parse a JSON function-spec document");
    m.def("evaluate", &evaluate, py::arg("spec"), py::arg("x"));
    m.def("gradient", &gradient, py::arg("spec"), py::arg("x"));
    m.def(
        "analytic_global_modulus",
        [](const FunctionSpec& spec) -> py::object {
            const auto known = analytic_global_modulus(spec);
            if (!known) return py::none();
            if (known->infinite) {
                return py::float_(std::numeric_limits<double>::infinity());
            }
            return py::float_(known->value);
        },
        py::arg("spec"),
        "Known global modulus: a float, inf, or None when unknown");
    m.def("direction_hints", &direction_hints, py::arg("spec"));
    py::class_<AnalyticInfo>(m, "AnalyticInfo")
        .def_property_readonly(
            "global_modulus",
            [](const AnalyticInfo& info) -> py::object {
                if (!info.global_modulus) return py::none();
                if (info.global_modulus->infinite) {
                    return py::float_(
                        std::numeric_limits<double>::infinity());
                }
                return py::float_(info.global_modulus->value);
            })
        .def_readonly("gradient_available", &AnalyticInfo::gradient_available)
        .def_readonly("direction_hints", &AnalyticInfo::direction_hints);
    m.def("analytic_info", &analytic_info, py::arg("spec"));

    // covers
    m.def("build_cross_polytope_cover", &build_cross_polytope_cover,
          py::arg("ball_to_cover"));
    m.def("build_simplex_cover", &build_simplex_cover, py::arg("ball_to_cover"));
    m.def("build_shell_cover", &build_shell_cover, py::arg("ball_to_cover"),
          py::arg("slack"));
    m.def("support_function", &support_function, py::arg("points"),
          py::arg("base"), py::arg("direction"));
    m.def("cover_containment_check", &cover_containment_check, py::arg("cover"),
          py::arg("num_directions"), py::arg("seed"));

    // estimator (specs are wrapped in the zoo adapter)
    m.def(
        "ball_lipschitz_constant",
        [](const FunctionSpec& spec, const Ball& ball, double lambda,
           double alpha, CoverKind cover) {
            return ball_lipschitz_constant(ZooFunction(spec), ball,
                                           EstimatorParams{lambda, alpha},
                                           cover);
        },
        py::arg("spec"), py::arg("ball"), py::arg("lambda_"), py::arg("alpha"),
        py::arg("cover") = CoverKind::CrossPolytope);
    m.def(
        "tune_parameters",
        [](const FunctionSpec& spec, const Ball& ball,
           const std::vector<double>& alphas, double delta, CoverKind cover) {
            return tune_parameters(ZooFunction(spec), ball, alphas, delta,
                                   cover);
        },
        py::arg("spec"), py::arg("ball"),
        py::arg("alphas") = kDefaultAlphaGrid,
        py::arg("delta") = kDefaultTuneDelta,
        py::arg("cover") = CoverKind::CrossPolytope);
    m.def(
        "radial_growth_profile",
        [](const FunctionSpec& spec, const std::vector<double>& radii,
           int num_random_directions, std::uint64_t seed) {
            const ZooFunction f(spec);
            return radial_growth_profile(f, radii, num_random_directions,
                                         f.direction_hints(), seed);
        },
        py::arg("spec"), py::arg("radii"),
        py::arg("num_random_directions") = 512, py::arg("seed") = 0,
        "Profile |f(Ru)|/R with the zoo's direction hints included");
    m.def("classify_global_lipschitz", &classify_global_lipschitz,
          py::arg("profile"),
          py::arg("growth_factor_threshold") = kDefaultGrowthFactorThreshold,
          py::arg("plateau_rel_tol") = kDefaultPlateauRelTol);
    m.def(
        "certificate_sequence",
        [](const FunctionSpec& spec, const Vec& center, double alpha,
           double delta, const std::vector<double>& radii,
           std::optional<double> ell_reference) {
            return certificate_sequence(ZooFunction(spec), center, alpha,
                                        delta, radii, ell_reference);
        },
        py::arg("spec"), py::arg("center"), py::arg("alpha") = 10.0,
        py::arg("delta") = kDefaultTuneDelta, py::arg("radii"),
        py::arg("ell_reference") = py::none());
    m.def(
        "subgradient_lower_bound",
        [](const FunctionSpec& spec, const std::vector<Vec>& samples) {
            return subgradient_lower_bound(ZooFunction(spec), samples);
        },
        py::arg("spec"), py::arg("sample_points"));

    // verification
    m.def(
        "empirical_lipschitz_ratio",
        [](const FunctionSpec& spec, const Ball& ball, std::int64_t num_pairs,
           std::uint64_t seed) {
            return empirical_lipschitz_ratio(ZooFunction(spec), ball,
                                             num_pairs, seed);
        },
        py::arg("spec"), py::arg("ball"), py::arg("num_pairs") = 10000,
        py::arg("seed") = 0);
    m.def(
        "convexity_check",
        [](const FunctionSpec& spec, const Ball& region,
           std::int64_t num_triples, std::uint64_t seed) {
            return convexity_check(ZooFunction(spec), region, num_triples,
                                   seed);
        },
        py::arg("spec"), py::arg("region"), py::arg("num_triples") = 10000,
        py::arg("seed") = 0);
    m.def(
        "certificate_soundness_suite",
        [](const FunctionSpec& spec, const LipschitzCertificate& cert,
           std::int64_t num_pairs, std::uint64_t seed) {
            return certificate_soundness_suite(ZooFunction(spec), cert,
                                               num_pairs, seed);
        },
        py::arg("spec"), py::arg("certificate"), py::arg("num_pairs") = 10000,
        py::arg("seed") = 0);
    m.def(
        "corollary_constancy_check",
        [](const FunctionSpec& spec, const std::vector<double>& probe_radii,
           int directions, std::uint64_t seed) {
            return corollary_constancy_check(ZooFunction(spec), probe_radii,
                                             directions, seed);
        },
        py::arg("spec"), py::arg("probe_radii"), py::arg("directions") = 64,
        py::arg("seed") = 0);

    m.attr("__version__") = kToolVersion;
}
