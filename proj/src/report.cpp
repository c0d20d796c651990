#include "lipcert/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <utility>

namespace lipcert {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        throw ValidationError(path + ": expected an object");
    }
}

void check_allowed_keys(const json& obj, const std::set<std::string>& allowed,
                        const std::string& path) {
    for (const auto& item : obj.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw ValidationError(path + item.key() + ": unknown field");
        }
    }
}

const json& require_field(const json& obj, const std::string& key,
                          const std::string& path) {
    if (!obj.contains(key)) {
        throw ValidationError(path + key + ": missing required field");
    }
    return obj.at(key);
}

double read_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ValidationError(path + ": expected a number");
    }
    return j.get<double>();
}

std::vector<double> read_number_array(const json& j, const std::string& path) {
    if (!j.is_array()) {
        throw ValidationError(path + ": expected an array of numbers");
    }
    std::vector<double> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v.push_back(read_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return v;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

json to_json(const Ball& ball) {
    return json{{"center", ball.center}, {"radius", ball.radius}};
}

json to_json(const Cover& cover) {
    json doc{{"kind", to_string(cover.kind)},
             {"target", to_json(cover.target)},
             {"outer_radius", cover.outer_radius},
             {"point_count", cover.points.size()},
             {"points", cover.points}};
    if (cover.kind == CoverKind::Shell) doc["slack"] = cover.slack;
    return doc;
}

json to_json(const ContainmentReport& report) {
    return json{{"min_margin", report.min_margin},
                {"worst_direction", report.worst_direction},
                {"directions_tested", report.directions_tested},
                {"seed", report.seed}};
}

json to_json(const LipschitzCertificate& cert) {
    return json{{"L", cert.constant},
                {"ball", to_json(cert.ball)},
                {"lambda", cert.params.lambda},
                {"alpha", cert.params.alpha},
                {"cover_kind", to_string(cert.cover_kind)},
                {"M", cert.max_over_cover},
                {"f_at_center", cert.value_at_center},
                {"eval_count", cert.eval_count},
                {"function_id", cert.function_id}};
}

json to_json(const RadialProfile& profile) {
    return json{{"center", profile.center},
                {"radii", profile.radii},
                {"ratios", profile.ratios},
                {"signed_ratios", profile.signed_ratios},
                {"directions_used", profile.directions_used},
                {"seed", profile.seed}};
}

json to_json(const Verdict& verdict) {
    json doc{{"verdict", to_string(verdict.kind)}};
    if (verdict.kind == Verdict::Kind::GloballyLipschitz) {
        doc["modulus_estimate"] = verdict.modulus_estimate;
    }
    if (verdict.kind == Verdict::Kind::Inconclusive) {
        doc["reason"] = verdict.reason;
    }
    return doc;
}

json to_json(const RatioReport& report) {
    return json{{"max_ratio", report.max_ratio},
                {"witness_x", report.witness_x},
                {"witness_y", report.witness_y},
                {"pairs_tested", report.pairs_tested},
                {"seed", report.seed}};
}

json to_json(const ConvexityReport& report) {
    json doc{{"ok", report.ok},
             {"triples_tested", report.triples_tested},
             {"seed", report.seed}};
    if (!report.ok) {
        doc["witness_x"] = report.witness_x;
        doc["witness_y"] = report.witness_y;
        doc["lambda"] = report.lambda;
        doc["violation"] = report.violation;
    }
    return doc;
}

json to_json(const SoundnessReport& report) {
    return json{{"pass", report.pass},
                {"certificate_constant", report.certificate_constant},
                {"ratios", to_json(report.ratios)}};
}

json to_json(const ConstancyReport& report) {
    return json{{"verdict", to_string(report.verdict)},
                {"observed_max", report.observed_max},
                {"observed_min", report.observed_min},
                {"per_radius_max", report.per_radius_max},
                {"radii", report.radii},
                {"directions", report.directions},
                {"seed", report.seed}};
}

json to_json(const CertificateSequence& seq) {
    json certs = json::array();
    for (const LipschitzCertificate& cert : seq.certificates) {
        certs.push_back(to_json(cert));
    }
    json doc{{"alpha", seq.alpha},
             {"delta", seq.delta},
             {"certificates", std::move(certs)}};
    doc["reference_bound"] =
        seq.reference_bound ? json(*seq.reference_bound) : json(nullptr);
    doc["ell_reference"] =
        seq.ell_reference ? json(*seq.ell_reference) : json(nullptr);
    return doc;
}

Ball ball_from_json(const json& doc) {
    expect_object(doc, "ball");
    check_allowed_keys(doc, {"center", "radius"}, "ball.");
    Vec center = read_number_array(require_field(doc, "center", "ball."),
                                   "ball.center");
    const double radius =
        read_number(require_field(doc, "radius", "ball."), "ball.radius");
    return make_ball(std::move(center), radius);
}

LipschitzCertificate certificate_from_json(const json& doc) {
    expect_object(doc, "certificate");
    check_allowed_keys(doc,
                       {"L", "ball", "lambda", "alpha", "cover_kind", "M",
                        "f_at_center", "eval_count", "function_id"},
                       "certificate.");
    LipschitzCertificate cert;
    cert.constant =
        read_number(require_field(doc, "L", "certificate."), "certificate.L");
    cert.ball = ball_from_json(require_field(doc, "ball", "certificate."));
    cert.params.lambda = read_number(
        require_field(doc, "lambda", "certificate."), "certificate.lambda");
    cert.params.alpha = read_number(
        require_field(doc, "alpha", "certificate."), "certificate.alpha");
    cert.cover_kind = cover_kind_from_string(
        require_field(doc, "cover_kind", "certificate.").get<std::string>());
    cert.max_over_cover =
        read_number(require_field(doc, "M", "certificate."), "certificate.M");
    cert.value_at_center =
        read_number(require_field(doc, "f_at_center", "certificate."),
                    "certificate.f_at_center");
    const json& evals = require_field(doc, "eval_count", "certificate.");
    if (!evals.is_number_integer() || evals.get<std::int64_t>() < 1) {
        throw ValidationError("certificate.eval_count: must be a positive "
                              "integer");
    }
    cert.eval_count = static_cast<int>(evals.get<std::int64_t>());
    const json& id = require_field(doc, "function_id", "certificate.");
    if (!id.is_string()) {
        throw ValidationError("certificate.function_id: expected a string");
    }
    cert.function_id = id.get<std::string>();
    validate_params(cert.params);
    // The stored constant must reproduce from its own fields.
    const double recomputed =
        (cert.max_over_cover - cert.value_at_center) /
        (cert.ball.radius * cert.params.lambda * (cert.params.alpha - 1.0));
    if (!(std::abs(recomputed - cert.constant) <=
          4.0 * std::numeric_limits<double>::epsilon() *
              std::max(1.0, std::abs(cert.constant)))) {
        throw ValidationError(
            "certificate.L: inconsistent with M, f_at_center, ball and "
            "params");
    }
    return cert;
}

RadialProfile profile_from_json(const json& doc) {
    expect_object(doc, "profile");
    check_allowed_keys(doc,
                       {"center", "radii", "ratios", "signed_ratios",
                        "directions_used", "seed"},
                       "profile.");
    RadialProfile profile;
    profile.center = read_number_array(
        require_field(doc, "center", "profile."), "profile.center");
    profile.radii = read_number_array(require_field(doc, "radii", "profile."),
                                      "profile.radii");
    profile.ratios = read_number_array(
        require_field(doc, "ratios", "profile."), "profile.ratios");
    profile.signed_ratios =
        read_number_array(require_field(doc, "signed_ratios", "profile."),
                          "profile.signed_ratios");
    const json& used = require_field(doc, "directions_used", "profile.");
    if (!used.is_number_integer()) {
        throw ValidationError("profile.directions_used: expected an integer");
    }
    profile.directions_used = static_cast<int>(used.get<std::int64_t>());
    const json& seed = require_field(doc, "seed", "profile.");
    if (!seed.is_number_integer()) {
        throw ValidationError("profile.seed: expected an integer");
    }
    profile.seed = seed.get<std::uint64_t>();
    if (profile.ratios.size() != profile.radii.size() ||
        profile.signed_ratios.size() != profile.radii.size()) {
        throw ValidationError(
            "profile: radii, ratios and signed_ratios must have equal length");
    }
    return profile;
}

json to_json(const RunReport& report) {
    return json{{"schema_version", kSchemaVersion},
                {"tool_version", kToolVersion},
                {"command", report.command},
                {"timing_ms", report.timing_ms},
                {"inputs", report.inputs},
                {"outputs", report.outputs}};
}

RunReport run_report_from_json(const json& doc) {
    expect_object(doc, "report");
    check_allowed_keys(doc,
                       {"schema_version", "tool_version", "command",
                        "timing_ms", "inputs", "outputs"},
                       "report.");
    const json& version = require_field(doc, "schema_version", "report.");
    if (!version.is_number_integer() ||
        version.get<std::int64_t>() != kSchemaVersion) {
        throw ValidationError("report.schema_version: unsupported value " +
                              version.dump());
    }
    RunReport report;
    const json& command = require_field(doc, "command", "report.");
    if (!command.is_string()) {
        throw ValidationError("report.command: expected a string");
    }
    report.command = command.get<std::string>();
    report.inputs = require_field(doc, "inputs", "report.");
    report.outputs = require_field(doc, "outputs", "report.");
    if (doc.contains("timing_ms")) {
        report.timing_ms = read_number(doc.at("timing_ms"), "report.timing_ms");
    }
    return report;
}

RadialProfile profile_from_file_json(const json& doc) {
    if (doc.is_object() && doc.contains("schema_version")) {
        const RunReport report = run_report_from_json(doc);
        if (report.command == "modulus") {
            expect_object(report.outputs, "report.outputs");
            check_allowed_keys(report.outputs,
                               {"profile", "verdict", "analytic"},
                               "report.outputs.");
            return profile_from_json(
                require_field(report.outputs, "profile", "report.outputs."));
        }
        if (report.command == "classify") {
            expect_object(report.inputs, "report.inputs");
            check_allowed_keys(report.inputs,
                               {"profile", "growth_factor_threshold",
                                "plateau_rel_tol"},
                               "report.inputs.");
            return profile_from_json(
                require_field(report.inputs, "profile", "report.inputs."));
        }
        throw ValidationError("report.command: no radial profile in a '" +
                              report.command + "' report");
    }
    return profile_from_json(doc);
}

LipschitzCertificate certificate_from_file_json(const json& doc) {
    if (doc.is_object() && doc.contains("schema_version")) {
        const RunReport report = run_report_from_json(doc);
        expect_object(report.outputs, "report.outputs");
        if (report.command == "ball") {
            check_allowed_keys(report.outputs, {"certificate", "cover"},
                               "report.outputs.");
            return certificate_from_json(require_field(
                report.outputs, "certificate", "report.outputs."));
        }
        if (report.command == "tune") {
            check_allowed_keys(report.outputs, {"best", "grid"},
                               "report.outputs.");
            return certificate_from_json(
                require_field(report.outputs, "best", "report.outputs."));
        }
        throw ValidationError("report.command: no certificate in a '" +
                              report.command + "' report");
    }
    return certificate_from_json(doc);
}

RunReport run_ball(const BallRunArgs& args) {
    const ZooFunction f(args.fn);
    const Ball ball = make_ball(args.center, args.radius);
    const EstimatorParams params{args.lambda, args.alpha};

    RunReport report;
    report.command = "ball";
    report.inputs = json{{"function", to_json(args.fn)},
                         {"ball", to_json(ball)},
                         {"lambda", args.lambda},
                         {"alpha", args.alpha},
                         {"cover", to_string(args.cover)}};
    const Stopwatch timer;
    const LipschitzCertificate cert =
        ball_lipschitz_constant(f, ball, params, args.cover);
    const Cover cover = build_certificate_cover(ball, args.alpha, args.cover);
    report.timing_ms = timer.elapsed_ms();
    report.outputs = json{{"certificate", to_json(cert)},
                          {"cover", to_json(cover)}};
    return report;
}

RunReport run_tune(const TuneRunArgs& args) {
    const ZooFunction f(args.fn);
    const Ball ball = make_ball(args.center, args.radius);

    RunReport report;
    report.command = "tune";
    report.inputs = json{{"function", to_json(args.fn)},
                         {"ball", to_json(ball)},
                         {"alpha_grid", args.alphas},
                         {"delta", args.delta},
                         {"cover", to_string(args.cover)}};
    const Stopwatch timer;
    const TuneResult result =
        tune_parameters(f, ball, args.alphas, args.delta, args.cover);
    report.timing_ms = timer.elapsed_ms();
    json grid = json::array();
    for (const LipschitzCertificate& cert : result.grid) {
        grid.push_back(to_json(cert));
    }
    report.outputs = json{{"best", to_json(result.best)},
                          {"grid", std::move(grid)}};
    return report;
}

RunReport run_modulus(const ModulusRunArgs& args) {
    const ZooFunction f(args.fn);
    const std::vector<Vec> hints = direction_hints(args.fn);

    RunReport report;
    report.command = "modulus";
    report.inputs = json{{"function", to_json(args.fn)},
                         {"radii", args.radii},
                         {"num_random_directions", args.num_random_directions},
                         {"hints", hints},
                         {"seed", args.seed},
                         {"growth_factor_threshold",
                          args.growth_factor_threshold},
                         {"plateau_rel_tol", args.plateau_rel_tol}};
    const Stopwatch timer;
    const RadialProfile profile = radial_growth_profile(
        f, args.radii, args.num_random_directions, hints, args.seed);
    const Verdict verdict = classify_global_lipschitz(
        profile, args.growth_factor_threshold, args.plateau_rel_tol);
    report.timing_ms = timer.elapsed_ms();

    json analytic(nullptr);
    if (const auto known = analytic_global_modulus(args.fn)) {
        analytic = json::object();
        analytic["modulus"] = known->infinite ? json("infinite")
                                              : json(known->value);
        if (!known->infinite &&
            verdict.kind == Verdict::Kind::GloballyLipschitz &&
            known->value > 0.0) {
            analytic["relative_error"] =
                std::abs(verdict.modulus_estimate - known->value) /
                known->value;
        }
    }
    report.outputs = json{{"profile", to_json(profile)},
                          {"verdict", to_json(verdict)},
                          {"analytic", std::move(analytic)}};
    return report;
}

RunReport run_classify(const ClassifyRunArgs& args) {
    RunReport report;
    report.command = "classify";
    report.inputs = json{{"profile", to_json(args.profile)},
                         {"growth_factor_threshold",
                          args.growth_factor_threshold},
                         {"plateau_rel_tol", args.plateau_rel_tol}};
    const Stopwatch timer;
    const Verdict verdict = classify_global_lipschitz(
        args.profile, args.growth_factor_threshold, args.plateau_rel_tol);
    report.timing_ms = timer.elapsed_ms();
    report.outputs = json{{"verdict", to_json(verdict)}};
    return report;
}

RunReport run_verify(const VerifyRunArgs& args) {
    const ZooFunction f(args.fn);
    if (args.certificate.function_id != f.id()) {
        throw ValidationError("certificate.function_id: '" +
                              args.certificate.function_id +
                              "' does not match the supplied function '" +
                              f.id() + "'");
    }
    RunReport report;
    report.command = "verify";
    report.inputs = json{{"function", to_json(args.fn)},
                         {"certificate", to_json(args.certificate)},
                         {"num_pairs", args.num_pairs},
                         {"seed", args.seed}};
    const Stopwatch timer;
    const SoundnessReport result =
        certificate_soundness_suite(f, args.certificate, args.num_pairs,
                                    args.seed);
    report.timing_ms = timer.elapsed_ms();
    report.outputs = json{{"soundness", to_json(result)}};
    return report;
}

RunReport run_certseq(const CertseqRunArgs& args) {
    const ZooFunction f(args.fn);
    std::optional<double> ell = args.ell_override;
    if (!ell) {
        if (const auto known = analytic_global_modulus(args.fn);
            known && !known->infinite) {
            ell = known->value;
        }
    }
    RunReport report;
    report.command = "certseq";
    report.inputs = json{{"function", to_json(args.fn)},
                         {"center", args.center},
                         {"alpha", args.alpha},
                         {"delta", args.delta},
                         {"radii", args.radii},
                         {"shell_slack", kCertificateShellSlack},
                         {"ell_override", args.ell_override
                                              ? json(*args.ell_override)
                                              : json(nullptr)}};
    const Stopwatch timer;
    const CertificateSequence seq = certificate_sequence(
        f, args.center, args.alpha, args.delta, args.radii, ell);
    report.timing_ms = timer.elapsed_ms();
    report.outputs = json{{"sequence", to_json(seq)}};
    return report;
}

RunReport run_zoo() {
    RunReport report;
    report.command = "zoo";
    report.inputs = json::object();
    json entries = json::array();
    for (const ZooEntry& entry : zoo_catalog()) {
        entries.push_back(json{{"kind", entry.kind},
                               {"parameters", entry.parameters},
                               {"modulus", entry.modulus},
                               {"convex", entry.convex}});
    }
    report.outputs = json{{"functions", std::move(entries)}};
    return report;
}

std::vector<double> decade_radii(double rmin, double rmax) {
    if (!(rmin > 0.0) || !std::isfinite(rmin)) {
        throw ValidationError("rmin must be positive and finite");
    }
    if (!(rmax >= rmin) || !std::isfinite(rmax)) {
        throw ValidationError("rmax must be >= rmin and finite");
    }
    std::vector<double> radii;
    for (double r = rmin; r <= rmax * (1.0 + 1e-9); r *= 10.0) {
        radii.push_back(r);
    }
    return radii;
}

namespace {

std::string csv_number(const json& value) {
    if (value.is_null()) return "";
    return value.dump();
}

}  // namespace

std::string report_csv(const RunReport& report) {
    if (report.command == "modulus" || report.command == "classify") {
        const json& profile = report.command == "modulus"
                                  ? report.outputs.at("profile")
                                  : report.inputs.at("profile");
        std::string csv = "radius,ratio,signed_ratio\n";
        const json& radii = profile.at("radii");
        for (std::size_t i = 0; i < radii.size(); ++i) {
            csv += csv_number(radii[i]) + "," +
                   csv_number(profile.at("ratios")[i]) + "," +
                   csv_number(profile.at("signed_ratios")[i]) + "\n";
        }
        return csv;
    }
    if (report.command == "certseq") {
        const json& seq = report.outputs.at("sequence");
        std::string csv = "r,L,reference_bound\n";
        for (const json& cert : seq.at("certificates")) {
            csv += csv_number(cert.at("ball").at("radius")) + "," +
                   csv_number(cert.at("L")) + "," +
                   csv_number(seq.at("reference_bound")) + "\n";
        }
        return csv;
    }
    throw ValidationError("csv format is not available for command '" +
                          report.command + "'");
}

}  // namespace lipcert
