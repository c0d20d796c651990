// lipcert: certified Lipschitz constants of convex functions on balls, and
// sampled global-modulus estimation/classification.
//
// Exit codes: 0 ok, 1 runtime error, 2 validation error, 3 soundness
// violation (verify only).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lipcert/report.hpp"

namespace {

using lipcert::RunReport;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSoundness = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw lipcert::ValidationError("cannot open input file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw lipcert::ParseError("'" + path + "': " + e.what());
    }
}

lipcert::FunctionSpec load_function(const std::string& path) {
    return lipcert::function_spec_from_json(parse_json_file(path));
}

lipcert::Vec parse_vector_flag(const std::string& text,
                               const std::string& flag) {
    lipcert::Vec values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw lipcert::ValidationError(flag + ": cannot parse '" + item +
                                           "' as a number");
        }
    }
    if (values.empty()) {
        throw lipcert::ValidationError(flag + ": expected a comma-separated "
                                       "list of numbers");
    }
    return values;
}

void emit(const RunReport& report, const std::string& format,
          const std::string& out_path) {
    std::string payload;
    if (format == "json") {
        payload = lipcert::to_json(report).dump(2) + "\n";
    } else if (format == "csv") {
        payload = lipcert::report_csv(report);
    } else {
        throw lipcert::ValidationError("format: expected 'json' or 'csv'");
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw lipcert::Error("cannot open output file '" + out_path + "'");
        }
        out << payload;
    }
}

struct CommonFlags {
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--out", flags.out, "Write the report to a file");
    cmd->add_option("--format", flags.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified Lipschitz constants of convex functions"};
    app.require_subcommand(1);

    // ball
    std::string ball_fn, ball_center, ball_cover = "cross";
    double ball_radius = 1.0, ball_alpha = 2.0, ball_lambda = 0.5;
    CommonFlags ball_common;
    CLI::App* ball = app.add_subcommand(
        "ball", "Certified Lipschitz constant on a ball");
    ball->add_option("--fn", ball_fn, "Function spec file")->required();
    ball->add_option("--center", ball_center, "Ball center, e.g. 0,0")
        ->required();
    ball->add_option("--radius", ball_radius, "Ball radius")->required();
    ball->add_option("--alpha", ball_alpha, "Inflation parameter alpha")
        ->required();
    ball->add_option("--lambda", ball_lambda, "Interpolation parameter lambda")
        ->required();
    ball->add_option("--cover", ball_cover, "Cover kind: cross|simplex|shell");
    add_common(ball, ball_common);

    // tune
    std::string tune_fn, tune_center, tune_cover = "cross";
    std::string tune_alphas = "2,5,10,50,100";
    double tune_radius = 1.0, tune_delta = lipcert::kDefaultTuneDelta;
    CommonFlags tune_common;
    CLI::App* tune = app.add_subcommand(
        "tune", "Grid-search alpha with lambda(alpha) = (1-delta)a/(a+1)");
    tune->add_option("--fn", tune_fn, "Function spec file")->required();
    tune->add_option("--center", tune_center, "Ball center")->required();
    tune->add_option("--radius", tune_radius, "Ball radius")->required();
    tune->add_option("--alphas", tune_alphas, "Comma-separated alpha grid");
    tune->add_option("--delta", tune_delta, "Feasibility margin delta");
    tune->add_option("--cover", tune_cover, "Cover kind: cross|simplex|shell");
    add_common(tune, tune_common);

    // modulus
    std::string mod_fn;
    double mod_rmin = 10.0, mod_rmax = 1e6;
    int mod_dirs = 512;
    std::uint64_t mod_seed = 0;
    double mod_growth = lipcert::kDefaultGrowthFactorThreshold;
    double mod_plateau = lipcert::kDefaultPlateauRelTol;
    CommonFlags mod_common;
    CLI::App* modulus = app.add_subcommand(
        "modulus", "Radial growth profile and global-Lipschitz verdict");
    modulus->add_option("--fn", mod_fn, "Function spec file")->required();
    modulus->add_option("--rmin", mod_rmin, "Smallest profile radius");
    modulus->add_option("--rmax", mod_rmax, "Largest profile radius");
    modulus->add_option("--dirs", mod_dirs, "Random directions per radius");
    modulus->add_option("--seed", mod_seed, "Sampling seed");
    modulus->add_option("--growth-threshold", mod_growth,
                        "Last/first ratio treated as divergence");
    modulus->add_option("--plateau-tol", mod_plateau,
                        "Tail variation per decade treated as a plateau");
    add_common(modulus, mod_common);

    // classify
    std::string classify_profile;
    double classify_growth = lipcert::kDefaultGrowthFactorThreshold;
    double classify_plateau = lipcert::kDefaultPlateauRelTol;
    CommonFlags classify_common;
    CLI::App* classify = app.add_subcommand(
        "classify", "Classify a stored radial profile");
    classify->add_option("--profile", classify_profile,
                         "Stored modulus report or profile file")
        ->required();
    classify->add_option("--growth-threshold", classify_growth,
                         "Last/first ratio treated as divergence");
    classify->add_option("--plateau-tol", classify_plateau,
                         "Tail variation per decade treated as a plateau");
    add_common(classify, classify_common);

    // verify
    std::string verify_fn, verify_cert;
    std::int64_t verify_pairs = 10000;
    std::uint64_t verify_seed = 0;
    CommonFlags verify_common;
    CLI::App* verify = app.add_subcommand(
        "verify", "Soundness-check a stored certificate by pair sampling");
    verify->add_option("--fn", verify_fn, "Function spec file")->required();
    verify->add_option("--cert", verify_cert,
                       "Stored ball/tune report or certificate file")
        ->required();
    verify->add_option("--pairs", verify_pairs, "Sampled pairs");
    verify->add_option("--seed", verify_seed, "Sampling seed");
    add_common(verify, verify_common);

    // certseq
    std::string seq_fn, seq_center, seq_radii = "10,100,1000,10000";
    double seq_alpha = 10.0, seq_delta = lipcert::kDefaultTuneDelta;
    double seq_ell = -1.0;
    bool seq_ell_set = false;
    CommonFlags seq_common;
    CLI::App* certseq = app.add_subcommand(
        "certseq", "Certificate sequence L(r) over shell covers (slack 1)");
    certseq->add_option("--fn", seq_fn, "Function spec file")->required();
    certseq->add_option("--center", seq_center, "Sequence center x0")
        ->required();
    certseq->add_option("--alpha", seq_alpha, "Inflation parameter alpha");
    certseq->add_option("--delta", seq_delta, "Feasibility margin delta");
    certseq->add_option("--radii", seq_radii, "Comma-separated radii");
    certseq
        ->add_option_function<double>(
            "--ell",
            [&](const double& v) {
                seq_ell = v;
                seq_ell_set = true;
            },
            "Reference modulus for the asymptotic bound")
        ->expected(1);
    add_common(certseq, seq_common);

    // zoo
    CommonFlags zoo_common;
    CLI::App* zoo = app.add_subcommand(
        "zoo", "List catalog functions and their analytic moduli");
    add_common(zoo, zoo_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*ball) {
            lipcert::BallRunArgs args;
            args.fn = load_function(ball_fn);
            args.center = parse_vector_flag(ball_center, "--center");
            args.radius = ball_radius;
            args.alpha = ball_alpha;
            args.lambda = ball_lambda;
            args.cover = lipcert::cover_kind_from_string(ball_cover);
            emit(lipcert::run_ball(args), ball_common.format, ball_common.out);
        } else if (*tune) {
            lipcert::TuneRunArgs args;
            args.fn = load_function(tune_fn);
            args.center = parse_vector_flag(tune_center, "--center");
            args.radius = tune_radius;
            args.alphas = parse_vector_flag(tune_alphas, "--alphas");
            args.delta = tune_delta;
            args.cover = lipcert::cover_kind_from_string(tune_cover);
            emit(lipcert::run_tune(args), tune_common.format, tune_common.out);
        } else if (*modulus) {
            lipcert::ModulusRunArgs args;
            args.fn = load_function(mod_fn);
            args.radii = lipcert::decade_radii(mod_rmin, mod_rmax);
            args.num_random_directions = mod_dirs;
            args.seed = mod_seed;
            args.growth_factor_threshold = mod_growth;
            args.plateau_rel_tol = mod_plateau;
            emit(lipcert::run_modulus(args), mod_common.format, mod_common.out);
        } else if (*classify) {
            lipcert::ClassifyRunArgs args;
            args.profile = lipcert::profile_from_file_json(
                parse_json_file(classify_profile));
            args.growth_factor_threshold = classify_growth;
            args.plateau_rel_tol = classify_plateau;
            emit(lipcert::run_classify(args), classify_common.format,
                 classify_common.out);
        } else if (*verify) {
            lipcert::VerifyRunArgs args;
            args.fn = load_function(verify_fn);
            args.certificate = lipcert::certificate_from_file_json(
                parse_json_file(verify_cert));
            args.num_pairs = verify_pairs;
            args.seed = verify_seed;
            const RunReport report = lipcert::run_verify(args);
            emit(report, verify_common.format, verify_common.out);
            if (!report.outputs.at("soundness").at("pass").get<bool>()) {
                return kExitSoundness;
            }
        } else if (*certseq) {
            lipcert::CertseqRunArgs args;
            args.fn = load_function(seq_fn);
            args.center = parse_vector_flag(seq_center, "--center");
            args.alpha = seq_alpha;
            args.delta = seq_delta;
            args.radii = parse_vector_flag(seq_radii, "--radii");
            if (seq_ell_set) args.ell_override = seq_ell;
            emit(lipcert::run_certseq(args), seq_common.format, seq_common.out);
        } else if (*zoo) {
            emit(lipcert::run_zoo(), zoo_common.format, zoo_common.out);
        }
    } catch (const lipcert::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
