#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lipcert/estimator.hpp"
#include "lipcert/geometry.hpp"
#include "lipcert/verification.hpp"
#include "lipcert/zoo.hpp"

namespace lipcert {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// JSON serializers. Doubles are emitted as the shortest decimal string that
// round-trips, so identical values serialize identically everywhere
// (including the CSV exports, which reuse the same formatter).
nlohmann::json to_json(const Ball& ball);
nlohmann::json to_json(const Cover& cover);
nlohmann::json to_json(const ContainmentReport& report);
nlohmann::json to_json(const LipschitzCertificate& cert);
nlohmann::json to_json(const RadialProfile& profile);
nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const RatioReport& report);
nlohmann::json to_json(const ConvexityReport& report);
nlohmann::json to_json(const SoundnessReport& report);
nlohmann::json to_json(const ConstancyReport& report);
nlohmann::json to_json(const CertificateSequence& seq);

// Strict readers: unknown fields are rejected with a ValidationError naming
// the field.
Ball ball_from_json(const nlohmann::json& doc);
LipschitzCertificate certificate_from_json(const nlohmann::json& doc);
RadialProfile profile_from_json(const nlohmann::json& doc);

/// Envelope for every CLI run: the recorded inputs and seed reproduce every
/// numeric output byte-for-byte on the same platform. timing_ms is
/// diagnostic metadata, not an output.
struct RunReport {
    std::string command;
    nlohmann::json inputs;
    nlohmann::json outputs;
    double timing_ms = 0.0;
};

nlohmann::json to_json(const RunReport& report);
RunReport run_report_from_json(const nlohmann::json& doc);

/// Accepts a stored RunReport (modulus/classify) or a bare profile object.
RadialProfile profile_from_file_json(const nlohmann::json& doc);
/// Accepts a stored RunReport (ball/tune) or a bare certificate object.
LipschitzCertificate certificate_from_file_json(const nlohmann::json& doc);

// ---- CLI operations -----------------------------------------------------

struct BallRunArgs {
    FunctionSpec fn;
    Vec center;
    double radius = 1.0;
    double alpha = 2.0;
    double lambda = 0.5;
    CoverKind cover = CoverKind::CrossPolytope;
};
RunReport run_ball(const BallRunArgs& args);

struct TuneRunArgs {
    FunctionSpec fn;
    Vec center;
    double radius = 1.0;
    std::vector<double> alphas = kDefaultAlphaGrid;
    double delta = kDefaultTuneDelta;
    CoverKind cover = CoverKind::CrossPolytope;
};
RunReport run_tune(const TuneRunArgs& args);

struct ModulusRunArgs {
    FunctionSpec fn;
    std::vector<double> radii;
    int num_random_directions = 512;
    std::uint64_t seed = 0;
    double growth_factor_threshold = kDefaultGrowthFactorThreshold;
    double plateau_rel_tol = kDefaultPlateauRelTol;
};
RunReport run_modulus(const ModulusRunArgs& args);

struct ClassifyRunArgs {
    RadialProfile profile;
    double growth_factor_threshold = kDefaultGrowthFactorThreshold;
    double plateau_rel_tol = kDefaultPlateauRelTol;
};
RunReport run_classify(const ClassifyRunArgs& args);

struct VerifyRunArgs {
    FunctionSpec fn;
    LipschitzCertificate certificate;
    std::int64_t num_pairs = 10000;
    std::uint64_t seed = 0;
};
RunReport run_verify(const VerifyRunArgs& args);

struct CertseqRunArgs {
    FunctionSpec fn;
    Vec center;
    double alpha = 10.0;
    double delta = kDefaultTuneDelta;
    std::vector<double> radii;
    std::optional<double> ell_override;  ///< else the zoo's analytic value
};
RunReport run_certseq(const CertseqRunArgs& args);

RunReport run_zoo();

/// Generates monotone decade radii rmin, 10 rmin, ... up to rmax.
std::vector<double> decade_radii(double rmin, double rmax);

/// CSV export. Profiles: radius,ratio,signed_ratio. Certificate sequences:
/// r,L,reference_bound. Other commands have no CSV form (ValidationError).
std::string report_csv(const RunReport& report);

}  // namespace lipcert
