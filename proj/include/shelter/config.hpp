#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace shelter {

/// (min, mode, max) of a triangular distribution, in days.
struct TriangularSpec {
    double min = 0.0;
    double mode = 0.0;
    double max = 0.0;

    friend bool operator==(const TriangularSpec&, const TriangularSpec&) = default;
};

/// One appointment-pool support service.
struct ServiceSpec {
    std::string name;
    int capacity_units = 0;    // appointments per month, held as a continuous pool
    double request_prob = 0.0;
    int appt_min = 1;          // monthly appointments, given the youth requests the service
    int appt_max = 1;

    friend bool operator==(const ServiceSpec&, const ServiceSpec&) = default;
};

struct StayAttributes {
    TriangularSpec bsy_16_20_los{30.0, 75.0, 90.0};
    TriangularSpec bsy_21_24_los{60.0, 120.0, 180.0};
    TriangularSpec nbsy_los{7.0, 14.0, 30.0};
    TriangularSpec bed_patience{3.0, 5.0, 7.0};
    TriangularSpec service_patience{1.0, 7.0, 14.0};

    friend bool operator==(const StayAttributes&, const StayAttributes&) = default;
};

/// What happens to the length of stay of a youth who gave up on a bed but stayed for services.
enum class RenegeStayLos {
    KeepOriginal,  // keep the bed-seeker length of stay drawn at arrival
    RedrawNbsy,    // use a length of stay from the non-bed-seeker distribution
};

inline constexpr std::string_view kCaseManagement = "case_management";
inline constexpr std::string_view kDrugCounseling = "drug_counseling";
inline constexpr std::string_view kInsuranceEnrollment = "insurance_enrollment";
inline constexpr std::string_view kPsychiatric = "psychiatric";
inline constexpr std::string_view kMedical = "medical";

/// Calibrated share of bed seekers in the 16-20 age group. See README.
inline constexpr double kDefaultAge1620Fraction = 0.88;

std::vector<ServiceSpec> default_services();

struct ScenarioConfig {
    int bed_capacity = 66;
    std::vector<ServiceSpec> services = default_services();
    double annual_arrivals = 1399.0;
    double bsy_fraction = 1.0 / 3.0;
    double age_16_20_fraction = kDefaultAge1620Fraction;
    double renege_exit_prob = 0.25;
    RenegeStayLos renege_stay_los = RenegeStayLos::KeepOriginal;
    StayAttributes stay;
    double warmup_days = 365.25;
    double stats_window_days = 365.25;
    int replications = 100;
    std::uint64_t master_seed = 20230101;

    double horizon_days() const noexcept { return warmup_days + stats_window_days; }
    /// Index of the named service, if present.
    std::optional<std::size_t> service_index(std::string_view name) const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// A single violated constraint, located by its path in the config document
/// (e.g. `services[3].request_prob`).
struct ConfigIssue {
    std::string path;
    std::string message;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);

    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Every violated invariant; empty when the config is valid.
std::vector<ConfigIssue> validate(const ScenarioConfig& config);

/// Builds a config from a document, filling absent fields with defaults.
/// Throws ConfigError for unknown keys, wrong types, or failed validation.
ScenarioConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ScenarioConfig& config);

/// Reads a JSON document from disk. Throws ConfigError on I/O or parse failure.
nlohmann::json read_config_document(const std::filesystem::path& path);

/// The default config overlaid with `doc` (RFC 7386 merge patch). Overrides
/// should be applied to this merged form so paths into defaulted sections resolve.
nlohmann::json with_defaults(const nlohmann::json& doc);

/// Applies `key=value` to a document. The key is a dotted path; inside the
/// `services` array a segment may name a service instead of an index
/// (`services.psychiatric.capacity_units=72`). The value is parsed as JSON,
/// falling back to a plain string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// Hex SHA-256 of the canonical serialization of the effective config.
std::string config_digest(const ScenarioConfig& config);

}  // namespace shelter
