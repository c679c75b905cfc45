#include "shelter/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace shelter {

using nlohmann::json;

std::vector<ServiceSpec> default_services()
{
    return {
        {std::string(kCaseManagement), 400, 1.0, 2, 4},
        {std::string(kDrugCounseling), 60, 0.4, 1, 4},
        {std::string(kInsuranceEnrollment), 34, 0.5, 1, 1},
        {std::string(kPsychiatric), 56, 0.5, 1, 4},
        {std::string(kMedical), 192, 0.9, 1, 5},
    };
}

std::optional<std::size_t> ScenarioConfig::service_index(std::string_view name) const
{
    for (std::size_t i = 0; i < services.size(); ++i) {
        if (services[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

namespace {

std::string format_issues(const std::vector<ConfigIssue>& issues)
{
    std::ostringstream os;
    os << "invalid configuration";
    for (const auto& issue : issues) {
        os << "\n  " << issue.path << ": " << issue.message;
    }
    return os.str();
}

std::string join(std::string_view parent, std::string_view key)
{
    return parent.empty() ? std::string(key) : std::string(parent) + "." + std::string(key);
}

void check_probability(std::vector<ConfigIssue>& out, const std::string& path, double p)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        out.push_back({path, "must be a probability in [0, 1], got " + json(p).dump()});
    }
}

void check_triangular(std::vector<ConfigIssue>& out, const std::string& path, const TriangularSpec& t)
{
    if (!(std::isfinite(t.min) && std::isfinite(t.max) && t.min >= 0.0)) {
        out.push_back({path, "bounds must be finite and non-negative"});
    } else if (!(t.min <= t.mode && t.mode <= t.max && t.min < t.max)) {
        out.push_back({path, "must satisfy min <= mode <= max and min < max"});
    }
}

/// Walks a document, recording type errors and unknown keys with their paths.
class Reader {
public:
    std::vector<ConfigIssue> issues;

    void expect_object(const json& j, const std::string& path)
    {
        if (!j.is_object()) {
            issues.push_back({path.empty() ? "<root>" : path, "expected an object"});
        }
    }

    void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> known)
    {
        if (!j.is_object()) {
            return;
        }
        for (const auto& [key, _] : j.items()) {
            bool found = false;
            for (auto k : known) {
                found = found || key == k;
            }
            if (!found) {
                issues.push_back({join(path, key), "unknown field"});
            }
        }
    }

    void number(const json& j, const std::string& path, std::string_view key, double& out)
    {
        const json* v = find(j, key);
        if (!v) {
            return;
        }
        if (!v->is_number()) {
            issues.push_back({join(path, key), "expected a number"});
            return;
        }
        out = v->get<double>();
    }

    void integer(const json& j, const std::string& path, std::string_view key, int& out)
    {
        const json* v = find(j, key);
        if (!v) {
            return;
        }
        if (!v->is_number_integer() || v->get<long long>() < std::numeric_limits<int>::min() ||
            v->get<long long>() > std::numeric_limits<int>::max()) {
            issues.push_back({join(path, key), "expected an integer"});
            return;
        }
        out = v->get<int>();
    }

    void seed(const json& j, const std::string& path, std::string_view key, std::uint64_t& out)
    {
        const json* v = find(j, key);
        if (!v) {
            return;
        }
        if (!v->is_number_unsigned()) {
            issues.push_back({join(path, key), "expected a non-negative 64-bit integer"});
            return;
        }
        out = v->get<std::uint64_t>();
    }

    void string(const json& j, const std::string& path, std::string_view key, std::string& out)
    {
        const json* v = find(j, key);
        if (!v) {
            return;
        }
        if (!v->is_string()) {
            issues.push_back({join(path, key), "expected a string"});
            return;
        }
        out = v->get<std::string>();
    }

    void triangular(const json& j, const std::string& path, std::string_view key, TriangularSpec& out)
    {
        const json* v = find(j, key);
        if (!v) {
            return;
        }
        if (!v->is_array() || v->size() != 3 || !(*v)[0].is_number() || !(*v)[1].is_number() ||
            !(*v)[2].is_number()) {
            issues.push_back({join(path, key), "expected [min, mode, max]"});
            return;
        }
        out = TriangularSpec{(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
    }

    static const json* find(const json& j, std::string_view key)
    {
        if (!j.is_object()) {
            return nullptr;
        }
        auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    }
};

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues) : std::runtime_error(format_issues(issues)), issues_(std::move(issues))
{
}

std::vector<ConfigIssue> validate(const ScenarioConfig& c)
{
    std::vector<ConfigIssue> out;
    if (c.bed_capacity < 0) {
        out.push_back({"bed_capacity", "must be >= 0"});
    } else if (c.bed_capacity == 0 && c.bsy_fraction > 0.0) {
        out.push_back({"bed_capacity", "must be >= 1 while bsy_fraction > 0 (bed requests would be unsatisfiable)"});
    }
    if (!(std::isfinite(c.annual_arrivals) && c.annual_arrivals >= 0.0)) {
        out.push_back({"annual_arrivals", "must be a finite number >= 0"});
    }
    check_probability(out, "bsy_fraction", c.bsy_fraction);
    check_probability(out, "age_16_20_fraction", c.age_16_20_fraction);
    check_probability(out, "renege_exit_prob", c.renege_exit_prob);
    if (!(std::isfinite(c.warmup_days) && c.warmup_days >= 0.0)) {
        out.push_back({"warmup_days", "must be a finite number >= 0"});
    }
    if (!(std::isfinite(c.stats_window_days) && c.stats_window_days > 0.0)) {
        out.push_back({"stats_window_days", "must be a finite number > 0"});
    }
    if (c.replications < 1) {
        out.push_back({"replications", "must be >= 1"});
    }
    check_triangular(out, "stay.bsy_16_20_los", c.stay.bsy_16_20_los);
    check_triangular(out, "stay.bsy_21_24_los", c.stay.bsy_21_24_los);
    check_triangular(out, "stay.nbsy_los", c.stay.nbsy_los);
    check_triangular(out, "stay.bed_patience", c.stay.bed_patience);
    check_triangular(out, "stay.service_patience", c.stay.service_patience);

    if (c.services.empty()) {
        out.push_back({"services", "at least one service is required"});
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < c.services.size(); ++i) {
        const auto& s = c.services[i];
        const std::string p = "services[" + std::to_string(i) + "]";
        if (s.name.empty()) {
            out.push_back({p + ".name", "must not be empty"});
        } else if (!names.insert(s.name).second) {
            out.push_back({p + ".name", "duplicate service name '" + s.name + "'"});
        }
        if (s.capacity_units < 0) {
            out.push_back({p + ".capacity_units", "must be >= 0"});
        }
        check_probability(out, p + ".request_prob", s.request_prob);
        if (s.appt_min < 1) {
            out.push_back({p + ".appt_min", "must be >= 1"});
        }
        if (s.appt_max < s.appt_min) {
            out.push_back({p + ".appt_max", "must be >= appt_min"});
        }
        if (s.request_prob > 0.0 && s.appt_max > s.capacity_units) {
            out.push_back({p + ".appt_max", "exceeds capacity_units " + std::to_string(s.capacity_units) +
                                                "; such requests could never be granted"});
        }
    }
    return out;
}

ScenarioConfig config_from_json(const json& doc)
{
    ScenarioConfig c;
    Reader r;
    r.expect_object(doc, "");
    r.reject_unknown(doc, "",
                     {"bed_capacity", "services", "annual_arrivals", "bsy_fraction", "age_16_20_fraction",
                      "renege_exit_prob", "renege_stay_los", "stay", "warmup_days", "stats_window_days",
                      "replications", "master_seed"});
    r.integer(doc, "", "bed_capacity", c.bed_capacity);
    r.number(doc, "", "annual_arrivals", c.annual_arrivals);
    r.number(doc, "", "bsy_fraction", c.bsy_fraction);
    r.number(doc, "", "age_16_20_fraction", c.age_16_20_fraction);
    r.number(doc, "", "renege_exit_prob", c.renege_exit_prob);
    r.number(doc, "", "warmup_days", c.warmup_days);
    r.number(doc, "", "stats_window_days", c.stats_window_days);
    r.integer(doc, "", "replications", c.replications);
    r.seed(doc, "", "master_seed", c.master_seed);

    std::string los_mode = "keep";
    r.string(doc, "", "renege_stay_los", los_mode);
    if (los_mode == "keep") {
        c.renege_stay_los = RenegeStayLos::KeepOriginal;
    } else if (los_mode == "redraw_nbsy") {
        c.renege_stay_los = RenegeStayLos::RedrawNbsy;
    } else {
        r.issues.push_back({"renege_stay_los", "expected \"keep\" or \"redraw_nbsy\""});
    }

    if (const json* stay = Reader::find(doc, "stay")) {
        r.expect_object(*stay, "stay");
        r.reject_unknown(*stay, "stay",
                         {"bsy_16_20_los", "bsy_21_24_los", "nbsy_los", "bed_patience", "service_patience"});
        r.triangular(*stay, "stay", "bsy_16_20_los", c.stay.bsy_16_20_los);
        r.triangular(*stay, "stay", "bsy_21_24_los", c.stay.bsy_21_24_los);
        r.triangular(*stay, "stay", "nbsy_los", c.stay.nbsy_los);
        r.triangular(*stay, "stay", "bed_patience", c.stay.bed_patience);
        r.triangular(*stay, "stay", "service_patience", c.stay.service_patience);
    }

    if (const json* services = Reader::find(doc, "services")) {
        if (!services->is_array()) {
            r.issues.push_back({"services", "expected an array"});
        } else {
            c.services.clear();
            for (std::size_t i = 0; i < services->size(); ++i) {
                const json& s = (*services)[i];
                const std::string p = "services[" + std::to_string(i) + "]";
                r.expect_object(s, p);
                r.reject_unknown(s, p, {"name", "capacity_units", "request_prob", "appt_min", "appt_max"});
                ServiceSpec spec;
                if (!Reader::find(s, "name")) {
                    r.issues.push_back({p + ".name", "required"});
                }
                r.string(s, p, "name", spec.name);
                r.integer(s, p, "capacity_units", spec.capacity_units);
                r.number(s, p, "request_prob", spec.request_prob);
                r.integer(s, p, "appt_min", spec.appt_min);
                r.integer(s, p, "appt_max", spec.appt_max);
                c.services.push_back(std::move(spec));
            }
        }
    }

    if (!r.issues.empty()) {
        throw ConfigError(std::move(r.issues));
    }
    if (auto issues = validate(c); !issues.empty()) {
        throw ConfigError(std::move(issues));
    }
    return c;
}

json config_to_json(const ScenarioConfig& c)
{
    auto tri = [](const TriangularSpec& t) { return json::array({t.min, t.mode, t.max}); };
    json services = json::array();
    for (const auto& s : c.services) {
        services.push_back({{"name", s.name},
                            {"capacity_units", s.capacity_units},
                            {"request_prob", s.request_prob},
                            {"appt_min", s.appt_min},
                            {"appt_max", s.appt_max}});
    }
    return json{
        {"bed_capacity", c.bed_capacity},
        {"services", std::move(services)},
        {"annual_arrivals", c.annual_arrivals},
        {"bsy_fraction", c.bsy_fraction},
        {"age_16_20_fraction", c.age_16_20_fraction},
        {"renege_exit_prob", c.renege_exit_prob},
        {"renege_stay_los", c.renege_stay_los == RenegeStayLos::KeepOriginal ? "keep" : "redraw_nbsy"},
        {"stay",
         {{"bsy_16_20_los", tri(c.stay.bsy_16_20_los)},
          {"bsy_21_24_los", tri(c.stay.bsy_21_24_los)},
          {"nbsy_los", tri(c.stay.nbsy_los)},
          {"bed_patience", tri(c.stay.bed_patience)},
          {"service_patience", tri(c.stay.service_patience)}}},
        {"warmup_days", c.warmup_days},
        {"stats_window_days", c.stats_window_days},
        {"replications", c.replications},
        {"master_seed", c.master_seed},
    };
}

json read_config_document(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError({{path.string(), "cannot open config file"}});
    }
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError({{path.string(), std::string("parse error: ") + e.what()}});
    }
}

json with_defaults(const json& doc)
{
    json merged = config_to_json(ScenarioConfig{});
    merged.merge_patch(doc);
    return merged;
}

void apply_override(json& doc, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError({{std::string(assignment), "override must look like key=value"}});
    }
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));

    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }

    json* node = &doc;
    std::string walked;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string seg = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (seg.empty()) {
            throw ConfigError({{key, "empty path segment"}});
        }
        const bool last = dot == std::string::npos;
        if (node->is_array()) {
            json* next = nullptr;
            for (auto& item : *node) {
                if (item.is_object() && item.contains("name") && item["name"] == seg) {
                    next = &item;
                }
            }
            if (!next && seg.find_first_not_of("0123456789") == std::string::npos) {
                const auto idx = std::stoul(seg);
                if (idx < node->size()) {
                    next = &(*node)[idx];
                }
            }
            if (!next) {
                throw ConfigError({{key, "no element '" + seg + "' under " + (walked.empty() ? "<root>" : walked)}});
            }
            node = next;
        } else {
            if (node->is_null()) {
                *node = json::object();
            }
            if (!node->is_object()) {
                throw ConfigError({{key, "'" + walked + "' is not an object"}});
            }
            node = &(*node)[seg];
        }
        walked = join(walked, seg);
        if (last) {
            break;
        }
        pos = dot + 1;
    }
    *node = std::move(value);
}

std::string config_digest(const ScenarioConfig& config)
{
    const std::string canonical = config_to_json(config).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(canonical.data(), canonical.size(), md, &len, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        hex.push_back(kHex[md[i] >> 4]);
        hex.push_back(kHex[md[i] & 0xf]);
    }
    return hex;
}

}  // namespace shelter
