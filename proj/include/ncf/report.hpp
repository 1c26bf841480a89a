#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ncf {

constexpr int kReportVersion = 1;

struct VerificationCase {
    std::string id;
    int criterion = 0;
    double expected = 0.0;
    double computed = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    // Short statement of the identity being checked.
    std::string reference;
    double wall_time_ms = 0.0;
};

// Sets passed from residual <= tolerance (NaN fails).
VerificationCase make_case(std::string id, int criterion, double expected, double computed, double residual,
                           double tolerance, std::string reference);

struct VerificationReport {
    std::string suite;
    std::vector<VerificationCase> cases;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();

    bool all_passed() const;
    // Wall times are left out unless asked for so that reports are
    // byte-identical across runs.
    nlohmann::ordered_json to_json(bool with_timing = false) const;
    void write_csv(std::ostream& os, bool with_timing = false) const;
};

// JSON number, or null when not finite.
nlohmann::ordered_json json_number(double v);

} // namespace ncf
