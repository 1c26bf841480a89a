#include "ncf/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace ncf {

namespace {

std::string shortest(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

VerificationCase make_case(std::string id, int criterion, double expected, double computed, double residual,
                           double tolerance, std::string reference) {
    VerificationCase c;
    c.id = std::move(id);
    c.criterion = criterion;
    c.expected = expected;
    c.computed = computed;
    c.residual = residual;
    c.tolerance = tolerance;
    c.passed = residual <= tolerance;
    c.reference = std::move(reference);
    return c;
}

nlohmann::ordered_json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

bool VerificationReport::all_passed() const {
    for (auto& c : cases)
        if (!c.passed) return false;
    return !cases.empty();
}

nlohmann::ordered_json VerificationReport::to_json(bool with_timing) const {
    nlohmann::ordered_json j;
    j["version"] = kReportVersion;
    j["suite"] = suite;
    auto arr = nlohmann::ordered_json::array();
    int failed = 0;
    for (auto& c : cases) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["criterion"] = c.criterion;
        e["expected"] = json_number(c.expected);
        e["computed"] = json_number(c.computed);
        e["residual"] = json_number(c.residual);
        e["tolerance"] = json_number(c.tolerance);
        e["passed"] = c.passed;
        e["reference"] = c.reference;
        if (with_timing) e["wall_time_ms"] = c.wall_time_ms;
        arr.push_back(std::move(e));
        failed += c.passed ? 0 : 1;
    }
    j["cases"] = std::move(arr);
    nlohmann::ordered_json m = meta;
    m["total"] = static_cast<int>(cases.size());
    m["failed"] = failed;
    j["meta"] = std::move(m);
    return j;
}

void VerificationReport::write_csv(std::ostream& os, bool with_timing) const {
    os << "id,criterion,expected,computed,residual,tolerance,passed,reference";
    if (with_timing) os << ",wall_time_ms";
    os << '\n';
    for (auto& c : cases) {
        os << csv_field(c.id) << ',' << c.criterion << ',' << shortest(c.expected) << ',' << shortest(c.computed) << ','
           << shortest(c.residual) << ',' << shortest(c.tolerance) << ',' << (c.passed ? "true" : "false") << ','
           << csv_field(c.reference);
        if (with_timing) os << ',' << shortest(c.wall_time_ms);
        os << '\n';
    }
}

} // namespace ncf
