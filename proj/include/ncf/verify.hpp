#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncf/report.hpp"

namespace ncf {

struct VerifyOptions {
    std::uint64_t seed = 20240607;
    // Overrides for the per-criterion quadrature orders.
    std::optional<int> quad_radial;
    std::optional<int> quad_angular;
    // Called after each case, for progress output.
    std::function<void(const VerificationCase&)> on_case;
};

// core: 1 3 4 5 7 8 10; su2: 2 6; duflo: 9; all: 1..10.
std::vector<int> suite_criteria(const std::string& suite);

std::vector<VerificationCase> run_criterion(int criterion, const VerifyOptions& opt,
                                            nlohmann::ordered_json* quad_meta = nullptr);
VerificationReport run_suite(const std::string& suite, const VerifyOptions& opt);

} // namespace ncf
