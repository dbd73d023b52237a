#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace hardylab::suites {

/// Parameters of a verification run. trials = 0 keeps each suite's default
/// count; tol = 0 keeps each check's pinned tolerance.
struct SuiteConfig {
    int order = 128;
    int trials = 0;
    std::uint64_t seed = 1;
    double tol = 0.0;
    double rank_tol = 1e-8;
    int threads = 1;
};

/// One verification certificate: what was checked, whether it passed, and the
/// residuals against their tolerances. `instance` reproduces the input.
struct Certificate {
    std::string suite;
    int index = 0;
    std::string statement;
    bool pass = false;
    nlohmann::json residuals;
    nlohmann::json tolerances;
    nlohmann::json instance;

    nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Run one named suite; certificates come back ordered by trial index.
std::vector<Certificate> run_suite(const std::string& name, const SuiteConfig& config);

/// Run every suite in canonical order.
std::vector<Certificate> run_all(const SuiteConfig& config);

}  // namespace hardylab::suites
