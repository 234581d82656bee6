#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace lfdgf {

struct SuiteOptions {
    std::size_t instances = 500;
};

struct SuiteReport {
    std::string name;
    std::size_t required = 0;  // instances the suite must check
    std::size_t instances = 0; // instances checked
    std::size_t failures = 0;
    std::size_t skipped = 0;   // generated inputs rejected by a size cap
    std::vector<std::string> examples; // first few failures
    nlohmann::json stats = nlohmann::json::object();
    double seconds = 0;

    bool passed() const { return failures == 0 && instances >= required; }
    void fail(std::string what);
    nlohmann::json to_json() const;
};

std::vector<std::string> suite_names();
// Throws InputError for an unknown suite.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, const SuiteOptions& opt = {});

} // namespace lfdgf
