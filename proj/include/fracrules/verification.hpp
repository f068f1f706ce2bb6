#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fracrules/leibniz.hpp"
#include "fracrules/solvers.hpp"

namespace fracrules {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_residual = 0.0; // worst metric across the suite's cases
    double tolerance = 0.0;
    nlohmann::json cases = nlohmann::json::array();
};

std::vector<std::string> suite_names();

// Fixed deterministic parameter matrices; unknown names raise ValidationError.
SuiteResult run_suite(const std::string& name);

nlohmann::json suite_json(const SuiteResult& r);
nlohmann::json report_json(const LeibnizReport& r);
nlohmann::json certificate_json(const SolutionCertificate& c);

} // namespace fracrules
