#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vleb/ap.hpp"
#include "vleb/exponent.hpp"
#include "vleb/expr.hpp"
#include "vleb/verify.hpp"
#include "vleb/weight.hpp"

namespace vleb {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Run configuration, parsed strictly: unknown keys are rejected.
// Defaults: L=16, n=4097, depth=8, levels=8, seed=42.
struct RunConfig {
    GridConfig grid;
    VariableExponent exponent = const_exponent(2.0);
    WeightSpec weight = unit_weight();
    std::vector<std::string> suites;
    std::string family = "default";
    int levels = 8;
    unsigned seed = 42;
    std::string out_dir = "out";
    ExprPtr f;            // test function for norm/modular/apply subcommands
    double lambda = 1.0;  // modular scale
};

json expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const json& j);

json exponent_to_json(const VariableExponent& p);
VariableExponent exponent_from_json(const json& j);

json weight_to_json(const WeightSpec& w);
WeightSpec weight_from_json(const json& j);

RunConfig config_from_json(const json& j);
// parses a document, attaching a line number to syntax errors
RunConfig parse_config_text(const std::string& text);
json config_to_json(const RunConfig& c);

json verify_report_to_json(const VerifyReport& r);
json ap_report_to_json(const ApReport& r);

// fixed-format CSV: 12 significant digits, "+inf" for divergence flags
std::string csv_number(double v);
std::string verify_report_csv(const VerifyReport& r);
std::string ap_report_csv(const ApReport& r);

// worker cap from VLEB_THREADS (0 or unset = auto)
int thread_cap();

}  // namespace vleb
