#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "intcheb/poly.hpp"

namespace intcheb::cli {

using Json = nlohmann::json;

// One factor of a weight: polynomial text (comma-separated ascending
// coefficients), exponent ("*" marks a swept variable, a numeral pins it),
// and the sweep exponent scale.
struct FactorSpec {
    std::string poly;
    std::string exponent = "*";
    double scale = 1.0;

    bool operator==(const FactorSpec&) const = default;
};

// Fully resolved invocation; round-trips through JSON unchanged.
struct RunConfig {
    std::string command;
    std::string domain = "0,0.25";
    std::vector<FactorSpec> factors;
    std::string zetas;  // comma-separated rationals, empty = linear factor zeros
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double latticeStep = 0.002;
    int lejaLength = 2000;
    int gridDensity = 200000;
    bool refine = true;
    int coarseFactor = 0;  // 0 = auto
    double m = 0.179335;
    std::string method;              // bound method selector
    std::string mode = "closedform";  // closedform | leja
    int degree = 4;
    double budget = 0.0;  // 0 = derive from known factor products
    double r = 0.0;
    bool irreducible = false;
    std::string poly;
    int n = 0;
    std::string outPath;
    std::string format = "json";

    Json toJson() const;
    static RunConfig fromJson(const Json& j);
    bool operator==(const RunConfig&) const = default;
};

// Parses argv (without the program name) into a config; throws DomainError
// on grammar violations.
RunConfig parseArgs(const std::vector<std::string>& args);

// Executes a resolved config; returns the output document
// {"config": ..., "result": ...} and writes side outputs (CSV dumps).
Json execute(const RunConfig& cfg);

// Full front end: parse, execute, write, report.  Returns the process exit
// code: 0 ok, 2 validation error, 3 numerical failure.
int run(const std::vector<std::string>& args);

}  // namespace intcheb::cli
