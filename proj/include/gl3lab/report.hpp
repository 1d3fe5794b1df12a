#pragma once

#include "gl3lab/modular.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace gl3lab::report {

using json = nlohmann::ordered_json;

// Doubles go through 12 significant digits so reports diff cleanly across runs;
// non-finite values become strings.
json num(double x);
json num(cplx z); // [re, im]

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// One subcommand's outcome: named checks plus a free-form payload.
struct Run {
    std::string subcommand;
    json config = json::object();
    std::vector<Check> checks;
    json data = json::object();
    std::string csv; // optional table, written next to the JSON

    void check(const std::string& name, bool pass, const std::string& detail = "");
    bool ok() const;
    json to_json() const;
};

// "PASS name: detail" lines, one per check
std::string summary(const Run& r);

// printf-style helper for details
std::string fmt(const char* f, ...);

} // namespace gl3lab::report
