#include "gl3lab/report.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>

namespace gl3lab::report {

json num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json num(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

void Run::check(const std::string& name, bool pass, const std::string& detail) { checks.push_back({name, pass, detail}); }

bool Run::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

json Run::to_json() const {
    json j;
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["pass"] = ok();
    json cs = json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = cs;
    j["data"] = data;
    return j;
}

std::string summary(const Run& r) {
    std::string s;
    for (const auto& c : r.checks) s += (c.pass ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n";
    return s;
}

std::string fmt(const char* f, ...) {
    va_list ap;
    va_start(ap, f);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

} // namespace gl3lab::report
