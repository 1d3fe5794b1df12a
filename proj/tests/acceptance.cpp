// One PASS/FAIL line per acceptance criterion. The CLI path comes in as argv[1].
#include "gl3lab/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

using namespace gl3lab;
using report::Run;

namespace {

int failures = 0;

void line(int n, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", n, name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !pass;
}

// all checks whose name starts with one of the prefixes
bool checks(const Run& r, std::initializer_list<const char*> prefixes, std::string& detail) {
    bool ok = true;
    for (const auto& c : r.checks)
        for (const char* p : prefixes)
            if (c.name.rfind(p, 0) == 0) {
                ok = ok && c.pass;
                if (!detail.empty()) detail += "; ";
                detail += c.name + ": " + c.detail;
            }
    return ok && !detail.empty();
}

template <class F>
Run timed(F f, double& secs) {
    const auto t0 = std::chrono::steady_clock::now();
    Run r = f();
    secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv) {
    double secs = 0;
    std::string d;

    auto r = timed([] { return verify::delta_verify({}); }, secs);
    d.clear();
    bool ok = checks(r, {"delta identity"}, d);
    line(1, "delta identity", ok && secs < 60, d + report::fmt("; %.1f s", secs));

    r = timed([] { return verify::charsum_audit({}); }, secs);
    d.clear();
    line(2, "character-sum closed form", checks(r, {"closed form"}, d), d);
    d.clear();
    ok = checks(r, {"Weil"}, d);
    line(3, "Weil bound", ok && secs < 300, d + report::fmt("; whole audit %.1f s", secs));
    d.clear();
    line(4, "square-root cancellation audit", checks(r, {"audit", "frozen"}, d), d);

    r = verify::newton_check({});
    d.clear();
    line(5, "Newton polyhedron", checks(r, {"polyhedron vertices", "generic", "q1 = q2"}, d), d);

    r = verify::stationary_demo({});
    d.clear();
    line(6, "stationary phase ladder", checks(r, {"main term", "error decay"}, d), d);
    d.clear();
    line(7, "phase derivatives", checks(r, {"phase derivatives", "F3'"}, d), d);

    r = timed([] { return verify::voronoi_verify({}); }, secs);
    d.clear();
    ok = checks(r, {"gamma", "Voronoi"}, d);
    line(8, "Voronoi identity", ok && secs < 600, d + report::fmt("; %.1f s", secs));

    r = verify::afe_eval({});
    d.clear();
    line(9, "AFE oracle", checks(r, {"zeta^3"}, d), d);

    r = verify::duality_test({});
    d.clear();
    line(10, "duality principle", checks(r, {"duality", "rank-one"}, d), d);

    r = verify::moment_scan({});
    d.clear();
    line(11, "moment envelope", checks(r, {"envelope", "fitted slope"}, d), d);

    // byte-identical reports from two CLI runs per subcommand
    if (argc < 2) {
        line(12, "reproducibility", false, "CLI path not given");
    } else {
        const std::filesystem::path dir = std::filesystem::temp_directory_path() / "gl3lab_acceptance";
        std::filesystem::create_directories(dir);
        const char* runs[] = {"newton-check --seed 5", "stationary-demo --seed 9", "afe-eval --t-list 30,60",
                              "moment-scan", "duality-test --seed 11 --trials 200", "delta-verify --Q 10 --nmax 5"};
        bool same = true;
        int n = 0;
        for (const char* a : runs) {
            std::string text[2];
            for (int k = 0; k < 2; ++k) {
                const auto out = dir / ("run" + std::to_string(k) + ".json");
                std::filesystem::remove(out);
                const std::string cmd =
                    std::string(argv[1]) + " " + a + " --out " + out.string() + " > /dev/null 2>&1";
                const int rc = std::system(cmd.c_str());
                (void)rc;
                text[k] = slurp(out);
                const auto csv = std::filesystem::path(out).replace_extension(".csv");
                if (std::filesystem::exists(csv)) text[k] += slurp(csv);
            }
            same = same && !text[0].empty() && text[0] == text[1];
            ++n;
        }
        line(12, "reproducibility", same, report::fmt("%d subcommands run twice, reports %s", n, same ? "identical" : "differ"));
    }
    return failures ? 1 : 0;
}
