#include "config.hpp"

#include "gl3lab/error.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using gl3lab::report::json;

bool write(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
    return static_cast<bool>(f);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gl3lab: numerical checks of the ingredients of a GL(3) subconvexity argument"};
    app.config_formatter(std::make_shared<CLI::ConfigINI>());
    app.set_config("--config", "", "key = value file; keys go under a [subcommand] section");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    Subcommands s;
    s.attach(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::filesystem::path out = s.out.empty() ? s.name + ".json" : s.out;
    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    json doc;
    std::string csv;
    try {
        const auto run = s.run();
        doc = run.to_json();
        csv = run.csv;
        std::cout << gl3lab::report::summary(run);
        code = run.ok() ? 0 : 1;
    } catch (const gl3lab::Error& e) {
        if (e.code() == gl3lab::Errc::ConfigError) {
            std::cerr << e.what() << "\n";
            return 2;
        }
        const bool cap = e.code() == gl3lab::Errc::WorkCapExceeded || e.code() == gl3lab::Errc::TruncationInsufficient;
        code = cap ? 3 : 1;
        doc = {{"subcommand", s.name}, {"pass", false}, {"error", {{"code", gl3lab::errc_name(e.code())}, {"message", e.what()}}}};
        std::cout << "FAIL " << s.name << ": " << e.what() << "\n";
    }
    if (!write(out, doc.dump(2) + "\n")) {
        std::cerr << "cannot write " << out << "\n";
        return 2;
    }
    if (!csv.empty()) write(std::filesystem::path(out).replace_extension(".csv"), csv);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << s.name << ": " << secs << " s, report " << out.string() << "\n";
    return code;
}
