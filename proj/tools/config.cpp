#include "config.hpp"

using namespace gl3lab::verify;

namespace {

CLI::App* sub(CLI::App& app, Subcommands& s, const std::string& name, const std::string& help,
              std::function<gl3lab::report::Run()> fn) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--out", s.out, "report path (default <subcommand>.json); a CSV table goes next to it");
    c->callback([&s, name, fn] {
        s.name = name;
        s.run = fn;
    });
    return c;
}

} // namespace

void Subcommands::attach(CLI::App& app) {
    auto pos = CLI::PositiveNumber;

    auto* c = sub(app, *this, "delta-verify", "delta-symbol detection of n = 0", [this] { return delta_verify(delta); });
    c->add_option("--Q", delta.Q, "delta-method parameter")->check(pos)->capture_default_str();
    c->add_option("--nmax", delta.nmax, "shifts -nmax..nmax")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--tol", delta.tol, "detection tolerance")->check(pos)->capture_default_str();

    c = sub(app, *this, "charsum-audit", "character-sum closed form, Weil bound and cancellation audit",
            [this] { return charsum_audit(charsum); });
    c->add_option("--qmax", charsum.qmax, "closed-form grid q1, q2 <= qmax")->check(pos)->capture_default_str();
    c->add_option("--pmax", charsum.pmax, "Weil bound over primes <= pmax")->check(CLI::Range(2, 100000))->capture_default_str();
    c->add_option("--cmin", charsum.cmin, "smallest audited prime")->check(CLI::Range(3, 100000))->capture_default_str();
    c->add_option("--cmax", charsum.cmax, "largest audited prime")->check(CLI::Range(3, 100000))->capture_default_str();
    c->add_option("--samples", charsum.samples, "tuples per class and prime")->check(pos)->capture_default_str();
    c->add_option("--seed", charsum.seed, "tuple seed")->capture_default_str();
    c->add_option("--cap", charsum.cap, "work cap per brute-force sum")->check(pos)->capture_default_str();

    c = sub(app, *this, "newton-check", "Newton polyhedron vertices and nondegeneracy", [this] { return newton_check(newton); });
    c->add_option("--primes", newton.primes, "primes for the nondegeneracy check")->delimiter(',')->capture_default_str();
    c->add_option("--tuples", newton.tuples, "random generic tuples per prime")->check(pos)->capture_default_str();
    c->add_option("--seed", newton.seed, "tuple seed")->capture_default_str();
    c->add_option("--cap", newton.cap, "work cap")->check(pos)->capture_default_str();

    c = sub(app, *this, "stationary-demo", "stationary-phase ladder, derivative and stationary-point checks",
            [this] { return stationary_demo(stationary); });
    c->add_option("--ladder", stationary.ladder, "Fresnel scales Y")->delimiter(',')->check(pos)->capture_default_str();
    c->add_option("--points", stationary.derivative_points, "random derivative points")->check(pos)->capture_default_str();
    c->add_option("--tuples", stationary.stationary_tuples, "random stationary-point tuples")->check(pos)->capture_default_str();
    c->add_option("--seed", stationary.seed, "sampling seed")->capture_default_str();
    c->add_option("--tol", stationary.tol, "finite-difference tolerance")->check(pos)->capture_default_str();

    c = sub(app, *this, "voronoi-verify", "Voronoi summation on a smooth window", [this] { return voronoi_verify(voronoi); });
    c->add_option("--form", voronoi.form, "d3 or sym2_delta")->capture_default_str();
    c->add_option("--qmax", voronoi.qmax, "moduli 1..qmax")->check(pos)->capture_default_str();
    c->add_option("--a", voronoi.a, "window start")->check(pos)->capture_default_str();
    c->add_option("--b", voronoi.b, "window end")->check(pos)->capture_default_str();
    c->add_option("--tol", voronoi.tol, "relative tolerance")->check(pos)->capture_default_str();
    c->add_option("--tail-tol", voronoi.tail_tol, "dual-sum tail tolerance")->check(pos)->capture_default_str();
    c->add_option("--cap", voronoi.cap, "dual terms per n0")->check(pos)->capture_default_str();

    c = sub(app, *this, "afe-eval", "central values from the approximate functional equation", [this] { return afe_eval(afe); });
    c->add_option("--form", afe.form, "d3 or sym2_delta")->capture_default_str();
    c->add_option("--t-list", afe.t, "heights t")->delimiter(',')->check(pos)->capture_default_str();
    c->add_option("--tol", afe.tol, "oracle tolerance")->check(pos)->capture_default_str();

    c = sub(app, *this, "moment-scan", "short second moment against t^{5/4}(log t)^3", [this] { return moment_scan(moment); });
    c->add_option("--form", moment.form, "d3 or sym2_delta")->capture_default_str();
    c->add_option("--t-list", moment.t, "heights t")->delimiter(',')->check(CLI::Range(10.0, 1e7))->capture_default_str();
    c->add_option("--m-rule", moment.m_rule, "half-width: t^{2/3}, t^{1/2} or a number")->capture_default_str();
    c->add_option("--mode", moment.mode, "afe or direct_zeta3")->capture_default_str();
    c->add_option("--max-slope", moment.max_slope, "largest accepted log-log slope")->capture_default_str();

    c = sub(app, *this, "duality-test", "duality inequality on random matrices", [this] { return duality_test(duality); });
    c->add_option("--trials", duality.trials, "random matrices")->check(pos)->capture_default_str();
    c->add_option("--max-dim", duality.max_dim, "largest dimension")->check(CLI::Range(1, 500))->capture_default_str();
    c->add_option("--samples", duality.samples, "random unit vectors per trial")->check(pos)->capture_default_str();
    c->add_option("--seed", duality.seed, "matrix seed")->capture_default_str();
}
