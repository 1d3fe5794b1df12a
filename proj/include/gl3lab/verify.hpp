#pragma once

#include "gl3lab/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Verification suites behind the CLI subcommands and the acceptance binary.
// Each returns a Run whose checks decide the exit code; nothing here reads the clock,
// so equal parameters give byte-identical reports.
namespace gl3lab::verify {

struct DeltaParams {
    double Q = 20;
    i64 nmax = 15;
    double tol = 1e-6;
};
report::Run delta_verify(const DeltaParams& p);

struct CharsumParams {
    i64 qmax = 30;      // closed form at m = 0 for q1, q2 <= qmax, every unit h1, h2, both eta
    i64 pmax = 500;     // Weil bound over primes p <= pmax, all (a, b) not both 0
    i64 cmin = 5, cmax = 150;
    i64 samples = 1000; // per class and prime
    std::uint64_t seed = 7;
    double cap = 1e6;   // brute-force work cap per character sum
};
report::Run charsum_audit(const CharsumParams& p);

struct NewtonParams {
    std::vector<i64> primes{5, 7, 11, 13};
    int tuples = 20; // random generic tuples per prime
    std::uint64_t seed = 1;
    double cap = 1e8;
};
report::Run newton_check(const NewtonParams& p);

struct StationaryParams {
    std::vector<double> ladder{400, 1600, 6400};
    int derivative_points = 1000;
    int stationary_tuples = 50;
    std::uint64_t seed = 1;
    double tol = 1e-5; // finite-difference agreement
};
report::Run stationary_demo(const StationaryParams& p);

struct VoronoiParams {
    std::string form = "sym2_delta";
    i64 qmax = 5;
    double a = 50, b = 500; // window support
    double tol = 1e-3;
    double tail_tol = 1e-6;
    i64 cap = 2000000; // dual terms per n0
};
report::Run voronoi_verify(const VoronoiParams& p);

struct AfeParams {
    std::string form = "d3";
    std::vector<double> t{30};
    double tol = 1e-3;
};
report::Run afe_eval(const AfeParams& p);

struct MomentParams {
    std::string form = "d3";
    std::vector<double> t{200, 1000, 5000};
    std::string m_rule = "t^{2/3}"; // or a number
    std::string mode = "direct_zeta3";
    double max_slope = 1.40;
};
report::Run moment_scan(const MomentParams& p);

struct DualityParams {
    int trials = 1000;
    int max_dim = 50;
    int samples = 20; // random unit beta per trial
    std::uint64_t seed = 1;
};
report::Run duality_test(const DualityParams& p);

} // namespace gl3lab::verify
