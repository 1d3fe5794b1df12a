#pragma once

// Regression constants recorded on the first run, each with the grid that produced it.
// Re-runs on the same grid must reproduce them to 1e-6 relative.

namespace gl3lab::frozen {

// delta: Q = 20, default config; q = 1..20, x = +-0.1 * 1.05^k up to Q^0.3
inline constexpr double kDeltaEnvelope = 8.0570132676462105;  // max |dg/dx| / envelope
inline constexpr double kDeltaMaxAbsG = 1.5497255259206553;   // max |g|
inline constexpr double kDeltaGOverLogQ = 0.51731108937920423; // max |g| / log Q

// charsum: bound_audit(c = 5..150, 1000 samples per class, seed 7)
inline constexpr double kAuditGeneric = 9.2986997749550326;    // max |C| / c^{3/2}, at c = 109
inline constexpr double kAuditDegenerate = 2.295075663167045;  // max |C| / c^2, at c = 47

// gl3: max over x in {1e2, 1e3, 1e4, 1e5} of ramanujan_average(x) / (log x)^8
inline constexpr double kRamanujanD3 = 0.0033421519418812889;
inline constexpr double kRamanujanSym2 = 2.8016020715689825e-06;

// moment: shifted-sum majorant / (M H N (log N)^4) on d3, N in {500, 2000}, H = N/50, M = 40,
// t = 3N, both signs; max was 0.6824
inline constexpr double kShiftedTrivial = 0.7;

// moment: d3, direct_zeta3, M = t^{2/3}, t in {200, 1e3, 5e3}, rel_tol 1e-4
inline constexpr double kMomentLadder[] = {125669.80065566754, 2213686.9560229587, 28766155.823639188};
inline constexpr double kMomentLadderSlope = 1.6879486157053629;
// single C for I <= C t^{5/4} (log t)^3 on that ladder; ratios were 1.123, 1.194, 1.107
inline constexpr double kMomentEnvelopeC = 1.2;

// moment: short_moment_inequality on d3 at t = 50, direct_zeta3
inline constexpr double kShortMomentC50 = 1.4196000626412323e-05;

} // namespace gl3lab::frozen
