#include "shilnikov/power_recursion.hpp"

#include <cmath>

#include "shilnikov/errors.hpp"

namespace shilnikov {

RecursionState initial_state(const CompanionCoeffs& c) {
    if (c.delta == 0.0) throw SingularMatrixError("power recursion: delta = 0");
    return {c, 0, {1.0, 0.0, 0.0, 1.0 / c.delta}};
}

RecursionState advance(const RecursionState& s) {
    const auto& [tau, sigma, delta] = s.coeffs;
    const double next = tau * s.window[0] - sigma * s.window[1] + delta * s.window[2];
    return {s.coeffs, s.n + 1, {next, s.window[0], s.window[1], s.window[2]}};
}

double window_back(const RecursionState& s) {
    return (s.window[1] - s.coeffs.tau * s.window[2] + s.coeffs.sigma * s.window[3]) /
           s.coeffs.delta;
}

namespace {

Mat3 assemble_power(const RecursionState& s) {
    const double sigma = s.coeffs.sigma, delta = s.coeffs.delta;
    const double a0 = s.window[0], a1 = s.window[1], a2 = s.window[2], a3 = s.window[3];
    const double a4 = window_back(s);
    Mat3 A;
    A(0, 0) = a0;
    A(0, 1) = a1;
    A(0, 2) = a2;
    A(1, 0) = delta * a2 - sigma * a1;
    A(1, 1) = delta * a3 - sigma * a2;
    A(1, 2) = delta * a4 - sigma * a3;
    A(2, 0) = delta * a1;
    A(2, 1) = delta * a2;
    A(2, 2) = delta * a3;
    return A;
}

} // namespace

Mat3 matrix_power(const CompanionCoeffs& c, long n) {
    RecursionState s = initial_state(c);
    for (long k = 0; k < n; ++k) s = advance(s);
    const Mat3 A = assemble_power(s);
    if (!finite(A)) throw OverflowDetectedError("matrix_power: non-finite entries");
    return A;
}

GeomSumState geometric_sum_advance(const GeomSumState& gs, const Mat3& A) {
    return {A * gs.S + Mat3::identity(), gs.n + 1};
}

State3 orbit_point(const PwlParams& p, Side side, const State3& P0, long n) {
    const CompanionCoeffs c = p.coeffs(side);
    const Mat3 A = companion_matrix(c);
    RecursionState rs = initial_state(c);
    GeomSumState gs;
    for (long k = 0; k < n; ++k) {
        rs = advance(rs);
        gs = geometric_sum_advance(gs, A);
    }
    const Mat3 An = assemble_power(rs);
    // S_n C is the first column of S_n.
    const Vec3 sc{gs.S(0, 0), gs.S(1, 0), gs.S(2, 0)};
    const State3 P = An * P0 + p.mu * sc;
    if (!finite(P)) throw OverflowDetectedError("orbit_point: non-finite result");
    return P;
}

} // namespace shilnikov
