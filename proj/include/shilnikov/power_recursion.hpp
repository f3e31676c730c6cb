#ifndef SHILNIKOV_POWER_RECURSION_HPP
#define SHILNIKOV_POWER_RECURSION_HPP

#include <array>

#include "shilnikov/linalg.hpp"
#include "shilnikov/map_core.hpp"

// A^n and orbit points via the scalar recursion
//
//   a_n = tau a_{n-1} - sigma a_{n-2} + delta a_{n-3},
//   a_0 = 1, a_{-1} = a_{-2} = 0, a_{-3} = 1/delta,
//
// from which A^n is assembled entrywise; the affine geometric sum
// S_n = I + A + ... + A^{n-1} is advanced incrementally as S_{n+1} = A S_n + I
// (equal to (A-I)^{-1}(A^n - I) when A - I is invertible).

namespace shilnikov {

struct RecursionState {
    CompanionCoeffs coeffs;
    long n = 0;
    // window[0] = a_n, window[1] = a_{n-1}, window[2] = a_{n-2}, window[3] = a_{n-3}
    std::array<double, 4> window{};
};

/// State at n = 0 with window (1, 0, 0, 1/delta). Throws SingularMatrixError.
RecursionState initial_state(const CompanionCoeffs& c);

/// One recursion step; returns the shifted window at n+1.
RecursionState advance(const RecursionState& s);

/// a_{n-4}, one backward application of the recursion (sigma/delta^2 at n = 0).
double window_back(const RecursionState& s);

/// A^n from the recursion window. n = 0 gives the identity.
/// Throws OverflowDetectedError when entries become non-finite.
Mat3 matrix_power(const CompanionCoeffs& c, long n);

struct GeomSumState {
    Mat3 S = Mat3::zero(); // empty sum at n = 0
    long n = 0;
};

GeomSumState geometric_sum_advance(const GeomSumState& gs, const Mat3& A);

/// P_n = A^n P0 + mu S_n C assuming every intermediate iterate stays on the
/// given side (the caller enforces this by stopping at the first crossing).
State3 orbit_point(const PwlParams& p, Side side, const State3& P0, long n);

} // namespace shilnikov

#endif
