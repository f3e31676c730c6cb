#ifndef SHILNIKOV_HOMOCLINIC_HPP
#define SHILNIKOV_HOMOCLINIC_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shilnikov/map_core.hpp"
#include "shilnikov/spectral.hpp"

// The five-step transverse homoclinic-intersection detector: launch at the
// point where the 1-dimensional eigenmanifold touches the border, iterate
// through the far region until the x sign flips, then test whether the
// crossing segment straddles the complementary 2-dimensional eigenplane of
// the launching fixed point and where the segment-plane intersection lies.

namespace shilnikov {

enum class Verdict {
    IntersectionFound,
    NoCrossingWithinBound,
    CrossedButNoIntersection,
    WrongRegionIntersection,
};

const char* to_string(Verdict v);

struct HomoclinicTrace {
    State3 P0;                    // border touch point of the 1-d manifold
    State3 first_fold;            // P_1
    long crossing_index = 0;      // n: last iterate before the border re-cross
    State3 P_n, P_n_plus_1;
    EigenPlane plane;             // tested 2-d eigenplane
    std::pair<double, double> side_products{0.0, 0.0}; // plane evaluations at P_n, P_{n+1}
    std::optional<State3> intersection_point;
    bool intersection_in_fp_region = false;
    Verdict verdict = Verdict::NoCrossingWithinBound;

    Side launch_side = Side::Left;
    bool backward = false;
    std::vector<std::pair<State3, double>> iterates; // (P_k, plane evaluation)

    std::string to_report() const;     // key: value lines
    void to_csv(std::ostream& os) const; // one row per iterate
};

/// Point where the line through fp along the single real eigendirection meets
/// x = 0. Throws ParallelToBorderError when that direction has zero first
/// component, WrongSpectralTypeError when there is no unique real direction.
State3 border_touch(const FixedPointInfo& fp, const SpectralData& spec);

/// Segment-plane intersection when e(A) and e(B) have opposite signs.
State3 segment_plane_intersection(const EigenPlane& plane, const State3& A, const State3& B);

/// Forward detector: launches from the admissible fixed point whose spectrum
/// is saddle-focus (real eigenvalue > 1, contracting pair); left side
/// preferred. Verdict requires the transversal straddle and the intersection
/// point in the launching fixed point's region.
HomoclinicTrace detect_forward(const PwlParams& p, long n_cap);
HomoclinicTrace detect_forward_from(const PwlParams& p, Side launch, long n_cap);

/// Flip variant: real unstable eigenvalue < -1. The first two iterates flip
/// within the launching region and are exempt from the crossing test.
HomoclinicTrace detect_flip_forward(const PwlParams& p, long n_cap);
HomoclinicTrace detect_flip_forward_from(const PwlParams& p, Side launch, long n_cap);

/// Backward detector (inverse map): traces the 1-dimensional stable manifold
/// of the fixed point with a real stable eigenvalue backward through the
/// opposite region and tests the straddle of the 2-dimensional unstable
/// eigenplane. The verdict is decided by the transversal straddle; the
/// intersection point and its region flag are recorded in the trace.
HomoclinicTrace detect_backward(const PwlParams& p, long n_cap);
HomoclinicTrace detect_backward_from(const PwlParams& p, Side target, long n_cap);

struct NecessaryCondition {
    bool holds = false;
    long k_bound = 0;
    std::optional<long> k_witness;
    bool analytic_bound = false; // false: fallback cap, "no analytic bound"
    double t0 = 0.0;             // envelope bound (meaningful when analytic)
};

/// Theorem-style necessary condition for a first-return transverse
/// intersection: exists k <= ceil(t0) + 2 with consecutive plane evaluations
/// of opposite sign. Handles both the flip-unstable orientation (forward) and
/// the time-reversed orientation of the motivating example (backward).
NecessaryCondition necessary_condition(const PwlParams& p);

/// ceil(t0) + 2 when the envelope bound exists (plus one oscillation period
/// when the growing exponential is the oscillatory pair), else 10^4.
long default_cap(const PwlParams& p);

} // namespace shilnikov

#endif
