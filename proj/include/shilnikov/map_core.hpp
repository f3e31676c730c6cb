#ifndef SHILNIKOV_MAP_CORE_HPP
#define SHILNIKOV_MAP_CORE_HPP

#include <utility>
#include <vector>

#include "shilnikov/linalg.hpp"

// The 3D piecewise-linear normal form map
//
//   X_{n+1} = A_l X_n + mu C   (x_n <= 0)
//   X_{n+1} = A_r X_n + mu C   (x_n >= 0)
//
// with companion matrices parameterized per side by (trace, second trace,
// determinant) and C = (1, 0, 0). The two branches agree on the border x = 0.

namespace shilnikov {

using State3 = Vec3;

inline constexpr Vec3 kBorderNormalColumn{1.0, 0.0, 0.0}; // C

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

/// Companion-matrix coefficients of one side: trace, second trace, determinant.
struct CompanionCoeffs {
    double tau = 0.0;
    double sigma = 0.0;
    double delta = 0.0;
};

struct PwlParams {
    double tau_l = 0.0, sigma_l = 0.0, delta_l = 0.0;
    double tau_r = 0.0, sigma_r = 0.0, delta_r = 0.0;
    double mu = 0.0;

    CompanionCoeffs coeffs(Side s) const {
        return s == Side::Left ? CompanionCoeffs{tau_l, sigma_l, delta_l}
                               : CompanionCoeffs{tau_r, sigma_r, delta_r};
    }

    /// Throws on delta == 0 (singular side matrix) or mu == 0.
    void validate() const;
};

struct FixedPointInfo {
    State3 location;
    Side side = Side::Left;
    bool admissible = false;
};

/// X -> A X + b.
struct AffineMap3 {
    Mat3 A;
    Vec3 b;

    Vec3 operator()(const Vec3& X) const { return A * X + b; }
};

Mat3 companion_matrix(const CompanionCoeffs& c);

/// (A_l, A_r) per the normal-form template; det(A_s) = delta_s.
std::pair<Mat3, Mat3> build_matrices(const PwlParams& p);

Mat3 side_matrix(const PwlParams& p, Side s);

/// One application of the normal form map. The branches coincide at x = 0.
State3 step(const PwlParams& p, const State3& X);

AffineMap3 side_map(const PwlParams& p, Side s);

/// Inverse of one side's affine branch: Y -> A_s^{-1}(Y - mu C).
AffineMap3 inverse_side_map(const PwlParams& p, Side s);

/// (L*, R*) from the closed form mu/(1 - tau + sigma - delta) (1, -sigma+delta, delta).
/// Throws DegenerateFixedPointError when a denominator vanishes (eigenvalue 1).
std::pair<FixedPointInfo, FixedPointInfo> fixed_points(const PwlParams& p);

/// Whether X lies in the (closed) region of side s.
inline bool in_region(Side s, const State3& X) {
    return s == Side::Left ? X.x <= 0.0 : X.x >= 0.0;
}

/// All consistent preimages of X: candidate A_s^{-1}(X - mu C) is included iff
/// it lies in region s. 0, 1 or 2 entries.
std::vector<State3> inverse_step(const PwlParams& p, const State3& X);

/// Side selection including the border tie chain used by the interpolation:
/// x < 0 left, x > 0 right; at x = 0 by sign of y + mu, then z + mu, then mu.
/// Throws UnresolvableSideError only when the whole chain is exhausted (mu = 0).
Side resolve_side(const PwlParams& p, const State3& X);

} // namespace shilnikov

#endif
