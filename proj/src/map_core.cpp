#include "shilnikov/map_core.hpp"

#include <cmath>

#include "shilnikov/errors.hpp"

namespace shilnikov {

void PwlParams::validate() const {
    if (delta_l == 0.0 || delta_r == 0.0)
        throw SingularMatrixError("PwlParams: delta_l and delta_r must be nonzero");
    if (mu == 0.0) throw UnresolvableSideError("PwlParams: mu must be nonzero");
    for (double v : {tau_l, sigma_l, delta_l, tau_r, sigma_r, delta_r, mu})
        if (!std::isfinite(v)) throw Error("PwlParams: non-finite parameter");
}

Mat3 companion_matrix(const CompanionCoeffs& c) {
    Mat3 A;
    A(0, 0) = c.tau;
    A(0, 1) = 1.0;
    A(1, 0) = -c.sigma;
    A(1, 2) = 1.0;
    A(2, 0) = c.delta;
    return A;
}

std::pair<Mat3, Mat3> build_matrices(const PwlParams& p) {
    return {companion_matrix(p.coeffs(Side::Left)), companion_matrix(p.coeffs(Side::Right))};
}

Mat3 side_matrix(const PwlParams& p, Side s) { return companion_matrix(p.coeffs(s)); }

State3 step(const PwlParams& p, const State3& X) {
    const CompanionCoeffs c = p.coeffs(X.x <= 0.0 ? Side::Left : Side::Right);
    return {c.tau * X.x + X.y + p.mu, -c.sigma * X.x + X.z, c.delta * X.x};
}

AffineMap3 side_map(const PwlParams& p, Side s) {
    return {side_matrix(p, s), {p.mu, 0.0, 0.0}};
}

AffineMap3 inverse_side_map(const PwlParams& p, Side s) {
    const CompanionCoeffs c = p.coeffs(s);
    if (c.delta == 0.0) throw SingularMatrixError("inverse_side_map: delta = 0");
    // Closed form: A^{-1} = [[0,0,1/d],[1,0,-t/d],[0,1,s/d]].
    Mat3 inv;
    inv(0, 2) = 1.0 / c.delta;
    inv(1, 0) = 1.0;
    inv(1, 2) = -c.tau / c.delta;
    inv(2, 1) = 1.0;
    inv(2, 2) = c.sigma / c.delta;
    return {inv, inv * Vec3{-p.mu, 0.0, 0.0}};
}

namespace {

FixedPointInfo fixed_point_of(const PwlParams& p, Side s) {
    const CompanionCoeffs c = p.coeffs(s);
    const double den = 1.0 - c.tau + c.sigma - c.delta;
    if (std::abs(den) < 1e-14 * (1.0 + std::abs(c.tau) + std::abs(c.sigma) + std::abs(c.delta)))
        throw DegenerateFixedPointError("fixed_points: eigenvalue 1 on side " +
                                        std::string(to_string(s)));
    const double f = p.mu / den;
    FixedPointInfo info;
    info.location = {f, f * (-c.sigma + c.delta), f * c.delta};
    info.side = s;
    info.admissible = in_region(s, info.location);
    return info;
}

} // namespace

std::pair<FixedPointInfo, FixedPointInfo> fixed_points(const PwlParams& p) {
    return {fixed_point_of(p, Side::Left), fixed_point_of(p, Side::Right)};
}

std::vector<State3> inverse_step(const PwlParams& p, const State3& X) {
    std::vector<State3> out;
    for (Side s : {Side::Left, Side::Right}) {
        const State3 cand = inverse_side_map(p, s)(X);
        if (in_region(s, cand)) out.push_back(cand);
    }
    return out;
}

Side resolve_side(const PwlParams& p, const State3& X) {
    if (X.x < 0.0) return Side::Left;
    if (X.x > 0.0) return Side::Right;
    if (X.y < -p.mu) return Side::Left;
    if (X.y > -p.mu) return Side::Right;
    if (X.z < -p.mu) return Side::Left;
    if (X.z > -p.mu) return Side::Right;
    if (p.mu < 0.0) return Side::Left;
    if (p.mu > 0.0) return Side::Right;
    throw UnresolvableSideError("resolve_side: point on the excluded line with mu = 0");
}

} // namespace shilnikov
