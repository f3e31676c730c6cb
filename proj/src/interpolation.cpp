#include "shilnikov/interpolation.hpp"

#include <cmath>
#include <ostream>

#include "shilnikov/csv.hpp"
#include "shilnikov/errors.hpp"

namespace shilnikov {

DiagonalPower make_diagonal_power(const SpectralData& spec) {
    DiagonalPower dp;
    dp.spec = spec;
    for (int i = 0; i < 3; ++i) {
        const Complex l = spec.eigenvalues[i];
        if (std::abs(l) == 0.0)
            throw SingularMatrixError("make_diagonal_power: zero eigenvalue");
        if (std::abs(l - 1.0) < 1e-12)
            throw DegenerateFixedPointError("make_diagonal_power: eigenvalue 1");
        dp.log_eigenvalues[i] = std::log(l); // principal branch, Im in (-pi, pi]
    }
    return dp;
}

namespace {

CMat3 eigen_apply(const SpectralData& s, const std::array<Complex, 3>& diag) {
    CMat3 D;
    D(0, 0) = diag[0];
    D(1, 1) = diag[1];
    D(2, 2) = diag[2];
    return s.base_change * D * s.inverse_base_change;
}

} // namespace

CMat3 matrix_power_t(const DiagonalPower& dp, double t) {
    std::array<Complex, 3> d;
    for (int i = 0; i < 3; ++i) d[i] = std::exp(t * dp.log_eigenvalues[i]);
    return eigen_apply(dp.spec, d);
}

CMat3 geometric_factor_t(const DiagonalPower& dp, double t) {
    std::array<Complex, 3> d;
    for (int i = 0; i < 3; ++i) {
        const Complex l = dp.spec.eigenvalues[i];
        d[i] = (std::exp(t * dp.log_eigenvalues[i]) - 1.0) / (l - 1.0);
    }
    return eigen_apply(dp.spec, d);
}

double max_log_frequency(const DiagonalPower& dp) {
    double f = 0.0;
    for (const Complex& l : dp.log_eigenvalues) f = std::max(f, std::abs(l.imag()));
    return f;
}

Interpolator::Interpolator(const PwlParams& params)
    : params_(params),
      left_(make_diagonal_power(eigen_side(params, Side::Left))),
      right_(make_diagonal_power(eigen_side(params, Side::Right))) {}

ComplexState3 Interpolator::companion_orbit(const State3& X0, double t) const {
    const Side s = resolve_side(params_, X0);
    const DiagonalPower& dp = side_power(s);
    const CVec3 c = complexify(kBorderNormalColumn * params_.mu);
    return matrix_power_t(dp, t) * complexify(X0) + geometric_factor_t(dp, t) * c;
}

ComplexState3 Interpolator::companion_orbit_extended(const State3& X0, double t) const {
    if (t < 0.0) throw Error("companion_orbit_extended: t must be nonnegative");
    const double fl = std::floor(t);
    const double frac = t - fl;
    State3 X = X0;
    for (long k = 0; k < static_cast<long>(fl); ++k) {
        X = step(params_, X);
        if (!finite(X)) throw OverflowDetectedError("companion_orbit_extended: orbit overflow");
    }
    if (frac == 0.0) return complexify(X);
    return companion_orbit(X, frac);
}

std::vector<CurveSample> sample_companion_curve(const Interpolator& interp, const State3& X0,
                                                double t_max, double dt) {
    std::vector<CurveSample> out;
    const long n = static_cast<long>(std::floor(t_max / dt + 1e-9));
    out.reserve(n + 1);
    for (long k = 0; k <= n; ++k) {
        const double t = k * dt;
        out.push_back({t, interp.companion_orbit_extended(X0, t)});
    }
    return out;
}

void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& curve) {
    os << "t,re_x,re_y,re_z,im_x,im_y,im_z\n";
    for (const CurveSample& s : curve) {
        os << fmt12(s.t) << ',' << fmt12(s.value.x.real()) << ',' << fmt12(s.value.y.real())
           << ',' << fmt12(s.value.z.real()) << ',' << fmt12(s.value.x.imag()) << ','
           << fmt12(s.value.y.imag()) << ',' << fmt12(s.value.z.imag()) << '\n';
    }
}

} // namespace shilnikov
