#ifndef SHILNIKOV_INTERPOLATION_HPP
#define SHILNIKOV_INTERPOLATION_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "shilnikov/linalg.hpp"
#include "shilnikov/map_core.hpp"
#include "shilnikov/spectral.hpp"

// Complex interpolation F^t of the discrete system: A^t := exp(t ln A) with
// the principal logarithm, evaluated in the eigenbasis. The interpolation
// agrees with the map at integer t; the real part gives a continuous curve.

namespace shilnikov {

using ComplexState3 = CVec3;

/// Precomputed eigen data of one side plus principal logs of the eigenvalues.
struct DiagonalPower {
    SpectralData spec;
    std::array<Complex, 3> log_eigenvalues{};
};

/// Throws SingularMatrixError on a zero eigenvalue, DegenerateFixedPointError
/// on an eigenvalue 1 (A - I not invertible).
DiagonalPower make_diagonal_power(const SpectralData& spec);

/// A^t = P diag(exp(t ln lambda_i)) P^{-1}.
CMat3 matrix_power_t(const DiagonalPower& dp, double t);

/// (A - I)^{-1} (A^t - I) = P diag((lambda_i^t - 1)/(lambda_i - 1)) P^{-1}.
CMat3 geometric_factor_t(const DiagonalPower& dp, double t);

/// Largest |Im ln lambda| — the fastest oscillation frequency of A^t.
double max_log_frequency(const DiagonalPower& dp);

class Interpolator {
public:
    explicit Interpolator(const PwlParams& params);

    const PwlParams& params() const { return params_; }
    const DiagonalPower& side_power(Side s) const {
        return s == Side::Left ? left_ : right_;
    }

    /// F^t(X0) for t in [0, 1]; side chosen by the border tie chain.
    ComplexState3 companion_orbit(const State3& X0, double t) const;

    /// F^t(X0) for any t >= 0: floor(t) discrete steps, then the fractional
    /// interpolation on the remainder.
    ComplexState3 companion_orbit_extended(const State3& X0, double t) const;

private:
    PwlParams params_;
    DiagonalPower left_, right_;
};

struct CurveSample {
    double t = 0.0;
    ComplexState3 value;
};

/// Samples Re/Im of the extended interpolation on [0, t_max] at step dt.
std::vector<CurveSample> sample_companion_curve(const Interpolator& interp, const State3& X0,
                                                double t_max, double dt = 0.01);

/// CSV rows (t, Re x, Re y, Re z, Im x, Im y, Im z), 12 significant digits.
void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& curve);

} // namespace shilnikov

#endif
