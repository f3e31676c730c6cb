#ifndef SHILNIKOV_RETURN_TIME_HPP
#define SHILNIKOV_RETURN_TIME_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <utility>

#include "shilnikov/linalg.hpp"
#include "shilnikov/map_core.hpp"
#include "shilnikov/spectral.hpp"

// Border-return-time machinery. In the eigenbasis the x-coordinate of the
// interpolated one-sided orbit is
//
//   f(t) = Re[ c1 l1^t + c2 l2^t + c3 l3^t ] + c0,
//   c_i  = p_{1i} (xi0_i + beta_i / (l_i - 1)),   c0 = -sum p_{1i} beta_i / (l_i - 1),
//
// with xi0 = P^{-1} X0 and beta = P^{-1} b for the affine map X -> A X + b.
// With one positive real eigenvalue l1 and a conjugate pair r0 e^{+-i th0}
// this reduces to  f(t) = a1 l1^t + 2 a2 cos(t th0 + phase) r0^t + a3.

namespace shilnikov {

struct ReturnTimeModel {
    // raw form, always valid
    std::array<Complex, 3> eigenvalues{};
    std::array<Complex, 3> log_eigenvalues{};
    std::array<Complex, 3> coeffs{};
    double constant = 0.0; // c0 (= alpha3 in the reduced form)

    // reduced oscillatory form, present when the spectrum is one positive
    // real eigenvalue plus a conjugate pair
    bool oscillatory = false;
    double alpha1 = 0.0;  // coefficient of lambda1^t
    double lambda1 = 0.0; // the positive real eigenvalue
    double alpha2 = 0.0;  // amplitude |c_pair| >= 0
    double phase = 0.0;   // arg(c_pair)
    double r0 = 0.0;      // pair modulus
    double theta0 = 0.0;  // pair argument, in (0, pi]

    double alpha3() const { return constant; }

    /// Saddle-focus canonical form: growth in the real eigenvalue.
    bool saddle_focus_canonical() const { return oscillatory && lambda1 > 1.0 && r0 < 1.0; }

    double evaluate(double t) const;
};

/// Model of the x-coordinate of the interpolated orbit of `map` (whose matrix
/// has eigen data `spec`) started at X0. X0 must lie on the border x = 0
/// (NotOnBorderError otherwise), making f(0) = 0.
ReturnTimeModel build_return_model(const AffineMap3& map, const SpectralData& spec,
                                   const State3& X0);

/// Forward one-sided travel model for the given side of the normal form map.
ReturnTimeModel build_return_model(const PwlParams& p, Side side, const State3& X0);

/// Same construction without the border requirement; f(0) = x0 (the "modified
/// equation" of the flip case).
ReturnTimeModel build_return_model_general(const AffineMap3& map, const SpectralData& spec,
                                           const State3& X0);

/// g(t) = a1 k1^t + a2 k2^t + a3 with k1 > 1 > k2 > 0.
struct ExpPolynomial {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;
    double kappa1 = 2.0, kappa2 = 0.5;

    double evaluate(double t) const;
};

/// f+ (cosine replaced by +1) and f- (by -1); requires the oscillatory
/// reduction with {lambda1, r0} straddling 1 so both envelopes have the
/// g-form. Throws WrongSpectralTypeError otherwise.
std::pair<ExpPolynomial, ExpPolynomial> envelopes(const ReturnTimeModel& model);

struct RootBracket {
    double t_lower = 0.0; // extremum-based when applicable, else 0
    double t_upper = 0.0; // max(t0, 0); 0 when no positive root is possible
    int sign_changes = 0; // over the exponent-ordered sequence (a1, a3, a2)
    int max_roots = 0;
    bool parity_over_reals = true; // Z and sigma agree mod 2 over all of R
};

/// Descartes-type bound. Coefficients are ordered by decreasing exponent
/// (ln k1 > 0 > ln k2), i.e. the sequence (a1, a3, a2); zeros are skipped.
RootBracket descartes_bound(const ExpPolynomial& g);

/// t0 = ln((|a2| + |a3|)/|a1|) / ln(k1): no root of g in [max(t0, 0), inf).
/// +inf when a1 = 0 (no growing term to dominate).
double upper_bound_t0(const ExpPolynomial& g);

/// Unique extremum t* = ln(-a2 ln k2 / (a1 ln k1)) / ln(k1/k2); absent when
/// the logarithm's argument is non-positive (equivalently a1 a2 <= 0).
std::optional<double> extremum_t_star(const ExpPolynomial& g);

enum class CrossingDirection {
    Any,          // any sign change of f
    FromNegative, // f passes from < 0 to >= 0
    FromPositive,
};

struct RootSearch {
    double epsilon = 1e-6;  // excludes the trivial root at t = 0
    double step = 0.0;      // 0: auto, min(0.25, pi / (8 max|Im ln lambda|))
    double bisect_tol = 1e-10;
    CrossingDirection direction = CrossingDirection::Any;
};

/// Smallest t in (epsilon, t_max] with f(t) = 0, by uniform sampling plus
/// bisection; absent when no qualifying sign change is detected.
std::optional<double> least_positive_root(const ReturnTimeModel& model, double t_max,
                                          const RootSearch& opts = {});

/// Diagnostic rows (t, f, f+, f-) for plotting; requires envelopes.
void write_return_time_csv(std::ostream& os, const ReturnTimeModel& model, double t_max,
                           double dt);

} // namespace shilnikov

#endif
