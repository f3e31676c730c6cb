#ifndef SHILNIKOV_TEST_SUPPORT_HPP
#define SHILNIKOV_TEST_SUPPORT_HPP

#include <cmath>
#include <random>

#include "shilnikov/map_core.hpp"

namespace shilnikov::test {

// Parameter set of the motivating example.
inline PwlParams section3_params() {
    return {1.0, -0.25, 0.3, 0.58, 0.38, -1.27, 1.0};
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double rel_err(const Vec3& got, const Vec3& want) {
    return norm(got - want) / std::max(1.0, norm(want));
}

/// Companion coefficients with prescribed roots: one real lambda and a
/// conjugate pair r e^{+-i th}.
inline CompanionCoeffs coeffs_from_roots(double lambda, double r, double th) {
    const double c = r * std::cos(th);
    return {lambda + 2.0 * c, r * r + 2.0 * lambda * c, lambda * r * r};
}

/// Toy system: left saddle-focus, right flip-unstable (both admissible for
/// mu = 1); used by the flip-forward and theorem-orientation tests.
inline PwlParams flip_toy_params() {
    const CompanionCoeffs l = coeffs_from_roots(1.3, 0.45, 2.0);
    const CompanionCoeffs r = coeffs_from_roots(-1.4, 0.5, 1.0);
    return {l.tau, l.sigma, l.delta, r.tau, r.sigma, r.delta, 1.0};
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long seed) : gen(seed) {}
    double uniform(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(gen);
    }
    bool coin() { return std::bernoulli_distribution(0.5)(gen); }
};

} // namespace shilnikov::test

#endif
