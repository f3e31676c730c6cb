#ifndef SHILNIKOV_SPECTRAL_HPP
#define SHILNIKOV_SPECTRAL_HPP

#include <array>

#include "shilnikov/linalg.hpp"
#include "shilnikov/map_core.hpp"

// Eigenstructure of the companion matrices. The characteristic cubic
// lambda^3 - tau lambda^2 + sigma lambda - delta is solved in closed form
// (complex Cardano) with one Newton polish per root; the eigenvector of
// lambda is (1, lambda - tau, lambda^2 - tau lambda + sigma), which follows
// from the companion structure.

namespace shilnikov {

struct SpectralData {
    // Ordering convention: one real root + conjugate pair -> [real, +Im, -Im];
    // three real roots -> descending.
    std::array<Complex, 3> eigenvalues{};
    std::array<CVec3, 3> eigenvectors{}; // unit norm, conjugate-symmetric
    CMat3 base_change;                   // P, columns = eigenvectors
    CMat3 inverse_base_change;           // P^{-1}
};

/// True when eigenvalues are one real plus a conjugate pair.
bool has_complex_pair(const SpectralData& s);

/// Index of the unique real eigenvalue (0 by convention); throws
/// WrongSpectralTypeError when all three are real.
int single_real_index(const SpectralData& s);

/// Spectral data of A^{-1}: inverted eigenvalues, same eigenvectors,
/// reordered to keep the [real, +Im, -Im] convention.
SpectralData inverse_spectrum(const SpectralData& s);

/// Eigen data of the companion matrix with the given coefficients.
/// Throws SingularMatrixError (delta = 0) or RepeatedEigenvalueError
/// (roots closer than 1e-8 max(1, |lambda|)).
SpectralData eigen3(double tau, double sigma, double delta);
SpectralData eigen3(const CompanionCoeffs& c);
SpectralData eigen_side(const PwlParams& p, Side s);

enum class FpKind {
    SaddleFocusUnstableReal, // real lambda > 1, contracting complex pair
    FlipSaddle,              // saddle with a negative real eigenvalue
    RegularSaddle,
    Attractor,
    Repeller,
    Other, // nonhyperbolic or unclassified
};

struct FpClass {
    FpKind kind = FpKind::Other;
    int unstable_count = 0; // #{ |lambda| > 1 }
};

const char* to_string(FpKind k);

FpClass classify(const SpectralData& s);

/// Plane a x + b y + c z + d = 0 through a fixed point.
struct EigenPlane {
    Vec3 normal;     // unit length, first nonzero component positive
    double offset = 0.0;
    State3 base_point;

    double evaluate(const State3& X) const { return dot(normal, X) + offset; }
};

enum class PlaneSelect { Stable, Unstable };

/// Invariant plane spanned by the two eigendirections on the requested side of
/// the unit circle: Re(V) x Im(V) for a conjugate pair, V_i x V_j for two real
/// directions. Throws WrongSpectralTypeError if the selection is not
/// 2-dimensional, DegeneratePlaneError if the directions are parallel.
EigenPlane invariant_plane(const SpectralData& s, const FixedPointInfo& fp, PlaneSelect which);

} // namespace shilnikov

#endif
