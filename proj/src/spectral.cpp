#include "shilnikov/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "shilnikov/errors.hpp"

namespace shilnikov {

namespace {

// Roots of z^3 - tau z^2 + sigma z - delta, complex Cardano on the depressed
// cubic u^3 + p u + q, u = z - tau/3.
std::array<Complex, 3> cubic_roots(double tau, double sigma, double delta) {
    const double p = sigma - tau * tau / 3.0;
    const double q = -delta + tau * sigma / 3.0 - 2.0 * tau * tau * tau / 27.0;

    std::array<Complex, 3> u;
    if (p == 0.0 && q == 0.0) {
        u = {0.0, 0.0, 0.0};
    } else {
        const Complex disc = std::sqrt(Complex(q * q / 4.0 + p * p * p / 27.0));
        Complex w3 = -q / 2.0 + disc;
        if (std::abs(w3) < 1e-3 * std::abs(Complex(-q / 2.0) - disc)) w3 = -q / 2.0 - disc;
        const Complex w = std::pow(w3, 1.0 / 3.0);
        const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
        for (int k = 0; k < 3; ++k) {
            const Complex wk = w * (k == 0 ? Complex(1.0) : (k == 1 ? omega : std::conj(omega)));
            u[k] = wk - p / (3.0 * wk);
        }
    }

    std::array<Complex, 3> z;
    for (int k = 0; k < 3; ++k) {
        z[k] = u[k] + tau / 3.0;
        // one Newton step on the original cubic
        const Complex f = ((z[k] - tau) * z[k] + sigma) * z[k] - delta;
        const Complex df = (3.0 * z[k] - 2.0 * tau) * z[k] + sigma;
        if (std::abs(df) > 0.0) z[k] -= f / df;
    }
    return z;
}

CVec3 companion_eigenvector(double tau, double sigma, const Complex& lambda) {
    CVec3 v{1.0, lambda - tau, (lambda - tau) * lambda + sigma};
    const double n = cnorm(v);
    return {v.x / n, v.y / n, v.z / n};
}

SpectralData assemble(double tau, double sigma, const std::array<Complex, 3>& ordered) {
    SpectralData s;
    s.eigenvalues = ordered;
    for (int i = 0; i < 3; ++i) {
        s.eigenvectors[i] = companion_eigenvector(tau, sigma, ordered[i]);
        for (int r = 0; r < 3; ++r) s.base_change(r, i) = s.eigenvectors[i][r];
    }
    s.inverse_base_change = inverse(s.base_change);
    return s;
}

std::array<Complex, 3> canonical_order(std::array<Complex, 3> z) {
    double scale = 1.0;
    for (const Complex& r : z) scale = std::max(scale, std::abs(r));

    // Real cubic: either three real roots or one real + conjugate pair.
    // Roots with |Im| below the repeated-root tolerance are treated as real
    // (a would-be pair that close to the axis is within the repeated-root
    // distance of itself anyway).
    const double imag_tol = 1e-9 * scale;
    int n_real = 0;
    for (Complex& r : z)
        if (std::abs(r.imag()) <= imag_tol) {
            r = Complex(r.real(), 0.0);
            ++n_real;
        }

    std::array<Complex, 3> out;
    if (n_real >= 3) {
        std::sort(z.begin(), z.end(),
                  [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
        out = z;
    } else {
        int ri = 0;
        for (int i = 0; i < 3; ++i)
            if (z[i].imag() == 0.0) ri = i;
        Complex pair{};
        for (int i = 0; i < 3; ++i)
            if (i != ri && z[i].imag() > 0.0) pair = z[i];
        if (pair == Complex{}) { // numeric safety: synthesize from either member
            for (int i = 0; i < 3; ++i)
                if (i != ri) pair = Complex(z[i].real(), std::abs(z[i].imag()));
        }
        out = {z[ri], pair, std::conj(pair)};
    }
    return out;
}

} // namespace

bool has_complex_pair(const SpectralData& s) { return s.eigenvalues[1].imag() != 0.0; }

int single_real_index(const SpectralData& s) {
    if (!has_complex_pair(s))
        throw WrongSpectralTypeError("single_real_index: all eigenvalues are real");
    return 0;
}

SpectralData eigen3(double tau, double sigma, double delta) {
    if (delta == 0.0) throw SingularMatrixError("eigen3: delta = 0");
    std::array<Complex, 3> z = cubic_roots(tau, sigma, delta);

    double scale = 1.0;
    for (const Complex& r : z) scale = std::max(scale, std::abs(r));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(z[i] - z[j]) < 1e-8 * scale)
                throw RepeatedEigenvalueError("eigen3: repeated eigenvalue");

    return assemble(tau, sigma, canonical_order(z));
}

SpectralData eigen3(const CompanionCoeffs& c) { return eigen3(c.tau, c.sigma, c.delta); }

SpectralData eigen_side(const PwlParams& p, Side s) { return eigen3(p.coeffs(s)); }

SpectralData inverse_spectrum(const SpectralData& s) {
    std::array<Complex, 3> inv;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(s.eigenvalues[i]) == 0.0)
            throw SingularMatrixError("inverse_spectrum: zero eigenvalue");
        inv[i] = 1.0 / s.eigenvalues[i];
    }
    SpectralData out;
    if (has_complex_pair(s)) {
        // 1/(r e^{i th}) has argument -th: the pair swaps places.
        out.eigenvalues = {inv[0], inv[2], inv[1]};
        out.eigenvectors = {s.eigenvectors[0], s.eigenvectors[2], s.eigenvectors[1]};
    } else {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return inv[a].real() > inv[b].real(); });
        for (int i = 0; i < 3; ++i) {
            out.eigenvalues[i] = inv[idx[i]];
            out.eigenvectors[i] = s.eigenvectors[idx[i]];
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 3; ++r) out.base_change(r, i) = out.eigenvectors[i][r];
    out.inverse_base_change = inverse(out.base_change);
    return out;
}

const char* to_string(FpKind k) {
    switch (k) {
    case FpKind::SaddleFocusUnstableReal: return "saddle-focus-unstable-real";
    case FpKind::FlipSaddle: return "flip-saddle";
    case FpKind::RegularSaddle: return "regular-saddle";
    case FpKind::Attractor: return "attractor";
    case FpKind::Repeller: return "repeller";
    case FpKind::Other: return "other";
    }
    return "?";
}

FpClass classify(const SpectralData& s) {
    FpClass c;
    bool hyperbolic = true;
    for (const Complex& l : s.eigenvalues) {
        const double m = std::abs(l);
        if (std::abs(m - 1.0) < 1e-9) hyperbolic = false;
        if (m > 1.0) ++c.unstable_count;
    }
    if (!hyperbolic) {
        c.kind = FpKind::Other;
        return c;
    }
    if (c.unstable_count == 0) {
        c.kind = FpKind::Attractor;
        return c;
    }
    if (c.unstable_count == 3) {
        c.kind = FpKind::Repeller;
        return c;
    }
    if (has_complex_pair(s)) {
        const double lr = s.eigenvalues[0].real();
        const double pm = std::abs(s.eigenvalues[1]);
        if (lr > 1.0 && pm < 1.0)
            c.kind = FpKind::SaddleFocusUnstableReal;
        else if (lr < 0.0 && ((lr > -1.0 && pm > 1.0) || (lr < -1.0 && pm < 1.0)))
            c.kind = FpKind::FlipSaddle;
        else
            c.kind = FpKind::RegularSaddle;
    } else {
        c.kind = FpKind::RegularSaddle;
    }
    return c;
}

EigenPlane invariant_plane(const SpectralData& s, const FixedPointInfo& fp, PlaneSelect which) {
    std::array<int, 3> sel{};
    int n_sel = 0;
    for (int i = 0; i < 3; ++i) {
        const double m = std::abs(s.eigenvalues[i]);
        if ((which == PlaneSelect::Stable && m < 1.0) || (which == PlaneSelect::Unstable && m > 1.0))
            sel[n_sel++] = i;
    }
    if (n_sel != 2)
        throw WrongSpectralTypeError("invariant_plane: selected eigenspace is not 2-dimensional");

    Vec3 n;
    if (has_complex_pair(s) && sel[0] == 1 && sel[1] == 2) {
        const CVec3& v = s.eigenvectors[1];
        n = cross(v.real(), v.imag());
    } else if (!has_complex_pair(s)) {
        n = cross(s.eigenvectors[sel[0]].real(), s.eigenvectors[sel[1]].real());
    } else {
        // real + one member of the pair: not a real-invariant plane
        throw WrongSpectralTypeError("invariant_plane: selection mixes real and complex directions");
    }

    const double len = norm(n);
    if (len < 1e-12) throw DegeneratePlaneError("invariant_plane: parallel eigendirections");
    n = n / len;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(n[i]) > 1e-14) {
            if (n[i] < 0.0) n = -n;
            break;
        }
    }
    return {n, -dot(n, fp.location), fp.location};
}

} // namespace shilnikov
