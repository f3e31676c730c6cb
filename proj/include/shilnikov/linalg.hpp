#ifndef SHILNIKOV_LINALG_HPP
#define SHILNIKOV_LINALG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

// Fixed-size 3-vector / 3x3-matrix algebra, real and complex. Everything in
// this project is 3-dimensional, so no general linear algebra dependency.

namespace shilnikov {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

struct CVec3 {
    Complex x{}, y{}, z{};

    Complex& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    Complex operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    CVec3 operator*(const Complex& s) const { return {x * s, y * s, z * s}; }

    Vec3 real() const { return {x.real(), y.real(), z.real()}; }
    Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
};

inline CVec3 complexify(const Vec3& v) { return {Complex(v.x), Complex(v.y), Complex(v.z)}; }
inline double cnorm(const CVec3& v) {
    return std::sqrt(std::norm(v.x) + std::norm(v.y) + std::norm(v.z));
}
inline bool finite(const CVec3& v) {
    return std::isfinite(v.x.real()) && std::isfinite(v.x.imag()) &&
           std::isfinite(v.y.real()) && std::isfinite(v.y.imag()) &&
           std::isfinite(v.z.real()) && std::isfinite(v.z.imag());
}

// Row-major 3x3.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static Mat3 identity() { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
    static Mat3 zero() { return {}; }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }
};

inline Vec3 operator*(const Mat3& A, const Vec3& v) {
    return {A(0, 0) * v.x + A(0, 1) * v.y + A(0, 2) * v.z,
            A(1, 0) * v.x + A(1, 1) * v.y + A(1, 2) * v.z,
            A(2, 0) * v.x + A(2, 1) * v.y + A(2, 2) * v.z};
}

inline Mat3 operator*(const Mat3& A, const Mat3& B) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j) + A(i, 2) * B(2, j);
    return r;
}

inline double det(const Mat3& A) {
    return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
           A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
           A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
}

// Cofactor inverse; caller checks det != 0.
inline Mat3 inverse(const Mat3& A) {
    const double d = det(A);
    Mat3 r;
    r(0, 0) = (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) / d;
    r(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) / d;
    r(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) / d;
    r(1, 0) = (A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2)) / d;
    r(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) / d;
    r(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) / d;
    r(2, 0) = (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0)) / d;
    r(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) / d;
    r(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / d;
    return r;
}

inline double max_abs(const Mat3& A) {
    double r = 0.0;
    for (double v : A.m) r = std::max(r, std::abs(v));
    return r;
}
inline bool finite(const Mat3& A) {
    for (double v : A.m)
        if (!std::isfinite(v)) return false;
    return true;
}

struct CMat3 {
    std::array<Complex, 9> m{};

    Complex& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    Complex operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static CMat3 identity() {
        CMat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }

    Mat3 real() const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i].real();
        return r;
    }
};

inline CVec3 operator*(const CMat3& A, const CVec3& v) {
    return {A(0, 0) * v.x + A(0, 1) * v.y + A(0, 2) * v.z,
            A(1, 0) * v.x + A(1, 1) * v.y + A(1, 2) * v.z,
            A(2, 0) * v.x + A(2, 1) * v.y + A(2, 2) * v.z};
}

inline CMat3 operator*(const CMat3& A, const CMat3& B) {
    CMat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = A(i, 0) * B(0, j) + A(i, 1) * B(1, j) + A(i, 2) * B(2, j);
    return r;
}

inline Complex det(const CMat3& A) {
    return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
           A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
           A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
}

inline CMat3 inverse(const CMat3& A) {
    const Complex d = det(A);
    CMat3 r;
    r(0, 0) = (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) / d;
    r(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) / d;
    r(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) / d;
    r(1, 0) = (A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2)) / d;
    r(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) / d;
    r(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) / d;
    r(2, 0) = (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0)) / d;
    r(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) / d;
    r(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / d;
    return r;
}

inline double max_abs(const CMat3& A) {
    double r = 0.0;
    for (const Complex& v : A.m) r = std::max(r, std::abs(v));
    return r;
}

} // namespace shilnikov

#endif
