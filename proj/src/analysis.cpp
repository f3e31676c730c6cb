#include "shilnikov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "shilnikov/csv.hpp"
#include "shilnikov/errors.hpp"
#include "shilnikov/homoclinic.hpp"

namespace shilnikov {

namespace {

// Modified Gram-Schmidt on the columns of Q; returns the diagonal stretch
// factors.
std::array<double, 3> orthonormalize(Mat3& Q) {
    std::array<double, 3> r{};
    for (int j = 0; j < 3; ++j) {
        Vec3 v{Q(0, j), Q(1, j), Q(2, j)};
        for (int i = 0; i < j; ++i) {
            const Vec3 u{Q(0, i), Q(1, i), Q(2, i)};
            v = v - dot(u, v) * u;
        }
        r[j] = norm(v);
        v = v / r[j];
        for (int k = 0; k < 3; ++k) Q(k, j) = v[k];
    }
    return r;
}

const Mat3& jacobian_at(const Mat3& Al, const Mat3& Ar, const State3& X) {
    return X.x <= 0.0 ? Al : Ar; // border uses the left matrix
}

} // namespace

std::array<double, 3> lyapunov_spectrum(const PwlParams& p, const State3& X0, long n_iter,
                                        long n_transient) {
    const auto [Al, Ar] = build_matrices(p);
    State3 X = X0;
    Mat3 Q = Mat3::identity();
    for (long k = 0; k < n_transient; ++k) {
        Q = jacobian_at(Al, Ar, X) * Q;
        orthonormalize(Q);
        X = step(p, X);
        if (!finite(X)) throw DivergentOrbitError("lyapunov_spectrum: orbit diverged");
    }
    std::array<double, 3> acc{};
    for (long k = 0; k < n_iter; ++k) {
        Q = jacobian_at(Al, Ar, X) * Q;
        const auto r = orthonormalize(Q);
        for (int i = 0; i < 3; ++i) acc[i] += std::log(r[i]);
        X = step(p, X);
        if (!finite(X)) throw DivergentOrbitError("lyapunov_spectrum: orbit diverged");
    }
    for (double& v : acc) v /= static_cast<double>(n_iter);
    std::sort(acc.begin(), acc.end(), std::greater<>());
    return acc;
}

void set_param(PwlParams& p, const std::string& name, double value) {
    if (name == "tau_l") p.tau_l = value;
    else if (name == "sigma_l") p.sigma_l = value;
    else if (name == "delta_l") p.delta_l = value;
    else if (name == "tau_r") p.tau_r = value;
    else if (name == "sigma_r") p.sigma_r = value;
    else if (name == "delta_r") p.delta_r = value;
    else if (name == "mu") p.mu = value;
    else throw Error("unknown parameter name: " + name);
}

double get_param(const PwlParams& p, const std::string& name) {
    if (name == "tau_l") return p.tau_l;
    if (name == "sigma_l") return p.sigma_l;
    if (name == "delta_l") return p.delta_l;
    if (name == "tau_r") return p.tau_r;
    if (name == "sigma_r") return p.sigma_r;
    if (name == "delta_r") return p.delta_r;
    if (name == "mu") return p.mu;
    throw Error("unknown parameter name: " + name);
}

namespace {

ScanColumn scan_one(PwlParams p, const std::string& name, double value, const OrbitSpec& orbit) {
    ScanColumn col;
    col.value = value;
    set_param(p, name, value);

    State3 X = orbit.x0;
    for (long k = 0; k < orbit.n_transient && !col.diverged; ++k) {
        X = step(p, X);
        if (!finite(X)) col.diverged = true;
    }
    if (!col.diverged) {
        col.samples.reserve(orbit.n_samples);
        for (long k = 0; k < orbit.n_samples; ++k) {
            X = step(p, X);
            if (!finite(X)) {
                col.diverged = true;
                break;
            }
            col.samples.push_back(X.x);
        }
    }
    if (!col.diverged) {
        try {
            col.lyapunov1 = lyapunov_spectrum(p, X, 20000, 0)[0];
        } catch (const DivergentOrbitError&) {
            col.diverged = true;
        }
    }
    if (col.diverged) {
        col.samples.clear();
        col.lyapunov1 = std::numeric_limits<double>::quiet_NaN();
    }
    auto describe = [](auto&& fn) -> std::string {
        try {
            return to_string(fn().verdict);
        } catch (const Error& e) {
            return std::string("error:") + e.what();
        }
    };
    col.verdict_forward = describe([&] { return detect_forward(p, 10000); });
    col.verdict_backward = describe([&] { return detect_backward(p, 10000); });
    return col;
}

std::vector<double> sweep_values(const SweepSpec& s) {
    std::vector<double> v(std::max(1L, s.steps));
    if (v.size() == 1) {
        v[0] = s.from;
    } else {
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = s.from + (s.to - s.from) * static_cast<double>(i) /
                                static_cast<double>(v.size() - 1);
    }
    return v;
}

} // namespace

ScanResult bifurcation_scan(const PwlParams& p, const SweepSpec& sweep, const OrbitSpec& orbit,
                            int jobs) {
    ScanResult r;
    r.param_name = sweep.name;
    const std::vector<double> values = sweep_values(sweep);
    r.columns.resize(values.size());
#ifdef _OPENMP
    const int nthreads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
    for (long i = 0; i < static_cast<long>(values.size()); ++i)
        r.columns[i] = scan_one(p, sweep.name, values[i], orbit);
    return r;
}

ScanResult bifurcation_scan_serial(const PwlParams& p, const SweepSpec& sweep,
                                   const OrbitSpec& orbit) {
    ScanResult r;
    r.param_name = sweep.name;
    for (double v : sweep_values(sweep)) r.columns.push_back(scan_one(p, sweep.name, v, orbit));
    return r;
}

void write_scan_csv(std::ostream& os, const ScanResult& r) {
    os << r.param_name << ",sample_index,x,lyapunov1,diverged,verdict_forward,verdict_backward\n";
    for (const ScanColumn& c : r.columns) {
        if (c.samples.empty()) {
            os << fmt12(c.value) << ",,," << fmt12(c.lyapunov1) << ',' << (c.diverged ? 1 : 0)
               << ',' << c.verdict_forward << ',' << c.verdict_backward << '\n';
            continue;
        }
        for (std::size_t i = 0; i < c.samples.size(); ++i)
            os << fmt12(c.value) << ',' << i << ',' << fmt12(c.samples[i]) << ','
               << fmt12(c.lyapunov1) << ',' << (c.diverged ? 1 : 0) << ',' << c.verdict_forward
               << ',' << c.verdict_backward << '\n';
    }
}

namespace {

double basin_cell(const PwlParams& p, double x, double y, double z, long n_iter,
                  double ceiling) {
    State3 X{x, y, z};
    for (long k = 0; k < n_iter; ++k) {
        X = step(p, X);
        if (!finite(X)) return ceiling;
    }
    return std::min(norm(X), ceiling);
}

} // namespace

BasinRaster basin_raster(const PwlParams& p, const BasinSpec& spec, int jobs) {
    BasinRaster r;
    r.spec = spec;
    const long n = spec.resolution;
    r.cells.assign(n * n, 0.0);
#ifdef _OPENMP
    const int nthreads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
#endif
    for (long iy = 0; iy < n; ++iy) {
        const double y = spec.y_min + (spec.y_max - spec.y_min) * iy / double(n - 1);
        for (long ix = 0; ix < n; ++ix) {
            const double x = spec.x_min + (spec.x_max - spec.x_min) * ix / double(n - 1);
            r.cells[iy * n + ix] = basin_cell(p, x, y, spec.z_level, spec.n_iter, spec.ceiling);
        }
    }
    return r;
}

BasinRaster basin_raster_serial(const PwlParams& p, const BasinSpec& spec) {
    BasinRaster r;
    r.spec = spec;
    const long n = spec.resolution;
    r.cells.assign(n * n, 0.0);
    for (long iy = 0; iy < n; ++iy) {
        const double y = spec.y_min + (spec.y_max - spec.y_min) * iy / double(n - 1);
        for (long ix = 0; ix < n; ++ix) {
            const double x = spec.x_min + (spec.x_max - spec.x_min) * ix / double(n - 1);
            r.cells[iy * n + ix] = basin_cell(p, x, y, spec.z_level, spec.n_iter, spec.ceiling);
        }
    }
    return r;
}

long BasinRaster::count_below_ceiling() const {
    long c = 0;
    for (double v : cells)
        if (v < spec.ceiling) ++c;
    return c;
}

void write_raster(std::ostream& os, const BasinRaster& r) {
    os << "# basin raster\n";
    os << "# z_level " << fmt12(r.spec.z_level) << '\n';
    os << "# x_range " << fmt12(r.spec.x_min) << ' ' << fmt12(r.spec.x_max) << '\n';
    os << "# y_range " << fmt12(r.spec.y_min) << ' ' << fmt12(r.spec.y_max) << '\n';
    os << "# resolution " << r.spec.resolution << '\n';
    os << "# n_iter " << r.spec.n_iter << '\n';
    os << "# ceiling " << fmt12(r.spec.ceiling) << '\n';
    for (long iy = 0; iy < r.spec.resolution; ++iy) {
        for (long ix = 0; ix < r.spec.resolution; ++ix) {
            if (ix) os << ',';
            os << fmt12(r.at(iy, ix));
        }
        os << '\n';
    }
}

namespace {

double polyline_length(const std::vector<State3>& pts) {
    double L = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) L += norm(pts[i] - pts[i - 1]);
    return L;
}

// Insert exact border crossings so that every edge stays within one region.
std::vector<State3> split_at_border(const std::vector<State3>& pts) {
    std::vector<State3> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
            const State3& a = pts[i - 1];
            const State3& b = pts[i];
            if ((a.x < 0.0 && b.x > 0.0) || (a.x > 0.0 && b.x < 0.0)) {
                const double th = a.x / (a.x - b.x);
                out.push_back(a + th * (b - a));
            }
        }
        out.push_back(pts[i]);
    }
    return out;
}

} // namespace

ManifoldTrace trace_manifold_1d(const PwlParams& p, const FixedPointInfo& fp,
                                const SpectralData& spec, ManifoldDirection direction,
                                double arc_budget) {
    const int ri = single_real_index(spec);
    const double lam = spec.eigenvalues[ri].real();
    const bool unstable = direction == ManifoldDirection::Unstable;
    if (unstable && std::abs(lam) <= 1.0)
        throw WrongSpectralTypeError("trace_manifold_1d: real eigenvalue is not unstable");
    if (!unstable && std::abs(lam) >= 1.0)
        throw WrongSpectralTypeError("trace_manifold_1d: real eigenvalue is not stable");

    const Vec3 v = spec.eigenvectors[ri].real();
    const double eps = 1e-6 * (1.0 + norm(fp.location));
    const double stretch = unstable ? std::abs(lam) : 1.0 / std::abs(lam);

    constexpr int kSeedSamples = 1000;
    std::vector<State3> piece;
    piece.reserve(kSeedSamples + 1);
    for (int i = 0; i <= kSeedSamples; ++i) {
        const double s = eps * (1.0 + (stretch - 1.0) * i / double(kSeedSamples));
        piece.push_back(fp.location + s * v);
    }

    ManifoldTrace tr;
    piece = split_at_border(piece);
    tr.pieces.push_back(piece);
    tr.arc_length = polyline_length(piece);

    while (tr.arc_length < arc_budget) {
        std::vector<State3> next;
        next.reserve(piece.size());
        if (!unstable) {
            // backward tracing via consistent preimages
            std::vector<State3> cur;
            for (const State3& X : piece) {
                const auto pre = inverse_step(p, X);
                if (pre.size() > 1)
                    throw AmbiguousPreimageError("trace_manifold_1d: preimage branch fork");
                if (pre.empty()) {
                    if (cur.size() > 1) {
                        tr.pieces.push_back(split_at_border(cur));
                        tr.arc_length += polyline_length(tr.pieces.back());
                    }
                    cur.clear();
                    continue;
                }
                cur.push_back(pre[0]);
            }
            next = std::move(cur);
        } else {
            for (const State3& X : piece) {
                const State3 img = step(p, X);
                if (!finite(img)) throw OverflowDetectedError("trace_manifold_1d: overflow");
                next.push_back(img);
            }
        }
        if (next.size() < 2) break;
        next = split_at_border(next);
        tr.pieces.push_back(next);
        tr.arc_length += polyline_length(next);
        piece = std::move(next);
    }
    return tr;
}

void write_manifold_csv(std::ostream& os, const ManifoldTrace& t) {
    os << "piece,index,x,y,z\n";
    for (std::size_t pi = 0; pi < t.pieces.size(); ++pi)
        for (std::size_t i = 0; i < t.pieces[pi].size(); ++i) {
            const State3& X = t.pieces[pi][i];
            os << pi << ',' << i << ',' << fmt12(X.x) << ',' << fmt12(X.y) << ','
               << fmt12(X.z) << '\n';
        }
}

std::vector<CurveSample> companion_manifold(const PwlParams& p, const FixedPointInfo& fp,
                                            const SpectralData& spec,
                                            const std::vector<double>& t_grid) {
    const State3 X0 = border_touch(fp, spec);
    const Interpolator interp(p);
    std::vector<CurveSample> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back({t, interp.companion_orbit_extended(X0, t)});
    return out;
}

} // namespace shilnikov
