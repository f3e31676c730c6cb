#ifndef SHILNIKOV_ANALYSIS_HPP
#define SHILNIKOV_ANALYSIS_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "shilnikov/interpolation.hpp"
#include "shilnikov/map_core.hpp"
#include "shilnikov/spectral.hpp"

// Simulation instrumentation: Lyapunov spectra, bifurcation sweeps, basin
// rasters, manifold traces. Rasters and sweeps are data-parallel over
// cells/columns; each has an OpenMP kernel and a serial reference that must
// produce bit-identical output (compared in the tests and in tools/bench).

namespace shilnikov {

/// Tangent-space Lyapunov exponents: propagate an orthonormal frame by the
/// side-dependent Jacobian (left matrix on the border), re-orthonormalize each
/// step, average log stretch factors. Transient steps evolve orbit and frame
/// without accumulating. Sorted descending. Throws DivergentOrbitError.
std::array<double, 3> lyapunov_spectrum(const PwlParams& p, const State3& X0, long n_iter,
                                        long n_transient);

struct OrbitSpec {
    State3 x0;
    long n_transient = 1000;
    long n_samples = 200;
};

struct SweepSpec {
    std::string name; // one of tau_l, sigma_l, delta_l, tau_r, sigma_r, delta_r, mu
    double from = 0.0;
    double to = 0.0;
    long steps = 1; // number of grid values (from = to allowed with steps = 1)
};

/// Sets the named parameter; throws Error on an unknown name.
void set_param(PwlParams& p, const std::string& name, double value);
double get_param(const PwlParams& p, const std::string& name);

struct ScanColumn {
    double value = 0.0;              // swept parameter value
    std::vector<double> samples;     // post-transient x-coordinates
    double lyapunov1 = 0.0;          // largest exponent (NaN when divergent)
    bool diverged = false;
    std::string verdict_forward;     // detector outcome or "error:<what>"
    std::string verdict_backward;
};

struct ScanResult {
    std::string param_name;
    std::vector<ScanColumn> columns;
};

ScanResult bifurcation_scan(const PwlParams& p, const SweepSpec& sweep, const OrbitSpec& orbit,
                            int jobs = 0);
ScanResult bifurcation_scan_serial(const PwlParams& p, const SweepSpec& sweep,
                                   const OrbitSpec& orbit);

void write_scan_csv(std::ostream& os, const ScanResult& r);

struct BasinSpec {
    double z_level = 0.0;
    long resolution = 500; // grid is resolution x resolution on [-1,1]^2
    long n_iter = 1000;
    double ceiling = 100.0;
    double x_min = -1.0, x_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
};

struct BasinRaster {
    BasinSpec spec;
    std::vector<double> cells; // row-major, y rows by x columns, min(|X_n|, ceiling)

    double at(long iy, long ix) const { return cells[iy * spec.resolution + ix]; }
    long count_below_ceiling() const;
};

BasinRaster basin_raster(const PwlParams& p, const BasinSpec& spec, int jobs = 0);
BasinRaster basin_raster_serial(const PwlParams& p, const BasinSpec& spec);

/// Text header (z level, ranges, resolution, iterations, ceiling) followed by
/// one CSV row per grid row.
void write_raster(std::ostream& os, const BasinRaster& r);

struct ManifoldTrace {
    std::vector<std::vector<State3>> pieces; // border-split polyline pieces
    double arc_length = 0.0;
};

enum class ManifoldDirection { Stable, Unstable };

/// Traces the 1-dimensional eigenmanifold: seeds a fundamental segment
/// [fp + eps V, fp + |lambda| eps V] with dense samples and maps it repeatedly
/// (inverse map for the stable direction), splitting segments exactly at
/// border crossings, until the accumulated arc length exceeds arc_budget.
ManifoldTrace trace_manifold_1d(const PwlParams& p, const FixedPointInfo& fp,
                                const SpectralData& spec, ManifoldDirection direction,
                                double arc_budget);

void write_manifold_csv(std::ostream& os, const ManifoldTrace& t);

/// Companion (interpolated) manifold: the extended interpolation evaluated at
/// t_grid from the manifold's border touch point.
std::vector<CurveSample> companion_manifold(const PwlParams& p, const FixedPointInfo& fp,
                                            const SpectralData& spec,
                                            const std::vector<double>& t_grid);

} // namespace shilnikov

#endif
