// Command-line front end: every pipeline of the library behind flat
// subcommands. Parameters come from flags or a [section]-structured key=value
// config file; flags win over the file. All numeric output uses 12
// significant digits and CSV files are deterministic for a fixed config.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "shilnikov/analysis.hpp"
#include "shilnikov/config.hpp"
#include "shilnikov/csv.hpp"
#include "shilnikov/errors.hpp"
#include "shilnikov/homoclinic.hpp"
#include "shilnikov/interpolation.hpp"
#include "shilnikov/return_time.hpp"

using namespace shilnikov;

namespace {

struct Cli {
    CLI::App app{"Shilnikov-type dynamics toolkit for 3D piecewise-linear normal-form maps",
                 "shilnikov"};
    std::string config_path;
    bool dump_config = false;
    int jobs = 0;
    PwlParams params{1.0, -0.25, 0.3, 0.58, 0.38, -1.27, 1.0};
    Config file;

    std::string out_path;
    std::string mode = "forward";
    std::string side = "left";
    std::string direction = "unstable";
    std::string sweep_param = "tau_r";
    double from = 0.55, to = 0.65;
    long steps = 101;
    double x0 = 0.1, y0 = 0.0, z0 = 0.0;
    long n_steps = 100;
    long transient = 1000;
    long samples = 200;
    long iters = 100000;
    long cap = -1;
    double t_max = 10.0, dt = 0.01;
    double z_level = 0.0;
    long resolution = 500;
    long basin_iters = 1000;
    double ceiling = 100.0;
    double arc_budget = 50.0;
    bool companion = false;
    std::optional<double> opt_y0, opt_z0;
};

const char* kParamNames[7] = {"tau_l", "sigma_l", "delta_l", "tau_r", "sigma_r", "delta_r", "mu"};

void overlay_config(Cli& c, CLI::App* sub, const std::string& section) {
    // file values apply only where the flag was not given on the command line
    auto take = [&](const char* flag, const std::string& key, auto& slot) {
        using T = std::decay_t<decltype(slot)>;
        const CLI::Option* o = sub ? sub->get_option_no_throw(flag) : nullptr;
        if (!o) o = c.app.get_option_no_throw(flag);
        if (o && o->count() > 0) return;
        if constexpr (std::is_same_v<T, std::string>)
            slot = c.file.get_string(section, key, slot);
        else if constexpr (std::is_same_v<T, double>)
            slot = c.file.get_double(section, key, slot);
        else
            slot = static_cast<T>(c.file.get_long(section, key, static_cast<long>(slot)));
    };
    for (const char* name : kParamNames) {
        std::string flag = std::string("--") + name;
        for (char& ch : flag)
            if (ch == '_') ch = '-';
        double v = get_param(c.params, name);
        const CLI::Option* o = c.app.get_option_no_throw(flag);
        if (!(o && o->count() > 0)) v = c.file.get_double("params", name, v);
        set_param(c.params, name, v);
    }
    take("--jobs", "jobs", c.jobs);
    if (section.empty()) return;
    take("--out", "out", c.out_path);
    take("--mode", "mode", c.mode);
    take("--side", "side", c.side);
    take("--direction", "direction", c.direction);
    take("--param", "param", c.sweep_param);
    take("--from", "from", c.from);
    take("--to", "to", c.to);
    take("--steps", "steps", c.steps);
    take("--x0", "x0", c.x0);
    take("--y0", "y0", c.y0);
    take("--z0", "z0", c.z0);
    take("--n", "n", c.n_steps);
    take("--transient", "transient", c.transient);
    take("--samples", "samples", c.samples);
    take("--iters", "iters", c.iters);
    take("--cap", "cap", c.cap);
    take("--t-max", "t_max", c.t_max);
    take("--dt", "dt", c.dt);
    take("--z", "z", c.z_level);
    take("--resolution", "resolution", c.resolution);
    take("--basin-iters", "basin_iters", c.basin_iters);
    take("--ceiling", "ceiling", c.ceiling);
    take("--arc-budget", "arc_budget", c.arc_budget);
}

std::string dump_effective(const Cli& c, const std::string& section) {
    Config out;
    for (const char* name : kParamNames)
        out.set("params", name, fmt12(get_param(c.params, name)));
    if (!section.empty()) {
        auto put = [&](const std::string& k, const std::string& v) { out.set(section, k, v); };
        if (section == "detect") {
            put("mode", c.mode);
            put("cap", std::to_string(c.cap));
        } else if (section == "return-time") {
            put("y0", fmt12(c.y0));
            put("z0", fmt12(c.z0));
            put("side", c.side);
            put("t_max", fmt12(c.t_max));
            put("dt", fmt12(c.dt));
        } else if (section == "orbit") {
            put("x0", fmt12(c.x0));
            put("y0", fmt12(c.y0));
            put("z0", fmt12(c.z0));
            put("n", std::to_string(c.n_steps));
        } else if (section == "interpolate") {
            put("x0", fmt12(c.x0));
            put("y0", fmt12(c.y0));
            put("z0", fmt12(c.z0));
            put("t_max", fmt12(c.t_max));
            put("dt", fmt12(c.dt));
        } else if (section == "lyapunov") {
            put("x0", fmt12(c.x0));
            put("y0", fmt12(c.y0));
            put("z0", fmt12(c.z0));
            put("iters", std::to_string(c.iters));
            put("transient", std::to_string(c.transient));
        } else if (section == "bifurcation") {
            put("param", c.sweep_param);
            put("from", fmt12(c.from));
            put("to", fmt12(c.to));
            put("steps", std::to_string(c.steps));
            put("x0", fmt12(c.x0));
            put("y0", fmt12(c.y0));
            put("z0", fmt12(c.z0));
            put("transient", std::to_string(c.transient));
            put("samples", std::to_string(c.samples));
        } else if (section == "basin") {
            put("z", fmt12(c.z_level));
            put("resolution", std::to_string(c.resolution));
            put("basin_iters", std::to_string(c.basin_iters));
            put("ceiling", fmt12(c.ceiling));
        } else if (section == "manifold") {
            put("side", c.side);
            put("direction", c.direction);
            put("arc_budget", fmt12(c.arc_budget));
        }
    }
    return out.dump();
}

Side parse_side(const std::string& s) {
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    throw Error("side must be 'left' or 'right'");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary); // LF line endings everywhere
    if (!f) throw Error("cannot open output file: " + path);
    return f;
}

void print_spectrum(const char* label, const SpectralData& s) {
    const FpClass cls = classify(s);
    std::cout << label << ":\n";
    for (int i = 0; i < 3; ++i) {
        const Complex l = s.eigenvalues[i];
        std::cout << "  lambda_" << i + 1 << " = " << fmt12(l.real());
        if (l.imag() != 0.0) std::cout << (l.imag() > 0 ? " + " : " - ") << fmt12(std::abs(l.imag())) << "i";
        std::cout << "  |.| = " << fmt12(std::abs(l)) << '\n';
    }
    std::cout << "  class = " << to_string(cls.kind)
              << "  unstable_count = " << cls.unstable_count << '\n';
}

int run(Cli& c, int argc, char** argv) {
    auto* fixed = c.app.add_subcommand("fixed-points", "Fixed points of both sides");
    auto* eigen = c.app.add_subcommand("eigen", "Eigenvalues, eigenvectors, classification");
    auto* detect = c.app.add_subcommand("detect", "Homoclinic intersection detection");
    detect->add_option("--mode", c.mode, "forward | backward | flip");
    detect->add_option("--cap", c.cap, "iteration cap (default: analytic bound or 10000)");
    detect->add_option("--out", c.out_path, "write the iterate trace CSV here");
    auto* nc = c.app.add_subcommand("necessary-condition",
                                    "First-return transverse-intersection necessary condition");
    auto* rt = c.app.add_subcommand("return-time", "Border-return-time model and bounds");
    rt->add_option("--side", c.side, "travel side of the model");
    rt->add_option("--y0", c.y0, "border start y");
    rt->add_option("--z0", c.z0, "border start z");
    rt->add_option("--t-max", c.t_max, "root scan horizon");
    rt->add_option("--dt", c.dt, "CSV sampling step");
    rt->add_option("--out", c.out_path, "write (t, f, f+, f-) CSV here");
    auto* orbit = c.app.add_subcommand("orbit", "Iterate the map");
    orbit->add_option("--x0", c.x0);
    orbit->add_option("--y0", c.y0);
    orbit->add_option("--z0", c.z0);
    orbit->add_option("--n", c.n_steps, "number of steps");
    orbit->add_option("--out", c.out_path, "write iterates CSV here");
    auto* interp = c.app.add_subcommand("interpolate", "Companion orbit curve export");
    interp->add_option("--x0", c.x0);
    interp->add_option("--y0", c.y0);
    interp->add_option("--z0", c.z0);
    interp->add_option("--t-max", c.t_max);
    interp->add_option("--dt", c.dt);
    interp->add_option("--out", c.out_path, "write curve CSV here");
    auto* lyap = c.app.add_subcommand("lyapunov", "Lyapunov spectrum");
    lyap->add_option("--x0", c.x0);
    lyap->add_option("--y0", c.y0);
    lyap->add_option("--z0", c.z0);
    lyap->add_option("--iters", c.iters);
    lyap->add_option("--transient", c.transient);
    auto* bif = c.app.add_subcommand("bifurcation", "Parameter sweep");
    bif->add_option("--param", c.sweep_param, "swept parameter name");
    bif->add_option("--from", c.from);
    bif->add_option("--to", c.to);
    bif->add_option("--steps", c.steps);
    bif->add_option("--x0", c.x0);
    bif->add_option("--y0", c.y0);
    bif->add_option("--z0", c.z0);
    bif->add_option("--transient", c.transient);
    bif->add_option("--samples", c.samples);
    bif->add_option("--out", c.out_path, "write scan CSV here");
    auto* basin = c.app.add_subcommand("basin", "Basin-of-attraction raster");
    basin->add_option("--z", c.z_level, "z level of the sampled plane");
    basin->add_option("--resolution", c.resolution);
    basin->add_option("--basin-iters", c.basin_iters);
    basin->add_option("--ceiling", c.ceiling);
    basin->add_option("--out", c.out_path, "write raster here");
    auto* mani = c.app.add_subcommand("manifold", "1-d eigenmanifold trace");
    mani->add_option("--side", c.side);
    mani->add_option("--direction", c.direction, "stable | unstable");
    mani->add_option("--arc-budget", c.arc_budget);
    mani->add_flag("--companion", c.companion, "export the companion (interpolated) manifold");
    mani->add_option("--t-max", c.t_max);
    mani->add_option("--dt", c.dt);
    mani->add_option("--out", c.out_path, "write polyline/curve CSV here");

    c.app.add_option("--config", c.config_path, "key = value configuration file");
    c.app.add_flag("--dump-config", c.dump_config, "print the effective configuration and exit");
    c.app.add_option("--jobs", c.jobs, "worker cap for rasters and sweeps");
    c.app.add_option("--tau-l", c.params.tau_l);
    c.app.add_option("--sigma-l", c.params.sigma_l);
    c.app.add_option("--delta-l", c.params.delta_l);
    c.app.add_option("--tau-r", c.params.tau_r);
    c.app.add_option("--sigma-r", c.params.sigma_r);
    c.app.add_option("--delta-r", c.params.delta_r);
    c.app.add_option("--mu", c.params.mu);
    c.app.require_subcommand(1);

    CLI11_PARSE(c.app, argc, argv);

    CLI::App* sub = c.app.get_subcommands().front();
    const std::string section = sub->get_name() == "necessary-condition" ? "necessary-condition"
                                                                         : sub->get_name();
    if (!c.config_path.empty()) c.file = Config::load(c.config_path);
    overlay_config(c, sub, section == "fixed-points" || section == "eigen" ? "" : section);
    if (c.jobs == 0) {
        if (const char* env = std::getenv("SHILNIKOV_SCAN_JOBS")) c.jobs = std::atoi(env);
    }
    c.params.validate();

    if (c.dump_config) {
        std::cout << dump_effective(c, section == "fixed-points" || section == "eigen" ? ""
                                                                                       : section);
        return 0;
    }

    if (sub == fixed) {
        const auto [L, R] = fixed_points(c.params);
        auto show = [](const char* n, const FixedPointInfo& fp) {
            std::cout << n << " = (" << fmt12(fp.location.x) << ", " << fmt12(fp.location.y)
                      << ", " << fmt12(fp.location.z) << ")  "
                      << (fp.admissible ? "admissible" : "virtual") << '\n';
        };
        show("L*", L);
        show("R*", R);
    } else if (sub == eigen) {
        print_spectrum("left", eigen_side(c.params, Side::Left));
        print_spectrum("right", eigen_side(c.params, Side::Right));
    } else if (sub == detect) {
        const long cap = c.cap >= 0 ? c.cap : default_cap(c.params);
        HomoclinicTrace tr;
        if (c.mode == "forward")
            tr = detect_forward(c.params, cap);
        else if (c.mode == "backward")
            tr = detect_backward(c.params, cap);
        else if (c.mode == "flip")
            tr = detect_flip_forward(c.params, cap);
        else
            throw Error("detect mode must be forward, backward or flip");
        std::cout << "cap: " << cap << '\n' << tr.to_report();
        if (!c.out_path.empty()) {
            auto f = open_out(c.out_path);
            tr.to_csv(f);
        }
    } else if (sub == nc) {
        const NecessaryCondition r = necessary_condition(c.params);
        std::cout << "holds: " << (r.holds ? "yes" : "no") << '\n';
        std::cout << "k_bound: " << r.k_bound << '\n';
        std::cout << "analytic_bound: " << (r.analytic_bound ? "yes" : "no analytic bound")
                  << '\n';
        if (r.analytic_bound) std::cout << "t0: " << fmt12(r.t0) << '\n';
        if (r.k_witness) std::cout << "k_witness: " << *r.k_witness << '\n';
    } else if (sub == rt) {
        const Side side = parse_side(c.side);
        const ReturnTimeModel m = build_return_model(c.params, side, {0.0, c.y0, c.z0});
        std::cout << "oscillatory: " << (m.oscillatory ? "yes" : "no") << '\n';
        if (m.oscillatory) {
            std::cout << "alpha1: " << fmt12(m.alpha1) << "  lambda1: " << fmt12(m.lambda1)
                      << '\n';
            std::cout << "alpha2: " << fmt12(m.alpha2) << "  r0: " << fmt12(m.r0)
                      << "  theta0: " << fmt12(m.theta0) << "  phase: " << fmt12(m.phase)
                      << '\n';
            std::cout << "alpha3: " << fmt12(m.alpha3()) << '\n';
        }
        try {
            const auto [fplus, fminus] = envelopes(m);
            const RootBracket bp = descartes_bound(fplus);
            const RootBracket bm = descartes_bound(fminus);
            std::cout << "sigma(f+): " << bp.sign_changes << "  sigma(f-): " << bm.sign_changes
                      << '\n';
            std::cout << "t0(f+): " << fmt12(upper_bound_t0(fplus))
                      << "  t0(f-): " << fmt12(upper_bound_t0(fminus)) << '\n';
            if (auto ts = extremum_t_star(fplus)) std::cout << "t*(f+): " << fmt12(*ts) << '\n';
            if (auto ts = extremum_t_star(fminus)) std::cout << "t*(f-): " << fmt12(*ts) << '\n';
        } catch (const WrongSpectralTypeError&) {
            std::cout << "envelopes: not available for this spectrum\n";
        }
        RootSearch dir;
        dir.direction = CrossingDirection::FromNegative;
        if (const auto r = least_positive_root(m, c.t_max, dir))
            std::cout << "least_root_from_travel_side: " << fmt12(*r)
                      << "  floor: " << static_cast<long>(std::floor(*r)) << '\n';
        if (const auto r = least_positive_root(m, c.t_max))
            std::cout << "least_root_any: " << fmt12(*r) << '\n';
        else
            std::cout << "least_root_any: none within t_max\n";
        if (!c.out_path.empty()) {
            auto f = open_out(c.out_path);
            write_return_time_csv(f, m, c.t_max, c.dt);
        }
    } else if (sub == orbit) {
        State3 X{c.x0, c.y0, c.z0};
        std::ofstream f;
        if (!c.out_path.empty()) {
            f = open_out(c.out_path);
            f << "k,x,y,z\n";
            f << 0 << ',' << fmt12(X.x) << ',' << fmt12(X.y) << ',' << fmt12(X.z) << '\n';
        }
        for (long k = 1; k <= c.n_steps; ++k) {
            X = step(c.params, X);
            if (!finite(X)) throw DivergentOrbitError("orbit diverged at step " + std::to_string(k));
            if (f.is_open())
                f << k << ',' << fmt12(X.x) << ',' << fmt12(X.y) << ',' << fmt12(X.z) << '\n';
        }
        std::cout << "final: (" << fmt12(X.x) << ", " << fmt12(X.y) << ", " << fmt12(X.z)
                  << ")\n";
    } else if (sub == interp) {
        const Interpolator it(c.params);
        const auto curve = sample_companion_curve(it, {c.x0, c.y0, c.z0}, c.t_max, c.dt);
        if (!c.out_path.empty()) {
            auto f = open_out(c.out_path);
            write_curve_csv(f, curve);
        }
        std::cout << "samples: " << curve.size() << '\n';
    } else if (sub == lyap) {
        const auto le = lyapunov_spectrum(c.params, {c.x0, c.y0, c.z0}, c.iters, c.transient);
        std::cout << "lyapunov: " << fmt12(le[0]) << ' ' << fmt12(le[1]) << ' ' << fmt12(le[2])
                  << '\n';
    } else if (sub == bif) {
        OrbitSpec os;
        os.x0 = {c.x0, c.y0, c.z0};
        os.n_transient = c.transient;
        os.n_samples = c.samples;
        const ScanResult r =
            bifurcation_scan(c.params, {c.sweep_param, c.from, c.to, c.steps}, os, c.jobs);
        if (!c.out_path.empty()) {
            auto f = open_out(c.out_path);
            write_scan_csv(f, r);
        }
        long diverged = 0;
        for (const auto& col : r.columns) diverged += col.diverged ? 1 : 0;
        std::cout << "columns: " << r.columns.size() << "  diverged: " << diverged << '\n';
    } else if (sub == basin) {
        BasinSpec spec;
        spec.z_level = c.z_level;
        spec.resolution = c.resolution;
        spec.n_iter = c.basin_iters;
        spec.ceiling = c.ceiling;
        const BasinRaster r = basin_raster(c.params, spec, c.jobs);
        if (!c.out_path.empty()) {
            auto f = open_out(c.out_path);
            write_raster(f, r);
        }
        std::cout << "cells_below_ceiling: " << r.count_below_ceiling() << " / "
                  << spec.resolution * spec.resolution << '\n';
    } else if (sub == mani) {
        const Side side = parse_side(c.side);
        const auto fps = fixed_points(c.params);
        const FixedPointInfo fp = side == Side::Left ? fps.first : fps.second;
        const SpectralData spec = eigen_side(c.params, side);
        if (c.companion) {
            std::vector<double> grid;
            for (double t = 0.0; t <= c.t_max + 1e-12; t += c.dt) grid.push_back(t);
            const auto curve = companion_manifold(c.params, fp, spec, grid);
            if (!c.out_path.empty()) {
                auto f = open_out(c.out_path);
                write_curve_csv(f, curve);
            }
            std::cout << "samples: " << curve.size() << '\n';
        } else {
            const ManifoldDirection dir = c.direction == "stable" ? ManifoldDirection::Stable
                                                                  : ManifoldDirection::Unstable;
            const ManifoldTrace tr = trace_manifold_1d(c.params, fp, spec, dir, c.arc_budget);
            if (!c.out_path.empty()) {
                auto f = open_out(c.out_path);
                write_manifold_csv(f, tr);
            }
            std::cout << "pieces: " << tr.pieces.size()
                      << "  arc_length: " << fmt12(tr.arc_length) << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Cli cli;
    try {
        return run(cli, argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
