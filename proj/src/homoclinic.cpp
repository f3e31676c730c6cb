#include "shilnikov/homoclinic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "shilnikov/csv.hpp"
#include "shilnikov/errors.hpp"
#include "shilnikov/return_time.hpp"

namespace shilnikov {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::IntersectionFound: return "intersection-found";
    case Verdict::NoCrossingWithinBound: return "no-crossing-within-bound";
    case Verdict::CrossedButNoIntersection: return "crossed-but-no-intersection";
    case Verdict::WrongRegionIntersection: return "wrong-region-intersection";
    }
    return "?";
}

State3 border_touch(const FixedPointInfo& fp, const SpectralData& spec) {
    const int ri = single_real_index(spec);
    const Vec3 v = spec.eigenvectors[ri].real();
    if (std::abs(v.x) < 1e-12)
        throw ParallelToBorderError("border_touch: eigendirection parallel to the border");
    return {0.0, fp.location.y - (v.y / v.x) * fp.location.x,
            fp.location.z - (v.z / v.x) * fp.location.x};
}

State3 segment_plane_intersection(const EigenPlane& plane, const State3& A, const State3& B) {
    const double ea = plane.evaluate(A);
    const double eb = plane.evaluate(B);
    const double th = ea / (ea - eb);
    return A + th * (B - A);
}

namespace {

constexpr double kBorderTol = 1e-12;

Side side_of(const PwlParams& p, const State3& X) {
    if (std::abs(X.x) < kBorderTol) return resolve_side(p, X);
    return X.x < 0.0 ? Side::Left : Side::Right;
}

State3 backward_step(const PwlParams& p, const State3& X) {
    return inverse_side_map(p, side_of(p, X))(X);
}

// Shared five-step core. `skip` = number of flip-exempt leading iterates
// (2 when the 1-d direction is a flip, else 0); the travel side is observed
// at the first non-exempt iterate and the crossing is the first sign flip
// away from it.
HomoclinicTrace run_detection(const PwlParams& p, const FixedPointInfo& fp,
                              const SpectralData& spec, const EigenPlane& plane, bool backward,
                              int skip, long n_cap, bool region_decisive) {
    HomoclinicTrace tr;
    tr.plane = plane;
    tr.launch_side = fp.side;
    tr.backward = backward;
    tr.P0 = border_touch(fp, spec);
    tr.iterates.push_back({tr.P0, plane.evaluate(tr.P0)});

    const long first_travel = skip == 2 ? 2 : 1;
    State3 X = tr.P0;
    Side travel = Side::Left;
    for (long k = 1; k <= n_cap; ++k) {
        X = backward ? backward_step(p, X) : step(p, X);
        if (!finite(X)) throw OverflowDetectedError("detection: orbit overflow");
        tr.iterates.push_back({X, plane.evaluate(X)});
        if (k == 1) tr.first_fold = X;
        if (skip == 2 && k == 1 && side_of(p, X) != fp.side)
            throw WrongSpectralTypeError("detection: flip iterate left the launching region");
        if (k == first_travel) {
            travel = side_of(p, X);
            continue;
        }
        if (k < first_travel) continue;
        if (side_of(p, X) == travel) continue;

        tr.crossing_index = k - 1;
        tr.P_n = tr.iterates[k - 1].first;
        tr.P_n_plus_1 = X;
        const double e1 = tr.iterates[k - 1].second;
        const double e2 = tr.iterates[k].second;
        tr.side_products = {e1, e2};
        const double scale = std::max(std::abs(e1), std::abs(e2));
        const bool straddle = e1 * e2 < -1e-12 * scale * scale;
        if (!straddle) {
            tr.verdict = Verdict::CrossedButNoIntersection;
            return tr;
        }
        const State3 xi = segment_plane_intersection(plane, tr.P_n, tr.P_n_plus_1);
        tr.intersection_point = xi;
        tr.intersection_in_fp_region = in_region(fp.side, xi);
        if (region_decisive && !tr.intersection_in_fp_region)
            tr.verdict = Verdict::WrongRegionIntersection;
        else
            tr.verdict = Verdict::IntersectionFound;
        return tr;
    }
    tr.verdict = Verdict::NoCrossingWithinBound;
    return tr;
}

struct Launch {
    FixedPointInfo fp;
    SpectralData spec;
};

Launch find_launch(const PwlParams& p, std::optional<Side> want,
                   bool (*match)(const SpectralData&), const char* what) {
    const auto [L, R] = fixed_points(p);
    for (Side s : {Side::Left, Side::Right}) {
        if (want && *want != s) continue;
        const FixedPointInfo& fp = s == Side::Left ? L : R;
        SpectralData spec;
        try {
            spec = eigen_side(p, s);
        } catch (const Error&) {
            continue;
        }
        if (fp.admissible && match(spec)) return {fp, spec};
    }
    throw WrongSpectralTypeError(std::string("no admissible fixed point with ") + what);
}

bool is_saddle_focus(const SpectralData& s) {
    return has_complex_pair(s) && s.eigenvalues[0].real() > 1.0 &&
           std::abs(s.eigenvalues[1]) < 1.0;
}
bool is_flip_unstable(const SpectralData& s) {
    return has_complex_pair(s) && s.eigenvalues[0].real() < -1.0 &&
           std::abs(s.eigenvalues[1]) < 1.0;
}
bool is_backward_target(const SpectralData& s) {
    // 1-dimensional real stable direction, 2-dimensional unstable plane
    return has_complex_pair(s) && std::abs(s.eigenvalues[0].real()) < 1.0 &&
           std::abs(s.eigenvalues[1]) > 1.0;
}

} // namespace

HomoclinicTrace detect_forward(const PwlParams& p, long n_cap) {
    const Launch l = find_launch(p, std::nullopt, is_saddle_focus, "a saddle-focus spectrum");
    return run_detection(p, l.fp, l.spec, invariant_plane(l.spec, l.fp, PlaneSelect::Stable),
                         false, 0, n_cap, true);
}

HomoclinicTrace detect_forward_from(const PwlParams& p, Side launch, long n_cap) {
    const Launch l = find_launch(p, launch, is_saddle_focus, "a saddle-focus spectrum");
    return run_detection(p, l.fp, l.spec, invariant_plane(l.spec, l.fp, PlaneSelect::Stable),
                         false, 0, n_cap, true);
}

HomoclinicTrace detect_flip_forward(const PwlParams& p, long n_cap) {
    const Launch l = find_launch(p, std::nullopt, is_flip_unstable, "a flip-unstable direction");
    return run_detection(p, l.fp, l.spec, invariant_plane(l.spec, l.fp, PlaneSelect::Stable),
                         false, 2, n_cap, true);
}

HomoclinicTrace detect_flip_forward_from(const PwlParams& p, Side launch, long n_cap) {
    const Launch l = find_launch(p, launch, is_flip_unstable, "a flip-unstable direction");
    return run_detection(p, l.fp, l.spec, invariant_plane(l.spec, l.fp, PlaneSelect::Stable),
                         false, 2, n_cap, true);
}

HomoclinicTrace detect_backward(const PwlParams& p, long n_cap) {
    const Launch l =
        find_launch(p, std::nullopt, is_backward_target, "a 1-d stable / 2-d unstable split");
    const int skip = l.spec.eigenvalues[0].real() < 0.0 ? 2 : 0;
    return run_detection(p, l.fp, l.spec, invariant_plane(l.spec, l.fp, PlaneSelect::Unstable),
                         true, skip, n_cap, false);
}

HomoclinicTrace detect_backward_from(const PwlParams& p, Side target, long n_cap) {
    const Launch l =
        find_launch(p, target, is_backward_target, "a 1-d stable / 2-d unstable split");
    const int skip = l.spec.eigenvalues[0].real() < 0.0 ? 2 : 0;
    return run_detection(p, l.fp, l.spec, invariant_plane(l.spec, l.fp, PlaneSelect::Unstable),
                         true, skip, n_cap, false);
}

namespace {

struct ConditionSetup {
    Launch target;        // right-side fixed point of the Theorem
    EigenPlane plane;
    bool backward = false;
    int prefix = 0;       // flip-exempt backward/forward steps
    ReturnTimeModel model; // travel model past the prefix
};

ConditionSetup condition_setup(const PwlParams& p) {
    const SpectralData spec_l = eigen_side(p, Side::Left);
    if (!is_saddle_focus(spec_l))
        throw WrongSpectralTypeError(
            "necessary_condition: left spectrum must be saddle-focus (real > 1, stable pair)");

    ConditionSetup cs;
    const auto [L, R] = fixed_points(p);
    const SpectralData spec_r = eigen_side(p, Side::Right);
    if (!has_complex_pair(spec_r) || !R.admissible)
        throw WrongSpectralTypeError("necessary_condition: right fixed point pattern mismatch");
    const double lam = spec_r.eigenvalues[0].real();
    const double pair_mod = std::abs(spec_r.eigenvalues[1]);

    cs.target = {R, spec_r};
    State3 X0 = border_touch(R, spec_r);
    if (lam < -1.0 && pair_mod < 1.0) {
        // Theorem orientation: flip-unstable U_r traced forward through the left
        cs.backward = false;
        cs.prefix = 2;
        cs.plane = invariant_plane(spec_r, R, PlaneSelect::Stable);
        State3 P = X0;
        for (int k = 0; k < 2; ++k) P = step(p, P);
        cs.model = build_return_model_general(side_map(p, Side::Left), spec_l, P);
    } else if (std::abs(lam) < 1.0 && pair_mod > 1.0) {
        // motivating-example orientation: stable S_r traced backward
        cs.backward = true;
        cs.prefix = lam < 0.0 ? 2 : 0;
        cs.plane = invariant_plane(spec_r, R, PlaneSelect::Unstable);
        State3 P = X0;
        for (int k = 0; k < cs.prefix; ++k) P = backward_step(p, P);
        cs.model = build_return_model_general(inverse_side_map(p, Side::Left),
                                              inverse_spectrum(spec_l), P);
    } else {
        throw WrongSpectralTypeError("necessary_condition: right spectrum matches neither "
                                     "orientation of the theorem");
    }
    return cs;
}

} // namespace

NecessaryCondition necessary_condition(const PwlParams& p) {
    const ConditionSetup cs = condition_setup(p);
    NecessaryCondition nc;
    try {
        const auto [fplus, fminus] = envelopes(cs.model);
        if (descartes_bound(fplus).max_roots > 0 || descartes_bound(fminus).max_roots > 0) {
            nc.analytic_bound = true;
            nc.t0 = upper_bound_t0(fplus); // |a2| identical for both envelopes
        }
    } catch (const WrongSpectralTypeError&) {
        // no oscillatory reduction: fall back to the hard cap
    }
    nc.k_bound = nc.analytic_bound ? std::max(0L, static_cast<long>(std::ceil(nc.t0))) + 2
                                   : 10000L;

    const State3 X0 = border_touch(cs.target.fp, cs.target.spec);
    std::vector<double> evals;
    State3 X = X0;
    evals.push_back(cs.plane.evaluate(X));
    for (long k = 1; k <= nc.k_bound + 1; ++k) {
        X = cs.backward ? backward_step(p, X) : step(p, X);
        if (!finite(X)) break;
        evals.push_back(cs.plane.evaluate(X));
    }
    for (long k = cs.prefix; k + 1 < static_cast<long>(evals.size()) && k <= nc.k_bound; ++k) {
        if (evals[k] * evals[k + 1] < 0.0) {
            nc.holds = true;
            nc.k_witness = k;
            break;
        }
    }
    return nc;
}

long default_cap(const PwlParams& p) {
    try {
        const ConditionSetup cs = condition_setup(p);
        const auto [fplus, fminus] = envelopes(cs.model);
        if (descartes_bound(fplus).max_roots == 0 && descartes_bound(fminus).max_roots == 0)
            return 10000;
        long cap = std::max(0L, static_cast<long>(std::ceil(upper_bound_t0(fplus)))) + 2;
        if (cs.model.r0 > 1.0) {
            // growing term is the oscillatory pair: the envelope bound can lag
            // the first crossing by up to one oscillation period
            cap += static_cast<long>(std::ceil(2.0 * std::numbers::pi / std::abs(cs.model.theta0)));
        }
        return cap;
    } catch (const Error&) {
        return 10000;
    }
}

std::string HomoclinicTrace::to_report() const {
    std::ostringstream os;
    auto v3 = [](const State3& v) {
        return "(" + fmt12(v.x) + ", " + fmt12(v.y) + ", " + fmt12(v.z) + ")";
    };
    os << "verdict: " << to_string(verdict) << '\n';
    os << "direction: " << (backward ? "backward" : "forward") << '\n';
    os << "launch_side: " << to_string(launch_side) << '\n';
    os << "border_touch: " << v3(P0) << '\n';
    os << "first_fold: " << v3(first_fold) << '\n';
    os << "crossing_index: " << crossing_index << '\n';
    if (verdict != Verdict::NoCrossingWithinBound) {
        os << "P_n: " << v3(P_n) << '\n';
        os << "P_n_plus_1: " << v3(P_n_plus_1) << '\n';
        os << "plane_eval_n: " << fmt12(side_products.first) << '\n';
        os << "plane_eval_n_plus_1: " << fmt12(side_products.second) << '\n';
    }
    os << "plane_normal: " << v3(plane.normal) << '\n';
    os << "plane_offset: " << fmt12(plane.offset) << '\n';
    if (intersection_point) {
        os << "intersection_point: " << v3(*intersection_point) << '\n';
        os << "intersection_in_fp_region: " << (intersection_in_fp_region ? "yes" : "no")
           << '\n';
    }
    return os.str();
}

void HomoclinicTrace::to_csv(std::ostream& os) const {
    os << "k,x,y,z,plane_eval\n";
    for (std::size_t k = 0; k < iterates.size(); ++k) {
        const auto& [X, e] = iterates[k];
        os << k << ',' << fmt12(X.x) << ',' << fmt12(X.y) << ',' << fmt12(X.z) << ','
           << fmt12(e) << '\n';
    }
}

} // namespace shilnikov
