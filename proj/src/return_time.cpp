#include "shilnikov/return_time.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "shilnikov/csv.hpp"
#include "shilnikov/errors.hpp"

namespace shilnikov {

double ReturnTimeModel::evaluate(double t) const {
    if (oscillatory) {
        return alpha1 * std::pow(lambda1, t) +
               2.0 * alpha2 * std::cos(t * theta0 + phase) * std::pow(r0, t) + constant;
    }
    Complex acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += coeffs[i] * std::exp(t * log_eigenvalues[i]);
    return acc.real() + constant;
}

namespace {

ReturnTimeModel build_model_impl(const AffineMap3& map, const SpectralData& spec,
                                 const State3& X0) {
    ReturnTimeModel m;
    m.eigenvalues = spec.eigenvalues;
    const CVec3 xi0 = spec.inverse_base_change * complexify(X0);
    const CVec3 beta = spec.inverse_base_change * complexify(map.b);
    Complex c0 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Complex l = spec.eigenvalues[i];
        if (std::abs(l) == 0.0) throw SingularMatrixError("build_return_model: zero eigenvalue");
        if (std::abs(l - 1.0) < 1e-12)
            throw DegenerateFixedPointError("build_return_model: eigenvalue 1");
        m.log_eigenvalues[i] = std::log(l);
        const Complex p1i = spec.base_change(0, i);
        m.coeffs[i] = p1i * (xi0[i] + beta[i] / (l - 1.0));
        c0 -= p1i * beta[i] / (l - 1.0);
    }
    m.constant = c0.real();

    if (has_complex_pair(spec) && spec.eigenvalues[0].real() > 0.0) {
        m.oscillatory = true;
        m.alpha1 = m.coeffs[0].real();
        m.lambda1 = spec.eigenvalues[0].real();
        m.alpha2 = std::abs(m.coeffs[1]);
        m.phase = std::arg(m.coeffs[1]);
        m.r0 = std::abs(spec.eigenvalues[1]);
        m.theta0 = std::arg(spec.eigenvalues[1]);
    }
    return m;
}

} // namespace

ReturnTimeModel build_return_model(const AffineMap3& map, const SpectralData& spec,
                                   const State3& X0) {
    if (std::abs(X0.x) > 1e-9 * (1.0 + norm(X0)))
        throw NotOnBorderError("build_return_model: X0 is not on the border x = 0");
    return build_model_impl(map, spec, {0.0, X0.y, X0.z});
}

ReturnTimeModel build_return_model(const PwlParams& p, Side side, const State3& X0) {
    return build_return_model(side_map(p, side), eigen_side(p, side), X0);
}

ReturnTimeModel build_return_model_general(const AffineMap3& map, const SpectralData& spec,
                                           const State3& X0) {
    return build_model_impl(map, spec, X0);
}

double ExpPolynomial::evaluate(double t) const {
    return a1 * std::pow(kappa1, t) + a2 * std::pow(kappa2, t) + a3;
}

std::pair<ExpPolynomial, ExpPolynomial> envelopes(const ReturnTimeModel& model) {
    if (!model.oscillatory)
        throw WrongSpectralTypeError("envelopes: model has no oscillatory reduction");
    const bool growth_real = model.lambda1 > 1.0 && model.r0 < 1.0;
    const bool growth_pair = model.r0 > 1.0 && model.lambda1 < 1.0;
    if (!growth_real && !growth_pair)
        throw WrongSpectralTypeError("envelopes: {lambda1, r0} do not straddle 1");

    ExpPolynomial plus, minus;
    if (growth_real) {
        plus = {model.alpha1, 2.0 * model.alpha2, model.alpha3(), model.lambda1, model.r0};
        minus = {model.alpha1, -2.0 * model.alpha2, model.alpha3(), model.lambda1, model.r0};
    } else {
        plus = {2.0 * model.alpha2, model.alpha1, model.alpha3(), model.r0, model.lambda1};
        minus = {-2.0 * model.alpha2, model.alpha1, model.alpha3(), model.r0, model.lambda1};
    }
    return {plus, minus};
}

RootBracket descartes_bound(const ExpPolynomial& g) {
    RootBracket b;
    // exponent order: a1 (ln k1 > 0), a3 (exponent 0), a2 (ln k2 < 0)
    const double seq[3] = {g.a1, g.a3, g.a2};
    int prev = 0;
    for (double v : seq) {
        if (v == 0.0) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++b.sign_changes;
        prev = s;
    }
    b.max_roots = b.sign_changes;
    b.t_upper = b.max_roots > 0 ? std::max(upper_bound_t0(g), 0.0) : 0.0;
    if (auto ts = extremum_t_star(g)) b.t_lower = std::max(*ts, 0.0);
    return b;
}

double upper_bound_t0(const ExpPolynomial& g) {
    if (g.a1 == 0.0) return std::numeric_limits<double>::infinity();
    return std::log((std::abs(g.a2) + std::abs(g.a3)) / std::abs(g.a1)) / std::log(g.kappa1);
}

std::optional<double> extremum_t_star(const ExpPolynomial& g) {
    if (g.a1 == 0.0 || g.a2 == 0.0) return std::nullopt;
    const double arg = -g.a2 * std::log(g.kappa2) / (g.a1 * std::log(g.kappa1));
    if (arg <= 0.0) return std::nullopt;
    return std::log(arg) / std::log(g.kappa1 / g.kappa2);
}

std::optional<double> least_positive_root(const ReturnTimeModel& model, double t_max,
                                          const RootSearch& opts) {
    double h = opts.step;
    if (h <= 0.0) {
        double freq = 0.0;
        for (const Complex& l : model.log_eigenvalues) freq = std::max(freq, std::abs(l.imag()));
        h = freq > 0.0 ? std::min(0.25, std::numbers::pi / (8.0 * freq)) : 0.25;
    }
    auto qualifies = [&](double fa, double fb) {
        switch (opts.direction) {
        case CrossingDirection::Any: return fa * fb < 0.0 || (fa != 0.0 && fb == 0.0);
        case CrossingDirection::FromNegative: return fa < 0.0 && fb >= 0.0;
        case CrossingDirection::FromPositive: return fa > 0.0 && fb <= 0.0;
        }
        return false;
    };

    double ta = opts.epsilon;
    double fa = model.evaluate(ta);
    while (ta < t_max) {
        const double tb = std::min(ta + h, t_max);
        const double fb = model.evaluate(tb);
        if (qualifies(fa, fb)) {
            double lo = ta, hi = tb, flo = fa;
            while (hi - lo > opts.bisect_tol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = model.evaluate(mid);
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            return 0.5 * (lo + hi);
        }
        if (tb >= t_max) break;
        ta = tb;
        fa = fb;
    }
    return std::nullopt;
}

void write_return_time_csv(std::ostream& os, const ReturnTimeModel& model, double t_max,
                           double dt) {
    const auto [fp, fm] = envelopes(model);
    os << "t,f,f_plus,f_minus\n";
    const long n = static_cast<long>(std::floor(t_max / dt + 1e-9));
    for (long k = 0; k <= n; ++k) {
        const double t = k * dt;
        os << fmt12(t) << ',' << fmt12(model.evaluate(t)) << ',' << fmt12(fp.evaluate(t)) << ','
           << fmt12(fm.evaluate(t)) << '\n';
    }
}

} // namespace shilnikov
