#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "shilnikov/errors.hpp"
#include "shilnikov/homoclinic.hpp"
#include "shilnikov/power_recursion.hpp"
#include "shilnikov/return_time.hpp"
#include "test_support.hpp"

using namespace shilnikov;
using namespace shilnikov::test;

TEST_CASE("f(0) = 0 for border starts") {
    Rng rng(17);
    int done = 0;
    while (done < 200) {
        CompanionCoeffs c{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (std::abs(c.delta) < 1e-3) continue;
        PwlParams p{c.tau, c.sigma, c.delta, c.tau, c.sigma, c.delta, rng.coin() ? 1.0 : -1.0};
        ReturnTimeModel m;
        try {
            m = build_return_model(p, Side::Left, {0.0, rng.uniform(-3, 3), rng.uniform(-3, 3)});
        } catch (const Error&) {
            continue;
        }
        ++done;
        CHECK(std::abs(m.evaluate(0.0)) < 1e-9);
        if (m.oscillatory) {
            // alpha1 + 2 alpha2 cos(phase) + alpha3 = 0
            const double f0 = m.alpha1 + 2.0 * m.alpha2 * std::cos(m.phase) + m.alpha3();
            CHECK(std::abs(f0) < 1e-9);
        }
    }
}

TEST_CASE("off-border start is rejected, general builder accepts it") {
    const PwlParams p = section3_params();
    CHECK_THROWS_AS(build_return_model(p, Side::Left, {0.5, 0.0, 0.0}), NotOnBorderError);
    const ReturnTimeModel m = build_return_model_general(
        side_map(p, Side::Left), eigen_side(p, Side::Left), {0.5, 0.0, 0.0});
    CHECK(m.evaluate(0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("f at integers reproduces the one-sided orbit x-coordinate") {
    const PwlParams p = section3_params();
    const auto [L, R] = fixed_points(p);
    const SpectralData sl = eigen_side(p, Side::Left);
    const State3 P0 = border_touch(L, sl);

    const ReturnTimeModel m = build_return_model(p, Side::Left, P0);
    for (long k = 0; k <= 12; ++k) {
        const double want = orbit_point(p, Side::Left, P0, k).x;
        CHECK(rel_err(m.evaluate(double(k)), want) < 1e-9);
    }
}

TEST_CASE("coefficients match a hand expansion for a real-diagonal spectrum") {
    // companion coefficients with roots 2, 0.5, 0.25
    const CompanionCoeffs c{2.75, 1.625, 0.25};
    const PwlParams p{c.tau, c.sigma, c.delta, c.tau, c.sigma, c.delta, 1.0};
    const State3 X0{0.0, 1.3, -0.7};
    const ReturnTimeModel m = build_return_model(p, Side::Left, X0);
    CHECK(!m.oscillatory);

    // hand route: xi0 = P^{-1} X0 and beta = P^{-1} (mu C) computed through an
    // independent complex solve of P xi = v (Cramer's rule)
    const SpectralData s = eigen_side(p, Side::Left);
    auto solve = [&](const CVec3& rhs, int i) {
        CMat3 M = s.base_change;
        for (int r = 0; r < 3; ++r) M(r, i) = rhs[r];
        return det(M) / det(s.base_change);
    };
    for (int i = 0; i < 3; ++i) {
        const Complex l = s.eigenvalues[i];
        const Complex xi = solve(complexify(X0), i);
        const Complex be = solve(complexify({p.mu, 0, 0}), i);
        const Complex want = s.base_change(0, i) * (xi + be / (l - 1.0));
        CHECK(std::abs(m.coeffs[i] - want) < 1e-12);
    }
    // f(k) equals the one-sided iterate x (left map applied blindly)
    Mat3 A = side_matrix(p, Side::Left);
    State3 X = X0;
    for (int k = 1; k <= 8; ++k) {
        X = A * X + Vec3{p.mu, 0, 0};
        CHECK(rel_err(m.evaluate(double(k)), X.x) < 1e-10);
    }
}

TEST_CASE("envelopes bound f") {
    const PwlParams p = section3_params();
    // left-travel model: border start whose first iterate lands left
    const State3 X0{0.0, -3.0, 0.5};
    const ReturnTimeModel m = build_return_model(p, Side::Left, X0);
    REQUIRE(m.saddle_focus_canonical());
    const auto [fp, fm] = envelopes(m);
    CHECK(fp.kappa1 == doctest::Approx(m.lambda1));
    CHECK(fp.kappa2 == doctest::Approx(m.r0));
    for (int i = 0; i <= 1000; ++i) {
        const double t = 20.0 * i / 1000.0;
        const double f = m.evaluate(t);
        CHECK(f <= fp.evaluate(t) + 1e-12);
        CHECK(f >= fm.evaluate(t) - 1e-12);
    }
    // f+ - f- = 4 alpha2 r0^t >= 0
    for (double t : {0.0, 1.0, 3.5}) {
        CHECK(fp.evaluate(t) - fm.evaluate(t) ==
              doctest::Approx(4.0 * m.alpha2 * std::pow(m.r0, t)).epsilon(1e-12));
    }
}

TEST_CASE("envelopes collapse when the oscillatory amplitude vanishes") {
    const PwlParams p = section3_params();
    const auto [L, R] = fixed_points(p);
    const SpectralData sl = eigen_side(p, Side::Left);
    // X0 on the real eigenline through L*: the pair coefficient is zero
    const State3 P0 = border_touch(L, sl);
    const ReturnTimeModel m = build_return_model(p, Side::Left, P0);
    REQUIRE(m.oscillatory);
    // the pair coordinate of P0 - L* vanishes only if P0 is on the eigenline;
    // it is, by construction of border_touch
    CHECK(m.alpha2 < 1e-12 * std::max(1.0, std::abs(m.alpha1)));
    const auto [fp, fm] = envelopes(m);
    for (double t : {0.0, 0.7, 2.0, 5.0}) {
        CHECK(fp.evaluate(t) == doctest::Approx(m.evaluate(t)).epsilon(1e-9));
        CHECK(fm.evaluate(t) == doctest::Approx(m.evaluate(t)).epsilon(1e-9));
    }
}

TEST_CASE("descartes bound on the exponent-ordered sequence") {
    SUBCASE("no sign change, no roots") {
        const ExpPolynomial g{1.0, 1.0, 1.0, 2.0, 0.5};
        const RootBracket b = descartes_bound(g);
        CHECK(b.sign_changes == 0);
        CHECK(b.max_roots == 0);
        CHECK(b.t_upper == 0.0);
    }
    SUBCASE("(2, 1, -8): two changes, one positive root near 1.95") {
        const ExpPolynomial g{2.0, 1.0, -8.0, 2.0, 0.5};
        const RootBracket b = descartes_bound(g);
        CHECK(b.sign_changes == 2); // ordered signs (+, -, +)
        // dense scan on (0, 40]
        int roots = 0;
        double prev = g.evaluate(1e-9);
        double root_loc = -1.0;
        for (int i = 1; i <= 40000; ++i) {
            const double t = 40.0 * i / 40000.0;
            const double cur = g.evaluate(t);
            if (prev * cur < 0.0) {
                ++roots;
                root_loc = t;
            }
            prev = cur;
        }
        CHECK(roots == 1);
        CHECK(root_loc == doctest::Approx(1.95).epsilon(2e-2));
        CHECK(upper_bound_t0(g) == doctest::Approx(std::log(4.5) / std::log(2.0)).epsilon(1e-12));
        CHECK(root_loc < b.t_upper);
    }
    SUBCASE("(1, -3, 1): one change in exponent order, exactly one root") {
        const ExpPolynomial g{1.0, -3.0, 1.0, 2.0, 0.5};
        const RootBracket b = descartes_bound(g);
        CHECK(b.sign_changes == 1); // ordered signs (+, +, -)
        int roots = 0;
        double prev = g.evaluate(1e-9);
        for (int i = 1; i <= 40000; ++i) {
            const double t = 40.0 * i / 40000.0;
            const double cur = g.evaluate(t);
            if (prev * cur < 0.0) ++roots;
            prev = cur;
        }
        CHECK(roots == 1);
        // monotone: no extremum
        CHECK(!extremum_t_star(g).has_value());
    }
}

TEST_CASE("upper bound t0") {
    const ExpPolynomial g1{1.0, 1.0, -1.0, 1.7, 0.5};
    CHECK(upper_bound_t0(g1) == doctest::Approx(std::log(2.0) / std::log(1.7)).epsilon(1e-12));
    const ExpPolynomial g2{2.0, 1.0, 1.0, 2.0, 0.5}; // |a2|+|a3| = |a1|
    CHECK(upper_bound_t0(g2) == doctest::Approx(0.0));
}

TEST_CASE("extremum t*") {
    SUBCASE("(1, 3, -8): t* = ln 3 / ln 4") {
        const ExpPolynomial g{1.0, 3.0, -8.0, 2.0, 0.5};
        const auto ts = extremum_t_star(g);
        REQUIRE(ts.has_value());
        CHECK(*ts == doctest::Approx(std::log(3.0) / std::log(4.0)).epsilon(1e-12));
        // derivative vanishes there
        const double h = 1e-6;
        const double d = (g.evaluate(*ts + h) - g.evaluate(*ts - h)) / (2 * h);
        CHECK(std::abs(d) < 1e-6);
    }
    SUBCASE("absent without an oscillatory term or with opposite signs") {
        CHECK(!extremum_t_star({1.0, 0.0, -8.0, 2.0, 0.5}).has_value());
        CHECK(!extremum_t_star({1.0, -3.0, 1.0, 2.0, 0.5}).has_value());
    }
}

TEST_CASE("random exponential polynomials: count and exclusion bounds") {
    Rng rng(88);
    for (int trial = 0; trial < 1000; ++trial) {
        const ExpPolynomial g{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4),
                              rng.uniform(1.05, 3.0), rng.uniform(0.05, 0.95)};
        const RootBracket b = descartes_bound(g);
        int roots = 0;
        double last_bracket = -1.0; // grid point just before the sign change
        double prev = g.evaluate(1e-9);
        for (int i = 1; i <= 50000; ++i) {
            const double t = 50.0 * i / 50000.0;
            const double cur = g.evaluate(t);
            if (prev * cur < 0.0) {
                ++roots;
                last_bracket = t - 50.0 / 50000.0;
            }
            prev = cur;
        }
        CHECK(roots <= b.sign_changes);
        if (roots > 0) {
            CHECK(last_bracket <= std::max(upper_bound_t0(g), 0.0) + 1e-9);
            CHECK(last_bracket <= b.t_upper + 1e-9);
            CHECK(b.t_lower <= b.t_upper + 1e-12);
        }
    }
}

TEST_CASE("least positive root") {
    SUBCASE("closed form when the oscillation is absent") {
        // f = a1 l^t + a3 with a1 > 0 > a3: root at ln(-a3/a1)/ln l
        ReturnTimeModel m;
        m.oscillatory = true;
        m.alpha1 = 1.0;
        m.lambda1 = 1.9;
        m.alpha2 = 0.0;
        m.r0 = 0.5;
        m.theta0 = 1.0;
        m.constant = -7.0;
        m.eigenvalues = {Complex(1.9), Complex(0.5), Complex(0.5)};
        m.log_eigenvalues = {std::log(Complex(1.9)), std::log(Complex(0.5)),
                             std::log(Complex(0.5))};
        m.coeffs = {Complex(1.0), Complex(0.0), Complex(0.0)};
        const auto r = least_positive_root(m, 20.0);
        REQUIRE(r.has_value());
        CHECK(*r == doctest::Approx(std::log(7.0) / std::log(1.9)).epsilon(1e-9));
    }
    SUBCASE("absent when f has no sign change") {
        ReturnTimeModel m;
        m.oscillatory = true;
        m.alpha1 = 1.0;
        m.lambda1 = 2.0;
        m.alpha2 = 0.1;
        m.r0 = 0.5;
        m.theta0 = 1.0;
        m.constant = 1.0;
        CHECK(!least_positive_root(m, 30.0).has_value());
    }
    SUBCASE("directed search skips the grazing departure") {
        // strong oscillation: f pokes positive before the durable left travel
        const CompanionCoeffs c = coeffs_from_roots(1.2, 0.8, 2.8);
        const PwlParams p{c.tau, c.sigma, c.delta, c.tau, c.sigma, c.delta, 1.0};
        // find a border start with f(0+) > 0 but first iterate left
        Rng rng(4);
        bool exercised = false;
        for (int i = 0; i < 4000 && !exercised; ++i) {
            const State3 X0{0.0, rng.uniform(-4, -1.01), rng.uniform(-4, 4)};
            const ReturnTimeModel m = build_return_model(p, Side::Left, X0);
            if (m.evaluate(1e-4) <= 0.0) continue;
            if (m.evaluate(1.0) >= 0.0) continue;
            exercised = true;
            RootSearch any;
            RootSearch dir;
            dir.direction = CrossingDirection::FromNegative;
            const auto r_any = least_positive_root(m, 40.0, any);
            const auto r_dir = least_positive_root(m, 40.0, dir);
            REQUIRE(r_any.has_value());
            REQUIRE(r_dir.has_value());
            CHECK(*r_any < *r_dir);
            CHECK(m.evaluate(*r_dir - 1e-4) < 0.0);
        }
        CHECK(exercised);
    }
}

TEST_CASE("crossing index consistency on random saddle-focus travels") {
    Rng rng(7001);
    int done = 0, match = 0;
    while (done < 100) {
        const CompanionCoeffs c = coeffs_from_roots(
            rng.uniform(1.05, 1.8), rng.uniform(0.2, 0.95), rng.uniform(0.2, 2.8));
        const double mu = rng.coin() ? 1.0 : -1.0;
        const PwlParams p{c.tau, c.sigma, c.delta, c.tau, c.sigma, c.delta, mu};
        double y0 = rng.uniform(-3, 3);
        if (y0 + mu >= 0.0) y0 = -mu - 0.5 * std::abs(y0) - 0.1;
        const State3 X0{0.0, y0, rng.uniform(-3, 3)};

        // stepwise crossing index: iterate the left map while x <= 0
        Mat3 A = side_matrix(p, Side::Left);
        State3 X = X0;
        long n_step = -1;
        for (long k = 1; k <= 400; ++k) {
            X = A * X + Vec3{p.mu, 0, 0};
            if (!finite(X)) break;
            if (X.x > 0.0) {
                n_step = k - 1;
                break;
            }
        }
        if (n_step < 0) continue;

        const ReturnTimeModel m = build_return_model(p, Side::Left, X0);
        RootSearch opts;
        opts.direction = CrossingDirection::FromNegative;
        const auto root = least_positive_root(m, double(n_step) + 2.0, opts);
        if (!root.has_value()) continue;
        ++done;
        if (static_cast<long>(std::floor(*root)) == n_step) ++match;
    }
    CHECK(match >= 95); // out of 100
}

TEST_CASE("diagnostic CSV") {
    const PwlParams p = section3_params();
    const ReturnTimeModel m = build_return_model(p, Side::Left, {0.0, -3.0, 0.5});
    std::ostringstream os;
    write_return_time_csv(os, m, 2.0, 0.5);
    const std::string text = os.str();
    CHECK(text.substr(0, text.find('\n')) == "t,f,f_plus,f_minus");
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}
