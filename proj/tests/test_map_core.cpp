#include <doctest.h>

#include "shilnikov/errors.hpp"
#include "shilnikov/map_core.hpp"
#include "test_support.hpp"

using namespace shilnikov;
using namespace shilnikov::test;

TEST_CASE("companion matrices follow the normal-form template") {
    const PwlParams p = section3_params();
    const auto [Al, Ar] = build_matrices(p);

    CHECK(Al(0, 0) == 1.0);
    CHECK(Al(0, 1) == 1.0);
    CHECK(Al(0, 2) == 0.0);
    CHECK(Al(1, 0) == 0.25); // -sigma_l
    CHECK(Al(1, 1) == 0.0);
    CHECK(Al(1, 2) == 1.0);
    CHECK(Al(2, 0) == 0.3);
    CHECK(Al(2, 1) == 0.0);
    CHECK(Al(2, 2) == 0.0);

    CHECK(det(Al) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(det(Ar) == doctest::Approx(-1.27).epsilon(1e-14));
}

TEST_CASE("permutation-like companion matrix for (0,0,1)") {
    const Mat3 A = companion_matrix({0.0, 0.0, 1.0});
    CHECK(det(A) == doctest::Approx(1.0));
    const Vec3 v = A * Vec3{1.0, 2.0, 3.0};
    CHECK(v.x == 2.0);
    CHECK(v.y == 3.0);
    CHECK(v.z == 1.0);
}

TEST_CASE("both branches agree on the border") {
    const PwlParams p = section3_params();
    Rng rng(101);
    for (int i = 0; i < 50; ++i) {
        const State3 X{0.0, rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const State3 l = side_map(p, Side::Left)(X);
        const State3 r = side_map(p, Side::Right)(X);
        CHECK(norm(l - r) == 0.0);
        const State3 s = step(p, X);
        CHECK(s.x == X.y + p.mu);
        CHECK(s.y == X.z);
        CHECK(s.z == 0.0);
    }
}

TEST_CASE("single step from (1,0,0) with section-3 parameters") {
    const State3 r = step(section3_params(), {1.0, 0.0, 0.0});
    CHECK(r.x == doctest::Approx(1.58).epsilon(1e-14));
    CHECK(r.y == doctest::Approx(-0.38).epsilon(1e-14));
    CHECK(r.z == doctest::Approx(-1.27).epsilon(1e-14));
}

TEST_CASE("fixed points of the motivating example") {
    const PwlParams p = section3_params();
    const auto [L, R] = fixed_points(p);

    CHECK(L.admissible);
    CHECK(rel_err(L.location, {-1.8182, -1.0, -0.5455}) < 1e-3);
    // The quoted right fixed point in the source example is (0.4878, -0.8049,
    // -0.6195), which corresponds to tau_r = 0.6; the closed form at
    // tau_r = 0.58 gives the value below (denominator 2.07).
    CHECK(R.admissible);
    CHECK(rel_err(R.location, {0.4831, -0.7971, -0.6135}) < 1e-3);

    SUBCASE("they are genuine fixed points") {
        CHECK(rel_err(step(p, L.location), L.location) < 1e-12);
        CHECK(rel_err(step(p, R.location), R.location) < 1e-12);
    }
}

TEST_CASE("fixed points are linear in mu") {
    PwlParams p = section3_params();
    const auto [L1, R1] = fixed_points(p);
    p.mu = -p.mu;
    const auto [L2, R2] = fixed_points(p);
    CHECK(norm(L2.location + L1.location) < 1e-14);
    CHECK(norm(R2.location + R1.location) < 1e-14);
}

TEST_CASE("degenerate fixed point when an eigenvalue equals 1") {
    PwlParams p = section3_params();
    p.tau_l = 1.0;
    p.sigma_l = 1.0;
    p.delta_l = 1.0; // 1 - tau + sigma - delta = 0
    CHECK_THROWS_AS(fixed_points(p), DegenerateFixedPointError);
}

TEST_CASE("inverse_step round trip") {
    const PwlParams p = section3_params();
    Rng rng(7);
    int nonempty = 0;
    for (int i = 0; i < 200; ++i) {
        State3 Y{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        if (Y.x == 0.0) Y.x = 0.5;
        const State3 X = step(p, Y);
        const auto pre = inverse_step(p, X);
        bool found = false;
        for (const State3& cand : pre) {
            CHECK(rel_err(step(p, cand), X) < 1e-12);
            if (norm(cand - Y) < 1e-9 * (1.0 + norm(Y))) found = true;
        }
        CHECK(found);
        if (!pre.empty()) ++nonempty;
    }
    CHECK(nonempty == 200);
}

TEST_CASE("inverse_step can return 0 or 2 preimages") {
    const PwlParams p = section3_params();
    Rng rng(12);
    int zeros = 0, twos = 0;
    for (int i = 0; i < 4000 && (zeros == 0 || twos == 0); ++i) {
        const State3 X{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)};
        const auto pre = inverse_step(p, X);
        if (pre.empty()) ++zeros;
        if (pre.size() == 2) ++twos;
    }
    CHECK(zeros > 0);
    CHECK(twos > 0);
}

TEST_CASE("border tie chain") {
    PwlParams p = section3_params(); // mu = 1

    CHECK(resolve_side(p, {-0.5, 0, 0}) == Side::Left);
    CHECK(resolve_side(p, {0.5, 0, 0}) == Side::Right);
    // x = 0: y vs -mu
    CHECK(resolve_side(p, {0.0, -2.0, 0}) == Side::Left);
    CHECK(resolve_side(p, {0.0, 0.5, 0}) == Side::Right);
    // y = -mu: z vs -mu
    CHECK(resolve_side(p, {0.0, -1.0, -2.0}) == Side::Left);
    CHECK(resolve_side(p, {0.0, -1.0, 3.0}) == Side::Right);
    // z = -mu as well: sign of mu
    CHECK(resolve_side(p, {0.0, -1.0, -1.0}) == Side::Right);
    p.mu = -1.0;
    CHECK(resolve_side(p, {0.0, 1.0, 1.0}) == Side::Left);
    p.mu = 0.0;
    CHECK_THROWS_AS(resolve_side(p, {0.0, 0.0, 0.0}), UnresolvableSideError);
}

TEST_CASE("parameter validation") {
    PwlParams p = section3_params();
    p.delta_r = 0.0;
    CHECK_THROWS_AS(p.validate(), SingularMatrixError);
    p = section3_params();
    p.mu = 0.0;
    CHECK_THROWS_AS(p.validate(), UnresolvableSideError);
    CHECK_NOTHROW(section3_params().validate());
}
