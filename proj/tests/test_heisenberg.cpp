#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypcc/heisenberg.hpp"
#include "hypcc/numeric.hpp"

using namespace hypcc;
using namespace hypcc::heis;

namespace {

HeisPoint hp(double zr, double zi, double t) {
    Cvec z(1);
    z(0) = Scalar(zr, zi);
    return {z, t};
}

HeisPoint random_heis(Rng& rng, double scale) {
    return hp(scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0),
              scale * scale * rng.uniform(-1.0, 1.0));
}

} // namespace

TEST_CASE("group law: identity, inverse, associativity") {
    Rng rng(3);
    const HeisPoint e = identity(1);
    for (int i = 0; i < 50; ++i) {
        const HeisPoint p = random_heis(rng, 2.0);
        const HeisPoint q = random_heis(rng, 2.0);
        const HeisPoint r = random_heis(rng, 2.0);

        auto near = [](const HeisPoint& a, const HeisPoint& b) {
            return (a.z - b.z).norm() + std::abs(a.t - b.t) < 1e-12;
        };
        CHECK(near(group_mul(e, p), p));
        CHECK(near(group_mul(p, e), p));
        CHECK(near(group_mul(p, inverse(p)), e));
        CHECK(near(group_mul(group_mul(p, q), r), group_mul(p, group_mul(q, r))));
    }
}

TEST_CASE("bracket: antisymmetry, bilinearity, commutator endpoints") {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        const HeisVector v{Cvec::Random(1), 0.0};
        const HeisVector w{Cvec::Random(1), 0.0};
        const auto vw = bracket(v, w);
        const auto wv = bracket(w, v);
        CHECK(vw.t == doctest::Approx(-wv.t).epsilon(1e-14));
        const HeisVector v2{2.5 * v.z, 0.0};
        CHECK(bracket(v2, w).t == doctest::Approx(2.5 * vw.t).epsilon(1e-12));
    }

    // group commutator of exp(sv), exp(sw) lands on the center at s^2 [v,w]
    const HeisVector v{Cvec::Constant(1, Scalar(0.7, -0.3)), 0.0};
    const HeisVector w{Cvec::Constant(1, Scalar(-0.2, 0.9)), 0.0};
    const double lie = bracket(v, w).t;
    for (double s : {1e-2, 1e-3}) {
        const HeisPoint a{s * v.z, 0.0};
        const HeisPoint b{s * w.z, 0.0};
        const HeisPoint comm = group_mul(group_mul(a, b), group_mul(inverse(a), inverse(b)));
        CHECK(comm.z.norm() < 1e-14);
        CHECK(comm.t / (s * s) == doctest::Approx(lie).epsilon(1e-10));
    }
}

TEST_CASE("dilation: identity, composition, automorphism") {
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        const HeisPoint p = random_heis(rng, 1.5);
        const HeisPoint q = random_heis(rng, 1.5);
        const HeisPoint d1 = dilation(1.0, p);
        CHECK((d1.z - p.z).norm() + std::abs(d1.t - p.t) < 1e-15);

        const double a = rng.uniform(0.3, 3.0);
        const double b = rng.uniform(0.3, 3.0);
        const HeisPoint ab = dilation(a, dilation(b, p));
        const HeisPoint ab2 = dilation(a * b, p);
        CHECK((ab.z - ab2.z).norm() + std::abs(ab.t - ab2.t) < 1e-12);

        const HeisPoint lhs = dilation(a, group_mul(p, q));
        const HeisPoint rhs = group_mul(dilation(a, p), dilation(a, q));
        CHECK((lhs.z - rhs.z).norm() + std::abs(lhs.t - rhs.t) < 1e-12);
    }
    CHECK_THROWS_AS((void)dilation(0.0, hp(1, 0, 0)), DomainError);
}

TEST_CASE("cygan gauge: zero, dilation homogeneity, comparison with CC") {
    Rng rng(11);
    const HeisPoint e = identity(1);
    for (int i = 0; i < 40; ++i) {
        const HeisPoint p = random_heis(rng, 2.0);
        const HeisPoint q = random_heis(rng, 2.0);
        CHECK(cygan_distance(p, p) == 0.0);
        const double lambda = rng.uniform(0.2, 4.0);
        CHECK(cygan_distance(dilation(lambda, p), dilation(lambda, q)) ==
              doctest::Approx(lambda * cygan_distance(p, q)).epsilon(1e-10));
    }
    double lo = kInf, hi = 0.0;
    for (int i = 0; i < 500; ++i) {
        const HeisPoint p = random_heis(rng, 1.5);
        const double dcc = cc_distance(e, p, CcMethod::Shooting);
        if (dcc < 1e-6) continue;
        const double ratio = cygan_distance(e, p) / dcc;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(lo > 0.3);   // vertical regime: N/d_cc = 1/sqrt(2 pi)
    CHECK(hi < 1.001); // horizontal regime: equality
}

TEST_CASE("cc_distance: straight chords and pure vertical") {
    const HeisPoint e = identity(1);
    for (CcMethod method : {CcMethod::Shooting, CcMethod::Variational}) {
        CHECK(cc_distance(e, hp(0.8, -0.6, 0.0), method) ==
              doctest::Approx(1.0).epsilon(2e-5));
        CHECK(cc_distance(e, e, method) == 0.0);
    }
    // d((0,0),(0,1)) = sqrt(2 pi), frozen from the isoperimetric profile
    const double expected = 2.5066282746310005;
    CHECK(cc_distance(e, hp(0, 0, 1), CcMethod::Shooting) ==
          doctest::Approx(expected).epsilon(1e-12));

    const double l64 = cc_distance(e, hp(0, 0, 1), CcMethod::Variational, 64);
    const double l128 = cc_distance(e, hp(0, 0, 1), CcMethod::Variational, 128);
    const double l256 = cc_distance(e, hp(0, 0, 1), CcMethod::Variational, 256);
    const double rich = richardson_h2(l128, l256);
    CHECK(std::abs(rich - expected) / expected < 1e-4);
    CHECK(std::abs(l64 - expected) / expected < 2e-3);
}

TEST_CASE("cc_distance: dilation homogeneity of degree one") {
    Rng rng(13);
    for (int i = 0; i < 25; ++i) {
        const HeisPoint p = random_heis(rng, 1.0);
        const HeisPoint q = random_heis(rng, 1.0);
        const double d = cc_distance(p, q, CcMethod::Shooting);
        for (double lambda : {0.5, 2.0}) {
            const double dl =
                cc_distance(dilation(lambda, p), dilation(lambda, q), CcMethod::Shooting);
            CHECK(dl == doctest::Approx(lambda * d).epsilon(1e-9));
        }
    }
}

TEST_CASE("cc_distance: left invariance") {
    Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        const HeisPoint p = random_heis(rng, 1.5);
        const HeisPoint q = random_heis(rng, 1.5);
        const HeisPoint g = random_heis(rng, 2.0);
        const double d = cc_distance(p, q, CcMethod::Shooting);
        const double dg = cc_distance(group_mul(g, p), group_mul(g, q), CcMethod::Shooting);
        CHECK(std::abs(d - dg) < 1e-6 * (1.0 + d));
    }
}

TEST_CASE("cc_distance: shooting and variational agree on random pairs") {
    Rng rng(19);
    const int pairs = 60;
    for (int i = 0; i < pairs; ++i) {
        const HeisPoint p = random_heis(rng, 1.2);
        const HeisPoint q = random_heis(rng, 1.2);
        const double ds = cc_distance(p, q, CcMethod::Shooting);
        if (ds < 1e-3) continue;
        SolveDiagnostics diag;
        const double dv = cc_distance(p, q, CcMethod::Variational, 256, &diag);
        CHECK(std::abs(ds - dv) / ds < 1e-4);
        CHECK(diag.converged);
    }
}

TEST_CASE("cc_distance: triangle inequality within discretization error") {
    Rng rng(23);
    const HeisPoint e = identity(1);
    for (int i = 0; i < 60; ++i) {
        const HeisPoint p = random_heis(rng, 1.0);
        const HeisPoint q = random_heis(rng, 1.0);
        const double dpq = cc_distance(p, q, CcMethod::Shooting);
        const double dp = cc_distance(e, p, CcMethod::Shooting);
        const double dq = cc_distance(e, q, CcMethod::Shooting);
        CHECK(dpq <= dp + dq + 1e-9);
    }
}

TEST_CASE("riemannian_distance: basics and comparison with CC") {
    Rng rng(29);
    const HeisPoint e = identity(1);
    CHECK(riemannian_distance(e, e) == 0.0);
    CHECK(riemannian_distance(e, hp(0.8, -0.6, 0)) <= 1.0 + 1e-6);

    // the vertical axis is a Riemannian geodesic: d((0,0),(0,t)) = |t|
    for (double t : {0.3, 0.8}) {
        CHECK(riemannian_distance(e, hp(0, 0, t), 128) == doctest::Approx(t).epsilon(2e-4));
    }

    for (int i = 0; i < 25; ++i) {
        const HeisPoint p = random_heis(rng, 1.2);
        const HeisPoint q = random_heis(rng, 1.2);
        const double dr = riemannian_distance(p, q, 128);
        const double dc = cc_distance(p, q, CcMethod::Shooting);
        CHECK(dr <= dc + 1e-4);
    }
}

TEST_CASE("horizontal paths: length, homogeneity, violations") {
    const HeisPoint e = identity(1);
    Cvec dz(1);
    dz(0) = Scalar(0.6, -0.8);

    HorizontalPath constant{{e, e, e}, 2};
    CHECK(horizontal_length(constant) == 0.0);

    const auto seg = straight_horizontal(e, dz, 64);
    CHECK(horizontal_length(seg) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((seg.samples.back().z - dz).norm() < 1e-12);

    const auto big = dilate_path(seg, 2.5);
    CHECK(horizontal_length(big) == doctest::Approx(2.5).epsilon(1e-12));

    HorizontalPath bad = seg;
    bad.samples[10].t += 1e-5;
    CHECK_THROWS_AS((void)horizontal_length(bad), ConstraintViolationError);
    try {
        horizontal_length(bad);
    } catch (const ConstraintViolationError& err) {
        CHECK((err.worst_step == 9 || err.worst_step == 10));
        CHECK(err.worst_violation == doctest::Approx(1e-5).epsilon(1e-6));
    }
}

TEST_CASE("cc_geodesic_path: horizontal, endpoint-exact, length-matching") {
    Rng rng(31);
    for (int i = 0; i < 10; ++i) {
        const HeisPoint p = random_heis(rng, 1.0);
        const HeisPoint q = random_heis(rng, 1.0);
        const auto path = cc_geodesic_path(p, q, 256);
        CHECK(path.samples.size() == 257);
        CHECK((path.samples.front().z - p.z).norm() +
                  std::abs(path.samples.front().t - p.t) <
              1e-12);
        CHECK((path.samples.back().z - q.z).norm() < 1e-9);
        const double len = horizontal_length(path);  // validates horizontality
        const double d = cc_distance(p, q, CcMethod::Shooting);
        if (d > 1e-3) CHECK(std::abs(len - d) / d < 1e-3);
    }
}
