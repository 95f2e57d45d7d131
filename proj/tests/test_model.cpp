#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypcc/lbfgs.hpp"
#include "hypcc/model.hpp"
#include "test_support.hpp"

using namespace hypcc;
using namespace hypcc::model;
using hypcc::testing::random_ideal;
using hypcc::testing::random_isometry;
using hypcc::testing::random_point;
using hypcc::testing::random_tangent;

namespace {

ProjectivePoint make_point(const ModelSpace& s, std::initializer_list<Scalar> v) {
    Cvec rep(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (const auto& x : v) rep(i++) = x;
    return ProjectivePoint(s, rep);
}

IdealPoint make_ideal(const ModelSpace& s, std::initializer_list<Scalar> v) {
    Cvec rep(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (const auto& x : v) rep(i++) = x;
    return IdealPoint(s, rep);
}

/// Test-only variational oracle for the ambient distance: path optimization in
/// the projective ball chart, gradients by central differences.
class BallPathObjective final : public opt::Objective {
public:
    BallPathObjective(const ModelSpace& space, Cvec a, Cvec b, int steps)
        : space_(space), a_(std::move(a)), b_(std::move(b)), m_(steps),
          dim_(space.ambient_dim() - 1) {}

    int variables() const { return 2 * dim_ * (m_ - 1); }

    double energy(const std::vector<double>& x) const {
        double e = 0.0;
        for (int k = 0; k < m_; ++k) {
            const Cvec xa = lift(x, k);
            const Cvec xb = lift(x, k + 1);
            e += std::norm(model::form(xa, xb)) - 1.0;
        }
        return 0.5 * m_ * e;
    }

    double value_and_gradient(const std::vector<double>& x,
                              std::vector<double>& grad) override {
        grad.assign(x.size(), 0.0);
        const double h = 1e-6;
        std::vector<double> xp = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            xp[i] = x[i] + h;
            const double fp = energy(xp);
            xp[i] = x[i] - h;
            const double fm = energy(xp);
            xp[i] = x[i];
            grad[i] = (fp - fm) / (2.0 * h);
        }
        return energy(x);
    }

    double length(const std::vector<double>& x) const {
        double len = 0.0;
        for (int k = 0; k < m_; ++k)
            len += acosh_stable(std::abs(model::form(lift(x, k), lift(x, k + 1))));
        return len;
    }

    std::vector<double> init() const {
        std::vector<double> x(static_cast<std::size_t>(variables()));
        const Cvec ya = chart(a_);
        const Cvec yb = chart(b_);
        for (int k = 1; k < m_; ++k) {
            const double s = static_cast<double>(k) / m_;
            for (int j = 0; j < dim_; ++j) {
                const Scalar y = (1.0 - s) * ya(j) + s * yb(j);
                x[2 * ((k - 1) * dim_ + j)] = y.real();
                x[2 * ((k - 1) * dim_ + j) + 1] = y.imag();
            }
        }
        return x;
    }

private:
    static Cvec chart(const Cvec& rep) {
        return rep.head(rep.size() - 1) / rep(rep.size() - 1);
    }
    Cvec lift(const std::vector<double>& x, int k) const {
        Cvec y(dim_ + 1);
        if (k == 0) return a_;
        if (k == m_) return b_;
        for (int j = 0; j < dim_; ++j)
            y(j) = Scalar(x[2 * ((k - 1) * dim_ + j)], x[2 * ((k - 1) * dim_ + j) + 1]);
        y(dim_) = Scalar(1, 0);
        const double n2 = y.head(dim_).squaredNorm();
        return y / std::sqrt(std::max(1e-12, 1.0 - n2));
    }

    ModelSpace space_;
    Cvec a_, b_;
    int m_;
    int dim_;
};

double oracle_distance(const ProjectivePoint& a, const ProjectivePoint& b, int m) {
    BallPathObjective obj(a.space(), a.rep(), b.rep(), m);
    std::vector<double> x = obj.init();
    opt::LbfgsOptions options;
    options.max_iterations = 800;
    options.gradient_tol = 1e-9;
    opt::minimize(obj, x, options);
    return obj.length(x);
}

} // namespace

TEST_CASE("distance: identity, hyperboloid ray, symmetry") {
    const ModelSpace h2 = real_h(2);
    const auto o = make_point(h2, {0.0, 0.0, 1.0});
    CHECK(distance(o, o) == doctest::Approx(0.0).epsilon(1e-12));

    const auto y = make_point(h2, {std::sinh(1.0), 0.0, std::cosh(1.0)});
    CHECK(distance(o, y) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(distance(y, o) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distance: triangle inequality on random triples") {
    Rng rng(11);
    for (const ModelSpace s : {real_h(2), real_h(3), complex_h(2)}) {
        for (int i = 0; i < 1000; ++i) {
            const auto a = random_point(s, rng, 3.0);
            const auto b = random_point(s, rng, 3.0);
            const auto c = random_point(s, rng, 3.0);
            CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
        }
    }
}

TEST_CASE("distance: complex model matched by path-minimization oracle") {
    const ModelSpace s = complex_h(2);
    const auto a = make_point(s, {Scalar(0.31, 0.12), Scalar(-0.05, 0.2), Scalar(1.1, 0.0)});
    const auto b = make_point(s, {Scalar(-0.2, 0.25), Scalar(0.33, -0.1), Scalar(1.2, 0.0)});
    const double exact = distance(a, b);
    const double coarse = oracle_distance(a, b, 48);
    const double fine = oracle_distance(a, b, 96);
    const double extrapolated = fine + (fine - coarse) / 3.0;
    CHECK(std::abs(extrapolated - exact) / exact < 1e-4);
}

TEST_CASE("distance: model mismatch and spacelike representatives rejected") {
    const auto o2 = make_point(real_h(2), {0.0, 0.0, 1.0});
    const auto o3 = make_point(real_h(3), {0.0, 0.0, 0.0, 1.0});
    CHECK_THROWS_AS((void)distance(o2, o3), ModelMismatchError);
    CHECK_THROWS_AS(make_point(real_h(2), {1.0, 0.0, 0.5}), RepresentationError);
}

TEST_CASE("geodesic_ray: unit speed, common-geodesic spacing, errors") {
    Rng rng(5);
    for (const ModelSpace s : {real_h(3), complex_h(2)}) {
        const auto o = random_point(s, rng, 1.0);
        const auto u = random_tangent(o, rng);
        CHECK(distance(geodesic_ray(o, u, 0.0), o) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(distance(o, geodesic_ray(o, u, 5.0)) == doctest::Approx(5.0).epsilon(1e-10));
        CHECK(distance(geodesic_ray(o, u, 1.0), geodesic_ray(o, u, 3.0)) ==
              doctest::Approx(2.0).epsilon(1e-10));

        TangentVector bad{o, 2.0 * u.vec};
        CHECK_THROWS_AS((void)geodesic_ray(o, bad, 1.0), NormalizationError);
    }
}

TEST_CASE("geodesic_between_ideal: symmetric pair, unit speed, reversal") {
    const ModelSpace h2 = real_h(2);
    const auto xi = make_ideal(h2, {-1.0, 0.0, 1.0});
    const auto eta = make_ideal(h2, {1.0, 0.0, 1.0});
    const auto g = geodesic_between_ideal(xi, eta);
    const auto center = make_point(h2, {0.0, 0.0, 1.0});
    CHECK(distance(g.at(0.0), center) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(distance(g.at(0.0), g.at(7.0)) == doctest::Approx(7.0).epsilon(1e-10));

    const auto rev = geodesic_between_ideal(eta, xi);
    Rng rng(7);
    for (double t : {-2.0, 0.0, 1.3}) {
        CHECK(projectively_equal(g.at(t), rev.at(-t)));
    }
    CHECK(projectively_equal(g.forward_ideal(), eta));
    CHECK(projectively_equal(g.backward_ideal(), xi));
    CHECK_THROWS_AS((void)geodesic_between_ideal(xi, xi), DegenerateGeodesicError);
}

TEST_CASE("busemann: basepoint, unit decay along the ray, limit agreement") {
    Rng rng(13);
    for (const ModelSpace s : {real_h(2), complex_h(2)}) {
        for (int i = 0; i < 25; ++i) {
            const auto o = random_point(s, rng, 1.5);
            const auto omega = random_ideal(s, rng);
            const BusemannChart chart(omega, o);
            CHECK(std::abs(busemann_value(chart, o)) < 1e-12);

            const auto u = unit_tangent_toward(o, omega);
            for (double t : {0.5, 2.0}) {
                CHECK(busemann_value(chart, geodesic_ray(o, u, t)) ==
                      doctest::Approx(-t).epsilon(1e-10));
            }

            const auto x = random_point(s, rng, 2.0);
            CHECK(std::abs(busemann_value(chart, x) - busemann_value_by_limit(chart, x, 30.0)) <
                  1e-8);
            // 1-Lipschitz against the basepoint
            CHECK(std::abs(busemann_value(chart, x)) <= distance(o, x) + 1e-9);
        }
    }
}

TEST_CASE("busemann_gradient: ray direction, unit norm, finite differences") {
    Rng rng(17);
    for (const ModelSpace s : {real_h(3), complex_h(2)}) {
        const auto o = random_point(s, rng, 1.0);
        const auto omega = random_ideal(s, rng);
        const BusemannChart chart(omega, o);

        const auto toward = unit_tangent_toward(o, omega);
        const auto x = geodesic_ray(o, toward, 1.0);
        const auto grad = busemann_gradient(chart, x);
        CHECK(grad.norm() == doctest::Approx(1.0).epsilon(1e-10));
        // velocity of the ray at x equals -grad b
        const Cvec velocity = std::sinh(1.0) * o.rep() + std::cosh(1.0) * toward.vec;
        CHECK((velocity + grad.vec).norm() < 1e-9);

        for (int i = 0; i < 10; ++i) {
            const auto y = random_point(s, rng, 2.0);
            const auto g = busemann_gradient(chart, y);
            const auto v = random_tangent(y, rng);
            const double h = 1e-5;
            const auto yp = geodesic_ray(y, v, h);
            const auto ym = geodesic_ray(y, v, -h);
            const double fd = (busemann_value(chart, yp) - busemann_value(chart, ym)) / (2 * h);
            CHECK(std::abs(fd - form(g.vec, v.vec).real()) < 1e-6);
        }
    }
}

TEST_CASE("gromov_product at interior points") {
    Rng rng(23);
    const ModelSpace s = complex_h(2);
    const auto o = random_point(s, rng, 2.0);
    const auto x = random_point(s, rng, 2.0);
    const auto y = random_point(s, rng, 2.0);
    CHECK(gromov_product(x, x, o) == doctest::Approx(distance(o, x)).epsilon(1e-10));
    CHECK(gromov_product(x, y, x) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(gromov_product(x, y, o) ==
          doctest::Approx(0.5 * (distance(x, o) + distance(y, o) - distance(x, y)))
              .epsilon(1e-12));
    CHECK(gromov_product(x, y, o) <= std::min(distance(o, x), distance(o, y)) + 1e-12);
}

TEST_CASE("gromov_product of ideal points: diagonal, chordal identity, opposite") {
    const ModelSpace h3 = real_h(3);
    const auto o = make_point(h3, {0.0, 0.0, 0.0, 1.0});
    Rng rng(29);
    const auto xi = random_ideal(h3, rng);
    CHECK(gromov_product(xi, xi, o) == kInf);

    for (int i = 0; i < 50; ++i) {
        const auto a = random_ideal(h3, rng);
        const auto b = random_ideal(h3, rng);
        if (projectively_equal(a, b)) continue;
        const double chordal = (a.rep().head(3) - b.rep().head(3)).norm();
        CHECK(std::exp(-gromov_product(a, b, o)) ==
              doctest::Approx(0.5 * chordal).epsilon(1e-8));
    }

    const auto u = unit_tangent_toward(o, xi);
    const auto omega = opposite_ideal(o, xi);
    CHECK(gromov_product(xi, omega, o) == doctest::Approx(0.0).epsilon(1e-9));
    (void)u;
}

TEST_CASE("gromov_product w.r.t. Busemann charts") {
    const ModelSpace h2 = real_h(2);
    const auto o = make_point(h2, {0.0, 0.0, 1.0});
    const auto omega = make_ideal(h2, {-1.0, 0.0, 1.0});
    const BusemannChart chart(omega, o);

    const auto xi = make_ideal(h2, {1.0, 0.0, 1.0});
    CHECK(gromov_product(xi, xi, chart) == kInf);
    CHECK_THROWS_AS((void)gromov_product(omega, xi, chart), CenterCollisionError);

    // boundary angle phi maps to tan(phi/2) on the upper-half-space axis
    for (double phi : {0.3, 1.0, 2.2}) {
        const auto eta = make_ideal(h2, {std::cos(phi), std::sin(phi), 1.0});
        CHECK(std::exp(-gromov_product(xi, eta, chart)) ==
              doctest::Approx(std::tan(0.5 * phi)).epsilon(1e-8));
    }

    // charts with the same center differ by the constant b(o2)
    Rng rng(31);
    const auto o2 = random_point(h2, rng, 1.0);
    const BusemannChart chart2(omega, o2);
    const double shift = busemann_value(chart, o2);
    const auto eta = make_ideal(h2, {std::cos(1.3), std::sin(1.3), 1.0});
    const double p1 = gromov_product(xi, eta, chart);
    const double p2 = gromov_product(xi, eta, chart2);
    CHECK(p1 - p2 == doctest::Approx(shift).epsilon(1e-8));

    // mixed product converges to the interior formula along the geodesic
    const auto g = geodesic_between_ideal(omega, eta);
    const auto x = geodesic_between_ideal(omega, xi).at(0.7);
    const double mixed = gromov_product(x, eta, chart);
    const double direct =
        0.5 * (busemann_value(chart, x) + busemann_value(chart, g.at(25.0)) -
               distance(x, g.at(25.0)));
    CHECK(mixed == doctest::Approx(direct).epsilon(1e-7));
}

TEST_CASE("delta-inequality for all four Gromov product variants") {
    const double delta = 2.0 * std::log(0.5 * (1.0 + std::sqrt(5.0))) + 1e-6;
    Rng rng(37);
    const ModelSpace s = complex_h(2);
    const auto o = make_point(s, {0.0, 0.0, 1.0});
    const auto omega = make_ideal(s, {0.0, 1.0, 1.0});
    const BusemannChart chart(omega, o);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_ideal(s, rng);
        const auto b = random_ideal(s, rng);
        const auto c = random_ideal(s, rng);
        if (projectively_equal(a, b) || projectively_equal(a, c) ||
            projectively_equal(b, c))
            continue;
        const auto base = random_point(s, rng, 1.5);
        CHECK(is_delta_triple(gromov_product(a, b, base), gromov_product(a, c, base),
                              gromov_product(b, c, base), delta));
        if (!projectively_equal(a, omega) && !projectively_equal(b, omega) &&
            !projectively_equal(c, omega)) {
            CHECK(is_delta_triple(gromov_product(a, b, chart), gromov_product(a, c, chart),
                                  gromov_product(b, c, chart), delta));
        }
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("Ptolemy inequality for the visual function") {
    Rng rng(41);
    const ModelSpace s = complex_h(2);
    const auto o = make_point(s, {0.0, 0.0, 1.0});
    auto vis = [&](const IdealPoint& a, const IdealPoint& b) {
        return projectively_equal(a, b) ? 0.0 : std::exp(-gromov_product(a, b, o));
    };
    for (int i = 0; i < 1000; ++i) {
        const auto x = random_ideal(s, rng);
        const auto y = random_ideal(s, rng);
        const auto u = random_ideal(s, rng);
        const auto v = random_ideal(s, rng);
        const double slack =
            vis(x, u) * vis(y, v) + vis(x, v) * vis(y, u) - vis(x, y) * vis(u, v);
        CHECK(slack >= -1e-9);
    }
}

TEST_CASE("isometry invariance of distance and Gromov products") {
    Rng rng(43);
    for (const ModelSpace s : {real_h(3), complex_h(2)}) {
        for (int i = 0; i < 40; ++i) {
            const auto m = random_isometry(s, rng);
            const auto x = random_point(s, rng, 2.0);
            const auto y = random_point(s, rng, 2.0);
            const auto base = random_point(s, rng, 2.0);
            const ProjectivePoint mx(s, m * x.rep());
            const ProjectivePoint my(s, m * y.rep());
            const ProjectivePoint mb(s, m * base.rep());
            CHECK(std::abs(distance(x, y) - distance(mx, my)) < 1e-9);
            CHECK(std::abs(gromov_product(x, y, base) - gromov_product(mx, my, mb)) < 1e-9);

            const auto xi = random_ideal(s, rng);
            const auto eta = random_ideal(s, rng);
            if (projectively_equal(xi, eta)) continue;
            const IdealPoint mxi(s, m * xi.rep());
            const IdealPoint meta(s, m * eta.rep());
            CHECK(std::abs(gromov_product(xi, eta, base) - gromov_product(mxi, meta, mb)) <
                  1e-9);
        }
    }
}

TEST_CASE("curvature eigensplit: J-direction, orthogonal line, dimensions") {
    Rng rng(47);
    const ModelSpace s = complex_h(2);
    const auto o = random_point(s, rng, 1.0);
    const auto u = random_tangent(o, rng);

    TangentVector ju{o, Scalar(0, 1) * u.vec};
    const auto split_ju = curvature_eigensplit(u, ju);
    CHECK(split_ju.e_minus1.norm() < 1e-10);
    CHECK((split_ju.e_minus4.vec - ju.vec).norm() < 1e-10);

    // a complex-orthogonal direction lies entirely in E(-1)
    Cvec g(3);
    for (int j = 0; j < 3; ++j) g(j) = Scalar(rng.normal(), rng.normal());
    Cvec w = g + form(o.rep(), g) * o.rep();
    w -= form(u.vec, w) * u.vec;  // remove the complex u-line
    TangentVector v{o, w};
    const auto split_w = curvature_eigensplit(u, v);
    CHECK(split_w.e_minus4.norm() < 1e-9);
    CHECK((split_w.e_minus1.vec - w).norm() < 1e-9);

    // dimensions for CH^2: E(-1) has real dimension 2, E(-4) dimension 1
    // (u-perp inside the horizontal space is spanned by {w, Jw, Ju})
    const auto split_jw = curvature_eigensplit(u, {o, Scalar(0, 1) * w});
    CHECK(split_jw.e_minus4.norm() < 1e-9);

    // real model: the E(-4) part is always zero
    const ModelSpace r = real_h(3);
    const auto ro = random_point(r, rng, 1.0);
    const auto ru = random_tangent(ro, rng);
    Cvec rg(4);
    for (int j = 0; j < 4; ++j) rg(j) = Scalar(rng.normal(), 0.0);
    Cvec rw = rg + form(ro.rep(), rg) * ro.rep();
    rw -= form(ru.vec, rw).real() * ru.vec;
    const auto split_r = curvature_eigensplit(ru, {ro, rw});
    CHECK(split_r.e_minus4.norm() == 0.0);

    TangentVector not_orth{o, u.vec};
    CHECK_THROWS_AS((void)curvature_eigensplit(u, not_orth), PreconditionError);
}

TEST_CASE("jacobi_scale formulas and domain") {
    CHECK(jacobi_scale(-1.0, 1.3, JacobiKind::Sphere) == doctest::Approx(std::sinh(1.3)));
    CHECK(jacobi_scale(-4.0, 0.0, JacobiKind::Sphere) == 0.0);
    CHECK(jacobi_scale(-1.0, 0.8, JacobiKind::Horosphere) == doctest::Approx(std::exp(0.8)));
    CHECK(jacobi_scale(-4.0, 0.8, JacobiKind::Horosphere) == doctest::Approx(std::exp(1.6)));
    CHECK_THROWS_AS((void)jacobi_scale(-2.0, 1.0, JacobiKind::Sphere), DomainError);
    CHECK_THROWS_AS((void)jacobi_scale(-1.0, -1.0, JacobiKind::Sphere), DomainError);
}

TEST_CASE("normalization check: Jacobi growth matches the [-4,-1] eigensplit") {
    // |V(t)| for V(0)=0, V'(0)=v: sinh(t) on E(-1) and sinh(2t)/2 on E(-4).
    Rng rng(53);
    const ModelSpace s = complex_h(2);
    const auto o = random_point(s, rng, 0.5);
    const auto u = random_tangent(o, rng);
    Cvec g(3);
    for (int j = 0; j < 3; ++j) g(j) = Scalar(rng.normal(), rng.normal());
    Cvec w = g + form(o.rep(), g) * o.rep();
    w -= form(u.vec, w) * u.vec;
    w /= std::sqrt(form(w, w).real());

    const double t = 1.5;
    const double h = 1e-5;
    auto jacobi_norm = [&](const Cvec& v) {
        auto dir = [&](double sgn) {
            Cvec d = std::cos(sgn * h) * u.vec + std::sin(sgn * h) * v;
            return geodesic_ray(o, {o, d / std::sqrt(form(d, d).real())}, t).rep();
        };
        Cvec diff = (dir(1.0) - dir(-1.0)) / (2.0 * h);
        const Cvec base = geodesic_ray(o, u, t).rep();
        diff += form(base, diff) * base;  // horizontal projection
        return std::sqrt(form(diff, diff).real());
    };
    CHECK(jacobi_norm(w) == doctest::Approx(std::sinh(t)).epsilon(1e-5));
    CHECK(jacobi_norm(Scalar(0, 1) * u.vec) ==
          doctest::Approx(0.5 * std::sinh(2.0 * t)).epsilon(1e-5));
}

TEST_CASE("is_delta_triple") {
    CHECK(is_delta_triple(1.0, 1.0, 5.0, 0.1));
    CHECK_FALSE(is_delta_triple(1.0, 3.0, 5.0, 0.5));
    CHECK(is_delta_triple(0.0, 0.96, 7.0, 0.9624));
}
