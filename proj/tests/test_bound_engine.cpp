#include "mombound/bound_engine.hpp"
#include "mombound/error.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace mombound;
using testutil::close_rel;

namespace {

std::string error_text(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "<no error>";
}

Errc error_code(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::invalid_argument;
}

void check_atoms(const DiscreteDistribution& d, std::vector<Atom> want, double tol = 1e-12) {
    REQUIRE(d.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(d.atoms()[i].x == doctest::Approx(want[i].x).epsilon(tol));
        CHECK(d.atoms()[i].p == doctest::Approx(want[i].p).epsilon(tol));
    }
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return g;
}

}  // namespace

TEST_SUITE("constants") {
    TEST_CASE("sharp constant is (4/27)^{1/4} = 0.620...") {
        CHECK(sharp_constant() == doctest::Approx(0.6204032394013997).epsilon(1e-15));
        CHECK(std::pow(sharp_constant(), 4) == doctest::Approx(4.0 / 27.0).epsilon(1e-15));
        // the extremal m3 for m4 = 3 is sqrt 2
        CHECK(sharp_constant() * std::pow(3.0, 0.75) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
}

TEST_SUITE("bound_trivial") {
    TEST_CASE("examples") {
        CHECK(bound_trivial(MomentVector::raw(0, 1, 0, 1)) == 1.0);
        CHECK(bound_trivial(MomentVector::raw(0, 2, 0, 16)) == doctest::Approx(8.0).epsilon(1e-15));
        CHECK(bound_trivial(MomentVector::raw(0, 1, 0, 3)) == doctest::Approx(2.2795070569547775).epsilon(1e-14));
        CHECK(bound_trivial(MomentVector::raw(0, 0, 0, 0)) == 0.0);
    }

    TEST_CASE("attained by a nonnegative constant, and holds without any sign condition") {
        const MomentVector c = moments_from_discrete(DiscreteDistribution::point_mass(1.7));
        CHECK(c.m3() == doctest::Approx(bound_trivial(c)).epsilon(1e-14));
        std::mt19937_64 rng(21);
        for (int t = 0; t < 2000; ++t) {
            const MomentVector mv = moments_from_discrete(testutil::random_distribution(rng, 8));
            CHECK(mv.m3() <= bound_trivial(mv) * (1 + 1e-12));
        }
    }
}

TEST_SUITE("bound_sqrt") {
    TEST_CASE("Rademacher: zero bound, tight") {
        const BoundResult r = bound_sqrt(MomentVector::raw(0, 1, 0, 1));
        CHECK(r.bound == 0.0);
        CHECK(r.slack == 0.0);
        CHECK(r.tight);
        REQUIRE(r.witness);
        check_atoms(*r.witness, {{-1, 0.5}, {1, 0.5}});
    }

    TEST_CASE("X_{1,2}: bound 2, tight, witness recovered") {
        const BoundResult r = bound_sqrt(MomentVector::raw(0, 2, 2, 6));
        CHECK(r.bound == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(r.slack == doctest::Approx(0.0).scale(1.0));
        CHECK(r.tight);
        REQUIRE(r.witness);
        check_atoms(*r.witness, {{-1, 2.0 / 3}, {2, 1.0 / 3}});
    }

    TEST_CASE("inflated fourth moment: slack 1, not tight") {
        const double r2 = std::sqrt(2.0);
        const MomentVector mv = moments_from_discrete(DiscreteDistribution({{-r2, 0.25}, {0, 0.5}, {r2, 0.25}}));
        CHECK(mv.m2() == doctest::Approx(1.0));
        CHECK(mv.m4() == doctest::Approx(2.0));
        for (const MomentVector& v : {mv, MomentVector::raw(0, 1, 0, 2)}) {
            const BoundResult r = bound_sqrt(v);
            CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(r.slack == doctest::Approx(1.0).epsilon(1e-14));
            CHECK_FALSE(r.tight);
            CHECK_FALSE(r.witness);
        }
    }

    TEST_CASE("errors") {
        CHECK(error_text([] { bound_sqrt(MomentVector::raw(0.5, 1, 0, 1)); }) ==
              "precondition m1 <= 0 violated (use m3_interval)");
        CHECK(error_code([] { bound_sqrt(MomentVector::raw(0.5, 1, 0, 1)); }) == Errc::precondition);
        CHECK(error_text([] { bound_sqrt(MomentVector::raw(0, 1, 0, 0.5)); }) == "not a moment vector");
        CHECK(error_code([] { bound_sqrt(MomentVector::raw(0, 1, 0, 0.5)); }) == Errc::infeasible);
    }

    TEST_CASE("negative m3 just reports a large slack") {
        const MomentVector mv = moments_from_discrete(two_point_zero_mean(2, 1));
        const BoundResult r = bound_sqrt(mv);
        CHECK(mv.m3() == doctest::Approx(-2.0));
        CHECK(r.slack == doctest::Approx(4.0));
        CHECK_FALSE(r.tight);
    }

    TEST_CASE("equality on X_{u,v} of a log grid whenever u <= v") {
        for (double u : log_grid(0.05, 20, 40)) {
            for (double v : log_grid(0.05, 20, 40)) {
                if (u > v) continue;
                const MomentVector mv = moments_from_discrete(two_point_zero_mean(u, v));
                const BoundResult r = bound_sqrt(mv);
                INFO("u = " << u << ", v = " << v);
                CHECK(std::fabs(r.slack) <= 1e-10 * tolerance_scale(mv));
                CHECK(r.tight);
                REQUIRE(r.witness);
                REQUIRE(r.witness->size() == 2u);
                CHECK(close_rel(r.witness->atoms()[0].x, -u, 1e-7));
                CHECK(close_rel(r.witness->atoms()[1].x, v, 1e-7));
            }
        }
    }

    TEST_CASE("u > v puts m3 below zero: the bound is |m3| and the slack 2|m3|") {
        for (double u : log_grid(0.1, 10, 20)) {
            for (double v : log_grid(0.1, 10, 20)) {
                if (u <= v) continue;
                const MomentVector mv = moments_from_discrete(two_point_zero_mean(u, v));
                const BoundResult r = bound_sqrt(mv);
                CHECK(mv.m3() < 0.0);
                CHECK(close_rel(r.bound, -mv.m3(), 1e-9, tolerance_scale(mv)));
                CHECK(close_rel(r.slack, 2 * u * v * (u - v), 1e-9, tolerance_scale(mv)));
                CHECK_FALSE(r.tight);
            }
        }
    }
}

TEST_SUITE("bound_quarter") {
    TEST_CASE("m4 = 1 gives the sharp constant for any admissible vector") {
        for (const MomentVector& mv : {MomentVector::raw(0, 1, 0, 1), MomentVector::raw(-0.5, 0.5, -0.1, 1),
                                       MomentVector::raw(0, 0.5, 0.3, 1)}) {
            REQUIRE(feasibility(mv).psd);
            CHECK(bound_quarter(mv).bound == doctest::Approx(0.6204032394013997).epsilon(1e-15));
        }
    }

    TEST_CASE("point mass at zero") {
        const BoundResult r = bound_quarter(MomentVector::raw(0, 0, 0, 0));
        CHECK(r.bound == 0.0);
        CHECK(r.slack == 0.0);
        CHECK(r.tight);
        REQUIRE(r.witness);
        check_atoms(*r.witness, {{0.0, 1.0}});
    }

    TEST_CASE("extremal law at sigma = 3^{-1/4}") {
        const MomentVector mv = moments_from_discrete(extremal_from_sigma(std::pow(3.0, -0.25)));
        CHECK(mv.m2() == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
        CHECK(mv.m3() == doctest::Approx(std::sqrt(2.0) * std::pow(3.0, -0.75)).epsilon(1e-14));
        CHECK(mv.m3() == doctest::Approx(0.6204032).epsilon(1e-7));
        CHECK(mv.m4() == doctest::Approx(1.0).epsilon(1e-14));
        const BoundResult r = bound_quarter(mv);
        CHECK(std::fabs(r.slack) <= 1e-12);
        CHECK(r.tight);
        REQUIRE(r.witness);
        const ExtremalSpec s = ExtremalSpec::from_sigma(std::pow(3.0, -0.25));
        check_atoms(*r.witness, {{-s.u, s.v / (s.u + s.v)}, {s.v, s.u / (s.u + s.v)}}, 1e-10);
    }

    TEST_CASE("X_{1,2} is tight for the sqrt bound but not for the quarter bound") {
        const MomentVector mv = MomentVector::raw(0, 2, 2, 6);
        CHECK(bound_sqrt(mv).tight);
        const BoundResult q = bound_quarter(mv);
        CHECK_FALSE(q.tight);
        CHECK(q.slack > 0.0);
    }

    TEST_CASE("errors mirror bound_sqrt") {
        CHECK(error_code([] { bound_quarter(MomentVector::raw(0.5, 1, 0, 1)); }) == Errc::precondition);
        CHECK(error_code([] { bound_quarter(MomentVector::raw(0, 1, 0, 0.5)); }) == Errc::infeasible);
    }

    TEST_CASE("dominates bound_sqrt, with equality exactly at m2 = sqrt(m4/3)") {
        for (double m4 : {0.25, 1.0, 7.0, 300.0}) {
            const double top = std::sqrt(m4);
            const int n = 20000;
            double best = -1, best_m2 = -1;
            for (int i = 0; i <= n; ++i) {
                const double m2 = top * i / n;
                const MomentVector mv = MomentVector::raw(0, m2, 0, m4);
                const double s = bound_sqrt(mv).bound;
                const double q = bound_quarter(mv).bound;
                CHECK(s <= q * (1 + 1e-14));
                if (s > best) {
                    best = s;
                    best_m2 = m2;
                }
            }
            CHECK(best_m2 == doctest::Approx(std::sqrt(m4 / 3)).epsilon(2.0 / n));
            CHECK(best == doctest::Approx(sharp_constant() * std::pow(m4, 0.75)).epsilon(1e-7));
        }
    }

    TEST_CASE("equality on extremal laws for random sigma") {
        std::mt19937_64 rng(22);
        std::uniform_real_distribution<double> lg(-1, 1);
        for (int t = 0; t < 100; ++t) {
            const double sigma = std::pow(10.0, lg(rng));
            const MomentVector mv = moments_from_discrete(extremal_from_sigma(sigma));
            const BoundResult r = bound_quarter(mv);
            CHECK(std::fabs(r.slack) <= 1e-10 * tolerance_scale(mv));
            CHECK(r.tight);
        }
    }
}

TEST_SUITE("soundness") {
    TEST_CASE("random laws with m1 <= 0 respect both bounds and the interval") {
        std::mt19937_64 rng(23);
        for (int t = 0; t < 20000; ++t) {
            const auto d = testutil::with_nonpositive_mean(testutil::random_distribution(rng, 8));
            const MomentVector mv = moments_from_discrete(d);
            const double slack = 1e-9 * tolerance_scale(mv);
            const BoundResult s = bound_sqrt(mv);
            CHECK(mv.m3() <= s.bound + slack);
            CHECK(mv.m3() <= bound_quarter(mv).bound + slack);
            const MomentInterval iv = m3_interval(mv.m1(), mv.m2(), mv.m4());
            CHECK(iv.contains(mv.m3(), slack));
            CHECK(iv.hi <= s.bound + slack);
        }
    }

    TEST_CASE("interval holds for any sign of the mean") {
        std::mt19937_64 rng(24);
        for (int t = 0; t < 5000; ++t) {
            const auto d = testutil::random_distribution(rng, 8).shifted(3.0);
            const MomentVector mv = moments_from_discrete(d);
            CHECK(m3_interval(mv.m1(), mv.m2(), mv.m4()).contains(mv.m3(), 1e-9 * tolerance_scale(mv)));
        }
    }
}

TEST_SUITE("m3_interval") {
    TEST_CASE("examples") {
        const MomentInterval a = m3_interval(0, 1, 1);
        CHECK(a.lo == 0.0);
        CHECK(a.hi == 0.0);
        const MomentInterval b = m3_interval(0, 1, 2);
        CHECK(b.lo == -1.0);
        CHECK(b.hi == 1.0);
        const MomentInterval c = m3_interval(0, 2, 6);
        CHECK(c.lo == doctest::Approx(-2.0).epsilon(1e-15));
        CHECK(c.hi == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(c.hi == doctest::Approx(bound_sqrt(MomentVector::raw(0, 2, 0, 6)).bound).epsilon(1e-15));
    }

    TEST_CASE("endpoints are the roots of det H as a quadratic in m3") {
        std::mt19937_64 rng(25);
        for (int t = 0; t < 1000; ++t) {
            const MomentVector mv = moments_from_discrete(testutil::random_distribution(rng, 8));
            const MomentInterval iv = m3_interval(mv.m1(), mv.m2(), mv.m4());
            CHECK(iv.center() == doctest::Approx(mv.m1() * mv.m2()).scale(1.0));
            for (double end : {iv.lo, iv.hi}) {
                const MomentVector edge = MomentVector::raw(mv.m1(), mv.m2(), end, mv.m4());
                CHECK(std::fabs(hankel_det_closed_form(edge)) <= 1e-9 * tolerance_scale(mv));
            }
        }
    }

    TEST_CASE("infeasible triples") {
        CHECK(error_text([] { m3_interval(1, 0.5, 1); }) == "infeasible (m1, m2, m4) triple");
        CHECK(error_code([] { m3_interval(0, 2, 1); }) == Errc::infeasible);
    }

    TEST_CASE("tiny negative D clamps to a degenerate interval") {
        const MomentInterval iv = m3_interval(0, 1, 1 - 1e-12);
        CHECK(iv.lo == 0.0);
        CHECK(iv.hi == 0.0);
    }
}

TEST_SUITE("two_point_zero_mean") {
    TEST_CASE("examples") {
        check_atoms(two_point_zero_mean(1, 1), {{-1, 0.5}, {1, 0.5}});
        const auto d12 = two_point_zero_mean(1, 2);
        check_atoms(d12, {{-1, 2.0 / 3}, {2, 1.0 / 3}});
        const MomentVector mv = moments_from_discrete(d12);
        CHECK(mv.m1() == 0.0);
        CHECK(mv.m2() == doctest::Approx(2.0));
        CHECK(mv.m3() == doctest::Approx(2.0));
        CHECK(mv.m4() == doctest::Approx(6.0));
        const MomentVector mv21 = moments_from_discrete(two_point_zero_mean(2, 1));
        CHECK(mv21.m1() == 0.0);
        CHECK(mv21.m3() == doctest::Approx(-2.0));
        CHECK(moments_from_discrete(two_point_zero_mean(1, 1)).m1() == 0.0);
    }

    TEST_CASE("closed-form moments and reflection") {
        for (double u : log_grid(0.1, 10, 15)) {
            for (double v : log_grid(0.1, 10, 15)) {
                const MomentVector a = moments_from_discrete(two_point_zero_mean(u, v));
                const MomentVector b = moments_from_discrete(two_point_zero_mean(v, u));
                const double scale = tolerance_scale(a);
                CHECK(std::fabs(a.m1()) <= 1e-15 * std::max(u, v));
                CHECK(close_rel(a.m2(), u * v, 1e-14));
                CHECK(close_rel(a.m3(), u * v * (v - u), 1e-13, u * v * std::max(u, v)));
                CHECK(close_rel(a.m4(), u * v * (u * u - u * v + v * v), 1e-14));
                CHECK(std::fabs(a.m3() + b.m3()) <= 1e-14 * scale);
                CHECK(close_rel(a.m2(), b.m2(), 1e-14));
                CHECK(close_rel(a.m4(), b.m4(), 1e-14));
            }
        }
    }

    TEST_CASE("rejects nonpositive parameters") {
        CHECK(error_text([] { two_point_zero_mean(0, 1); }) == "u, v must be positive");
        CHECK_THROWS_AS(two_point_zero_mean(1, -2), Error);
    }
}

TEST_SUITE("extremal_from_sigma") {
    TEST_CASE("sigma = 1") {
        const ExtremalSpec s = ExtremalSpec::from_sigma(1.0);
        CHECK(s.u == doctest::Approx(0.5176381).epsilon(1e-7));
        CHECK(s.v == doctest::Approx(1.9318517).epsilon(1e-7));
        CHECK(s.u * s.v == doctest::Approx(1.0).epsilon(1e-15));
        const auto d = extremal_from_sigma(1.0);
        CHECK(d.atoms()[1].p == doctest::Approx((3 - std::sqrt(3.0)) / 6).epsilon(1e-15));
        CHECK(d.atoms()[1].p == doctest::Approx(0.2113249).epsilon(1e-7));
        const MomentVector mv = moments_from_discrete(d);
        CHECK(mv.m2() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(mv.m3() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        CHECK(mv.m4() == doctest::Approx(3.0).epsilon(1e-15));
    }

    TEST_CASE("sigma = 3^{-1/4} normalises m4 to one") {
        const MomentVector mv = moments_from_discrete(extremal_from_sigma(std::pow(3.0, -0.25)));
        CHECK(mv.m4() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(mv.m3() == doctest::Approx(sharp_constant()).epsilon(1e-14));
    }

    TEST_CASE("degree-one homogeneity in sigma") {
        const MomentVector one = moments_from_discrete(extremal_from_sigma(1.0));
        const MomentVector two = moments_from_discrete(extremal_from_sigma(2.0));
        const MomentVector scaled = scale_moments(one, 2.0);
        for (std::size_t j = 1; j < 5; ++j) CHECK(two[j] == doctest::Approx(scaled[j]).epsilon(1e-14).scale(1.0));
    }

    TEST_CASE("closed-form invariants for random sigma") {
        std::mt19937_64 rng(26);
        std::uniform_real_distribution<double> lg(-1, 1);
        for (int t = 0; t < 200; ++t) {
            const double sigma = std::pow(10.0, lg(rng));
            const ExtremalSpec s = ExtremalSpec::from_sigma(sigma);
            CHECK(close_rel(s.u, (std::sqrt(3.0) - 1) / std::sqrt(2.0) * sigma, 1e-14));
            CHECK(close_rel(s.v, (std::sqrt(3.0) + 1) / std::sqrt(2.0) * sigma, 1e-14));
            CHECK(close_rel(s.u * s.v, sigma * sigma, 1e-14));
            const MomentVector mv = moments_from_discrete(extremal_from_sigma(sigma));
            CHECK(close_rel(mv.m3(), sharp_constant() * std::pow(mv.m4(), 0.75), 1e-12));
            CHECK(close_rel(mv.m2(), std::sqrt(mv.m4() / 3), 1e-12));
            CHECK(close_rel(mv.m3(), std::sqrt(2.0) * sigma * sigma * sigma, 1e-12));
        }
    }

    TEST_CASE("rejects nonpositive sigma") {
        CHECK(error_code([] { extremal_from_sigma(0.0); }) == Errc::invalid_argument);
        CHECK_THROWS_AS(extremal_from_sigma(-1.0), Error);
    }
}

TEST_SUITE("certificate_from_hankel") {
    TEST_CASE("Rademacher") {
        const Certificate c = certificate_from_hankel(MomentVector::raw(0, 1, 0, 1));
        REQUIRE(c.roots.size() == 2);
        CHECK(c.roots[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(c.roots[1] == doctest::Approx(1.0).epsilon(1e-12));
        check_atoms(c.recovered, {{-1, 0.5}, {1, 0.5}});
        // null polynomial ~ x^2 - 1
        CHECK(c.coeffs[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(c.coeffs[1] == doctest::Approx(0.0).scale(1.0));
        CHECK(c.coeffs[2] == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-12));
    }

    TEST_CASE("X_{1,2}: null vector (2, 1, -1)/sqrt 6") {
        const MomentVector mv = MomentVector::raw(0, 2, 2, 6);
        const Certificate c = certificate_from_hankel(mv);
        const double n = std::sqrt(6.0);
        CHECK(c.coeffs[0] == doctest::Approx(2 / n).epsilon(1e-12));
        CHECK(c.coeffs[1] == doctest::Approx(1 / n).epsilon(1e-12));
        CHECK(c.coeffs[2] == doctest::Approx(-1 / n).epsilon(1e-12));
        CHECK(std::fabs(hankel(mv).quadratic_form(c.coeffs)) <= 1e-12);
        check_atoms(c.recovered, {{-1, 2.0 / 3}, {2, 1.0 / 3}});
    }

    TEST_CASE("point mass at zero") {
        const Certificate c = certificate_from_hankel(MomentVector::raw(0, 0, 0, 0));
        REQUIRE(c.roots.size() == 1);
        CHECK(c.roots[0] == 0.0);
        check_atoms(c.recovered, {{0.0, 1.0}});
        CHECK(c.coeffs == linalg3::Vector3{0, 0, 1});
    }

    TEST_CASE("point mass away from zero uses the double-root polynomial") {
        const MomentVector mv = moments_from_discrete(DiscreteDistribution::point_mass(-1.5));
        const Certificate c = certificate_from_hankel(mv);
        REQUIRE(c.roots.size() == 1);
        CHECK(c.roots[0] == doctest::Approx(-1.5));
        CHECK(std::fabs(hankel(mv).quadratic_form(c.coeffs)) <= 1e-12);
    }

    TEST_CASE("non-zero-mean two-point laws") {
        const MomentVector mv = moments_from_discrete(DiscreteDistribution({{0.5, 0.3}, {3.0, 0.7}}));
        const Certificate c = certificate_from_hankel(mv);
        check_atoms(c.recovered, {{0.5, 0.3}, {3.0, 0.7}}, 1e-10);
    }

    TEST_CASE("errors") {
        CHECK(error_text([] { certificate_from_hankel(MomentVector::raw(0, 1, 0, 2)); }) ==
              "interior point: no finite-support certificate of order <= 2");
        CHECK(error_code([] { certificate_from_hankel(MomentVector::raw(0, 1, 0, 2)); }) == Errc::precondition);
        // PSD and singular, but m2 = 0 with m4 = 1 has no representing law
        CHECK(error_text([] { certificate_from_hankel(MomentVector::raw(0, 0, 0, 1)); }) == "inconsistent null vector");
        CHECK(error_code([] { certificate_from_hankel(MomentVector::raw(0, 1, 0, 0.5)); }) == Errc::infeasible);
    }

    TEST_CASE("round trip on random two-point laws, including roots at x = 1") {
        std::mt19937_64 rng(27);
        std::uniform_real_distribution<double> pos(-4, 4), w(0.05, 0.95);
        for (int t = 0; t < 3000; ++t) {
            double a = pos(rng), b = pos(rng);
            if (t % 10 == 0) a = 1.0;  // start vector (1,1,1) is orthogonal to the null vector here
            if (std::fabs(a - b) < 1e-3) continue;
            const double p = w(rng);
            const MomentVector mv = moments_from_discrete(DiscreteDistribution({{a, p}, {b, 1 - p}}));
            INFO("a = " << a << ", b = " << b << ", p = " << p);
            const Certificate c = certificate_from_hankel(mv);
            const MomentVector back = moments_from_discrete(c.recovered);
            for (std::size_t j = 1; j < 5; ++j) CHECK(std::fabs(back[j] - mv[j]) <= 1e-8 * tolerance_scale(mv));
            CHECK(std::fabs(hankel(mv).quadratic_form(c.coeffs)) <= 1e-8 * tolerance_scale(mv));
            CHECK(linalg3::norm(c.coeffs) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_SUITE("scale covariance") {
    TEST_CASE("bounds scale as lambda^3, the interval centre and radius too") {
        std::mt19937_64 rng(28);
        for (double lambda : {0.5, 2.0, 7.0}) {
            for (int t = 0; t < 300; ++t) {
                const auto d = testutil::with_nonpositive_mean(testutil::random_distribution(rng, 8));
                const MomentVector mv = moments_from_discrete(d);
                const MomentVector sv = scale_moments(mv, lambda);
                const double l3 = lambda * lambda * lambda;
                CHECK(close_rel(bound_quarter(sv).bound, l3 * bound_quarter(mv).bound, 1e-12));
                CHECK(close_rel(bound_sqrt(sv).bound, l3 * bound_sqrt(mv).bound, 1e-12));
                const MomentInterval a = m3_interval(mv.m1(), mv.m2(), mv.m4());
                const MomentInterval b = m3_interval(sv.m1(), sv.m2(), sv.m4());
                const double width = std::max(std::fabs(a.lo), std::fabs(a.hi));
                CHECK(close_rel(b.lo, l3 * a.lo, 1e-12, l3 * width));
                CHECK(close_rel(b.hi, l3 * a.hi, 1e-12, l3 * width));
            }
        }
    }
}
