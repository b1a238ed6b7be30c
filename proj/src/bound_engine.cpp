#include "mombound/bound_engine.hpp"

#include "mombound/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mombound {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Moment vectors built from rounded atoms can miss m4 = m2^2 or m2 = m1^2 by a
// few ulps even when the law is exactly two-point symmetric or degenerate.
// Differences at that level carry no information, and under a square root
// they would surface as ~1e-8 phantom slack.
double settled_difference(double a, double b) noexcept {
    const double d = a - b;
    return std::fabs(d) <= 8.0 * kEps * std::max(std::fabs(a), std::fabs(b)) ? 0.0 : d;
}

void require_sharp_preconditions(const MomentVector& mv, double tol) {
    if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
    if (mv.m1() > tol * length_scale(mv)) {
        throw Error(Errc::precondition, "precondition m1 <= 0 violated (use m3_interval)");
    }
    if (!feasibility(mv, tol).psd) throw Error(Errc::infeasible, "not a moment vector");
}

// Zero-mean two-point law with the given m2 = uv and m3 = uv(v - u).
DiscreteDistribution two_point_from_m2_m3(double m2, double m3) {
    if (!(m2 > 0.0)) return DiscreteDistribution::point_mass(0.0);
    const double b = m3 / m2;  // v - u
    const double root = std::sqrt(b * b + 4.0 * m2);
    // pick the cancellation-free root first
    if (b >= 0.0) {
        const double v = 0.5 * (b + root);
        return two_point_zero_mean(m2 / v, v);
    }
    const double u = 0.5 * (root - b);
    return two_point_zero_mean(u, m2 / u);
}

linalg3::Vector3 canonical_sign(linalg3::Vector3 a) {
    const double n = linalg3::norm(a);
    for (double& c : a) c /= n;
    for (double c : a) {
        if (std::fabs(c) > 1e-12) {
            if (c < 0.0)
                for (double& d : a) d = -d;
            break;
        }
    }
    for (double& c : a) c += 0.0;  // -0 -> +0
    return a;
}

struct CentralMoments {
    double m2, m3, m4;
};

CentralMoments central_moments(const MomentVector& mv) {
    using L = long double;
    const L c = mv.m1(), m2 = mv.m2(), m3 = mv.m3(), m4 = mv.m4();
    const L mu2 = m2 - c * c;
    const L mu3 = m3 - 3 * c * m2 + 2 * c * c * c;
    const L mu4 = m4 - 4 * c * m3 + 6 * c * c * m2 - 3 * c * c * c * c;
    return {std::max(0.0, static_cast<double>(mu2)), static_cast<double>(mu3), std::max(0.0, static_cast<double>(mu4))};
}

}  // namespace

double sharp_constant() noexcept { return std::sqrt(std::sqrt(4.0 / 27.0)); }

double bound_trivial(const MomentVector& mv) {
    // m4 < 0 cannot be constructed; m4 = 0 forces X = 0 and a zero bound
    return std::pow(mv.m4(), 0.75);
}

BoundResult bound_sqrt(const MomentVector& mv, double tol) {
    require_sharp_preconditions(mv, tol);
    const double scale = tolerance_scale(mv);
    const double radicand = mv.m2() * settled_difference(mv.m4(), mv.m2() * mv.m2());
    if (radicand < -tol * scale) throw Error(Errc::infeasible, "not a moment vector");

    BoundResult r;
    r.bound = std::sqrt(std::max(0.0, radicand));
    r.slack = r.bound - mv.m3();
    r.tight = std::fabs(r.slack) <= tol * scale;
    if (r.tight) r.witness = two_point_from_m2_m3(mv.m2(), mv.m3());
    return r;
}

BoundResult bound_quarter(const MomentVector& mv, double tol) {
    require_sharp_preconditions(mv, tol);
    const double scale = tolerance_scale(mv);

    BoundResult r;
    r.bound = sharp_constant() * std::pow(mv.m4(), 0.75);
    r.slack = r.bound - mv.m3();
    // Equality also pins m2 to the maximiser sqrt(m4/3); the slack is
    // quadratic in the distance from it, hence the sqrt(tol) band.
    const bool at_maximiser =
        std::fabs(mv.m2() - std::sqrt(mv.m4() / 3.0)) <= std::sqrt(tol) * std::max(1.0, std::sqrt(mv.m4()));
    r.tight = std::fabs(r.slack) <= tol * scale && at_maximiser;
    if (r.tight) {
        r.witness = mv.m2() > 0.0 ? extremal_from_sigma(std::sqrt(mv.m2())) : DiscreteDistribution::point_mass(0.0);
    }
    return r;
}

MomentInterval m3_interval(double m1, double m2, double m4, double tol) {
    if (!std::isfinite(m1) || !std::isfinite(m2) || !std::isfinite(m4)) {
        throw Error(Errc::invalid_argument, "non-finite moment");
    }
    if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
    const double var_x = settled_difference(m2, m1 * m1);
    const double var_x2 = settled_difference(m4, m2 * m2);
    if (m2 < 0.0 || m4 < 0.0 || var_x < -tol || var_x2 < -tol) {
        throw Error(Errc::infeasible, "infeasible (m1, m2, m4) triple");
    }
    const double scale = std::max(1.0, std::pow(m4, 1.5));
    double d = var_x * var_x2;
    if (d < 0.0) {
        if (d < -tol * scale) throw Error(Errc::infeasible, "infeasible (m1, m2, m4) triple");
        d = 0.0;
    }
    const double center = m1 * m2;
    const double half = std::sqrt(d);
    return {center - half, center + half};
}

ExtremalSpec ExtremalSpec::from_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(Errc::invalid_argument, "sigma must be positive");
    const double s3 = std::sqrt(3.0);
    const double r2 = std::sqrt(2.0);
    return {sigma, (s3 - 1.0) / r2 * sigma, (s3 + 1.0) / r2 * sigma};
}

DiscreteDistribution two_point_zero_mean(double u, double v) {
    if (!(u > 0.0) || !(v > 0.0) || !std::isfinite(u) || !std::isfinite(v)) {
        throw Error(Errc::invalid_argument, "u, v must be positive");
    }
    const double total = u + v;
    return DiscreteDistribution({{-u, v / total}, {v, u / total}});
}

DiscreteDistribution extremal_from_sigma(double sigma) {
    const ExtremalSpec spec = ExtremalSpec::from_sigma(sigma);
    return two_point_zero_mean(spec.u, spec.v);
}

Certificate certificate_from_hankel(const MomentVector& mv, double tol) {
    const FeasibilityReport f = feasibility(mv, tol);
    if (!f.psd) throw Error(Errc::infeasible, "not a moment vector");
    const double scale = f.scale;
    if (std::fabs(f.det) > tol * scale) {
        throw Error(Errc::precondition, "interior point: no finite-support certificate of order <= 2");
    }

    // Work with the law of X - m1: two atoms that sit close together far from
    // the origin make the raw Hankel matrix nearly rank one, the centred one
    // does not.
    const double c = mv.m1();
    const CentralMoments mu = central_moments(mv);
    const linalg3::Matrix3 hc{{{1.0, 0.0, mu.m2}, {0.0, mu.m2, mu.m3}, {mu.m2, mu.m3, mu.m4}}};
    const double cscale = std::max(1.0, std::pow(mu.m4, 1.5));
    const linalg3::Vector3 ev = linalg3::symmetric_eigenvalues(hc);
    Certificate cert{{}, {}, DiscreteDistribution::point_mass(c)};

    if (ev[1] <= tol * cscale) {
        // rank one: a point mass at m1. The null space is two-dimensional;
        // take the member with a2 != 0, i.e. (x - m1)^2.
        cert.coeffs = canonical_sign({c * c, -2.0 * c, 1.0});
        cert.roots = {c};
    } else {
        const double s3 = 1.0 / std::sqrt(3.0);
        const linalg3::Vector3 starts[] = {{s3, s3, s3}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
        // a start orthogonal to the null vector converges to the wrong
        // eigenvector; detect via the Rayleigh quotient and move on.
        const double accept = 0.5 * (ev[0] + ev[1]);
        linalg3::Vector3 a{};
        for (const auto& start : starts) {
            a = linalg3::inverse_iteration(hc, -tol * cscale, start);
            if (linalg3::dot(a, linalg3::multiply(hc, a)) <= accept) break;
        }
        a = canonical_sign(a);
        // a0 + a1 y + a2 y^2 with y = x - c, expanded in x
        cert.coeffs = canonical_sign({a[0] - a[1] * c + a[2] * c * c, a[1] - 2.0 * a[2] * c, a[2]});

        std::vector<double> ys;
        const double a0 = a[0], a1 = a[1], a2 = a[2];
        if (std::fabs(a2) > tol) {
            double disc = a1 * a1 - 4.0 * a0 * a2;
            if (disc < -1e-8) throw Error(Errc::infeasible, "inconsistent null vector");
            disc = std::max(0.0, disc);
            const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
            double y1 = q / a2;
            double y2 = q != 0.0 ? a0 / q : y1;
            if (y1 > y2) std::swap(y1, y2);
            if (y2 - y1 <= 1e-12 * std::max(1.0, std::fabs(y1) + std::fabs(y2))) {
                ys = {0.5 * (y1 + y2)};
            } else {
                ys = {y1, y2};
            }
        } else if (std::fabs(a1) > tol) {
            ys = {-a0 / a1};
        } else {
            throw Error(Errc::infeasible, "inconsistent null vector");
        }

        if (ys.size() == 1) {
            cert.roots = {ys[0] + c};
            cert.recovered = DiscreteDistribution::point_mass(ys[0] + c);
        } else {
            // the centred law has mean zero
            double p2 = -ys[0] / (ys[1] - ys[0]);
            double p1 = ys[1] / (ys[1] - ys[0]);
            if (p1 < -1e-8 || p2 < -1e-8) throw Error(Errc::infeasible, "inconsistent null vector");
            p1 = std::clamp(p1, 0.0, 1.0);
            p2 = std::clamp(p2, 0.0, 1.0);
            const double total = p1 + p2;
            std::vector<Atom> atoms;
            if (p1 > 0.0) atoms.push_back({ys[0] + c, p1 / total});
            if (p2 > 0.0) atoms.push_back({ys[1] + c, p2 / total});
            cert.recovered = DiscreteDistribution(std::move(atoms));
            for (const Atom& at : cert.recovered.atoms()) cert.roots.push_back(at.x);
        }
    }

    const MomentVector back = moments_from_discrete(cert.recovered);
    for (std::size_t j = 1; j < 5; ++j) {
        if (std::fabs(back[j] - mv[j]) > 1e-8 * scale) throw Error(Errc::infeasible, "inconsistent null vector");
    }
    return cert;
}

}  // namespace mombound
