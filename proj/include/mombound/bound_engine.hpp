#pragma once

// Upper bounds on the third moment from (m1, m2, m4), the extremal two-point
// laws that attain them, and null-vector certificates for singular Hankel
// matrices.
//
// For E X <= 0:
//   m3 <= sqrt(m4 m2 - m2^3)            equality iff X ~ X_{u,v}
//   m3 <= (4/27)^{1/4} m4^{3/4}          equality iff X ~ X_{u,v} with
//                                        u = (sqrt3 - 1)/sqrt2 s, v = (sqrt3 + 1)/sqrt2 s
// where X_{u,v} is the zero-mean law on {-u, v}.

#include "mombound/moment_core.hpp"

#include <optional>
#include <vector>

namespace mombound {

/// Relative slack (in units of tolerance_scale) below which a bound counts as
/// attained.
inline constexpr double kDefaultTightTol = 1e-8;

/// (4/27)^{1/4} = 0.6204032394...
double sharp_constant() noexcept;

struct BoundResult {
    double bound = 0.0;
    double slack = 0.0;  // bound - m3
    bool tight = false;
    std::optional<DiscreteDistribution> witness;  // present iff tight
};

/// Set of m3 values compatible with a PSD Hankel matrix for fixed (m1, m2, m4).
/// Symmetric about m1*m2.
struct MomentInterval {
    double lo = 0.0;
    double hi = 0.0;

    double center() const noexcept { return 0.5 * (lo + hi); }
    bool contains(double m3, double slack = 0.0) const noexcept { return m3 >= lo - slack && m3 <= hi + slack; }
};

/// Null vector (a0, a1, a2) of H and the support it encodes: the real roots of
/// a0 + a1 x + a2 x^2, ascending, with weights fixed by m0 and m1.
struct Certificate {
    linalg3::Vector3 coeffs{};  // unit length, first nonzero coordinate positive
    std::vector<double> roots;
    DiscreteDistribution recovered;
};

/// Parameters of the distribution attaining the (4/27)^{1/4} bound.
struct ExtremalSpec {
    double sigma;
    double u;
    double v;

    static ExtremalSpec from_sigma(double sigma);
};

/// m4^{3/4}; valid without any condition on m1.
double bound_trivial(const MomentVector& mv);

/// sqrt(m4 m2 - m2^3). Requires m1 <= 0 and a PSD Hankel matrix.
/// Throws Error(precondition) when m1 > 0 and Error(infeasible) when mv is
/// not a moment vector.
BoundResult bound_sqrt(const MomentVector& mv, double tol = kDefaultTightTol);

/// (4/27)^{1/4} m4^{3/4}, the maximum of bound_sqrt over m2. Same
/// preconditions and errors as bound_sqrt.
BoundResult bound_quarter(const MomentVector& mv, double tol = kDefaultTightTol);

/// [m1 m2 - sqrt(D), m1 m2 + sqrt(D)] with D = (m2 - m1^2)(m4 - m2^2), i.e.
/// the m3 range where det H >= 0. Holds for any sign of m1.
MomentInterval m3_interval(double m1, double m2, double m4, double tol = kDefaultTightTol);

/// X_{u,v}: atoms -u with weight v/(u+v) and v with weight u/(u+v).
DiscreteDistribution two_point_zero_mean(double u, double v);

DiscreteDistribution extremal_from_sigma(double sigma);

/// Recovers the (at most two point) support of a moment vector on the
/// boundary det H = 0. Throws Error(precondition) for interior points and
/// Error(infeasible) when the null vector is not consistent with a real
/// support.
Certificate certificate_from_hankel(const MomentVector& mv, double tol = kDefaultTightTol);

}  // namespace mombound
