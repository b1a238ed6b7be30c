#pragma once

#include "mombound/linalg3.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace mombound {

/// Raw moments (m0, m1, m2, m3, m4) with m_j = E X^j and m0 = 1 exactly.
///
/// Construction rejects non-finite entries, negative even moments, and an
/// m0 further than 1e-12 from one (within that band m0 is snapped to 1).
/// Nothing here requires the vector to come from a distribution; use
/// feasibility() for that.
class MomentVector {
public:
    MomentVector(double m0, double m1, double m2, double m3, double m4);

    /// Shorthand for m0 = 1.
    static MomentVector raw(double m1, double m2, double m3, double m4) { return {1.0, m1, m2, m3, m4}; }

    double operator[](std::size_t j) const { return m_.at(j); }
    double m0() const noexcept { return m_[0]; }
    double m1() const noexcept { return m_[1]; }
    double m2() const noexcept { return m_[2]; }
    double m3() const noexcept { return m_[3]; }
    double m4() const noexcept { return m_[4]; }
    const std::array<double, 5>& values() const noexcept { return m_; }

    bool operator==(const MomentVector&) const = default;

private:
    std::array<double, 5> m_;
};

/// Absolute tolerance unit max(1, m4^{3/2}); det H is homogeneous of degree 6
/// in X and this matches that scaling.
double tolerance_scale(const MomentVector& mv) noexcept;

/// Length unit max(1, m4^{1/4}), consistent with tolerance_scale().
double length_scale(const MomentVector& mv) noexcept;

struct Atom {
    double x;
    double p;

    bool operator==(const Atom&) const = default;
};

/// Finitely supported probability distribution. Atoms are kept sorted by x,
/// pairwise distinct, with strictly positive weights that sum to one.
class DiscreteDistribution {
public:
    /// Drops zero weights, merges duplicate support points and renormalises.
    /// Throws Error(invalid_argument) on an empty atom list, non-finite values,
    /// weights outside [0, 1], or weights summing to more than 1e-12 away
    /// from one.
    explicit DiscreteDistribution(std::vector<Atom> atoms);

    static DiscreteDistribution point_mass(double x);

    /// Empirical distribution of a sample: weight count/n on each distinct
    /// value. Throws on an empty or non-finite sample.
    static DiscreteDistribution empirical(std::span<const double> samples);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    /// Same weights, support mapped x -> lambda * x.
    DiscreteDistribution scaled(double lambda) const;
    /// Same weights, support mapped x -> x + delta.
    DiscreteDistribution shifted(double delta) const;

    bool operator==(const DiscreteDistribution&) const = default;

private:
    std::vector<Atom> atoms_;
};

/// m_j = sum p_i x_i^j over atoms in ascending order, compensated.
MomentVector moments_from_discrete(const DiscreteDistribution& dist);

MomentVector moments_from_samples(std::span<const double> samples);

/// E|X|^3.
double abs_third_moment(const DiscreteDistribution& dist);

/// Moment vector of lambda * X.
MomentVector scale_moments(const MomentVector& mv, double lambda);

/// 3x3 Gram matrix of (1, X, X^2): H[i][j] = m_{i+j}. Q(a) = a^T H a.
class HankelMatrix {
public:
    explicit HankelMatrix(const MomentVector& mv);

    double operator()(std::size_t i, std::size_t j) const { return h_.at(i).at(j); }
    const linalg3::Matrix3& entries() const noexcept { return h_; }

    /// Q(a0, a1, a2) = E (a0 + a1 X + a2 X^2)^2.
    double quadratic_form(const linalg3::Vector3& a) const noexcept;

private:
    linalg3::Matrix3 h_;
};

inline HankelMatrix hankel(const MomentVector& mv) { return HankelMatrix(mv); }

/// det H expanded in the moments (valid for m0 = 1):
/// m4 m2 - m2^3 - m1^2 m4 + 2 m1 m2 m3 - m3^2.
double hankel_det_closed_form(const MomentVector& mv) noexcept;

/// PSD status of the Hankel matrix. This is a necessary condition for the
/// existence of a representing distribution, not a sufficient one.
struct FeasibilityReport {
    bool psd = false;
    double det = 0.0;
    std::array<double, 3> minors{};  // m0, m2 - m1^2, det
    double min_eigenvalue = 0.0;
    double scale = 1.0;
};

inline constexpr double kDefaultFeasibilityTol = 1e-10;

FeasibilityReport feasibility(const MomentVector& mv, double tol = kDefaultFeasibilityTol);

}  // namespace mombound
