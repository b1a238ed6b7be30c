#include "mombound/moment_core.hpp"

#include "mombound/error.hpp"
#include "mombound/summation.hpp"

#include <algorithm>
#include <cmath>

namespace mombound {

namespace {

constexpr double kWeightSumTol = 1e-12;

bool all_finite(std::span<const double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

MomentVector::MomentVector(double m0, double m1, double m2, double m3, double m4) : m_{m0, m1, m2, m3, m4} {
    if (!all_finite(m_)) throw Error(Errc::invalid_argument, "non-finite moment");
    if (std::fabs(m0 - 1.0) > kWeightSumTol) throw Error(Errc::invalid_argument, "m0 must equal 1");
    m_[0] = 1.0;
    if (m2 < 0.0 || m4 < 0.0) throw Error(Errc::infeasible, "not a moment sequence: negative even moment");
}

double tolerance_scale(const MomentVector& mv) noexcept { return std::max(1.0, std::pow(mv.m4(), 1.5)); }

double length_scale(const MomentVector& mv) noexcept { return std::max(1.0, std::pow(mv.m4(), 0.25)); }

// --- DiscreteDistribution -------------------------------------------------

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) {
    if (atoms.empty()) throw Error(Errc::invalid_argument, "empty distribution");
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.x) || !std::isfinite(a.p)) throw Error(Errc::invalid_argument, "non-finite atom");
        if (a.p < 0.0 || a.p > 1.0 + kWeightSumTol) throw Error(Errc::invalid_argument, "weight outside [0, 1]");
    }
    std::erase_if(atoms, [](const Atom& a) { return a.p == 0.0; });
    if (atoms.empty()) throw Error(Errc::invalid_argument, "weights do not sum to 1");

    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    atoms_.reserve(atoms.size());
    for (const Atom& a : atoms) {
        const double x = a.x == 0.0 ? 0.0 : a.x;  // fold -0 into +0
        if (!atoms_.empty() && atoms_.back().x == x) {
            atoms_.back().p += a.p;
        } else {
            atoms_.push_back({x, a.p});
        }
    }

    CompensatedSum total;
    for (const Atom& a : atoms_) total += a.p;
    const double sum = total.value();
    if (std::fabs(sum - 1.0) > kWeightSumTol) throw Error(Errc::invalid_argument, "weights do not sum to 1");
    if (sum != 1.0) {
        for (Atom& a : atoms_) a.p /= sum;
    }
}

DiscreteDistribution DiscreteDistribution::point_mass(double x) { return DiscreteDistribution({{x, 1.0}}); }

DiscreteDistribution DiscreteDistribution::empirical(std::span<const double> samples) {
    if (samples.empty()) throw Error(Errc::invalid_argument, "empty sample set");
    if (!all_finite(samples)) throw Error(Errc::invalid_argument, "non-finite sample");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        atoms.push_back({sorted[i], static_cast<double>(j - i) / n});
        i = j;
    }
    return DiscreteDistribution(std::move(atoms));
}

DiscreteDistribution DiscreteDistribution::scaled(double lambda) const {
    if (!std::isfinite(lambda)) throw Error(Errc::invalid_argument, "non-finite scale factor");
    std::vector<Atom> out(atoms_.begin(), atoms_.end());
    for (Atom& a : out) a.x *= lambda;
    return DiscreteDistribution(std::move(out));
}

DiscreteDistribution DiscreteDistribution::shifted(double delta) const {
    if (!std::isfinite(delta)) throw Error(Errc::invalid_argument, "non-finite shift");
    std::vector<Atom> out(atoms_.begin(), atoms_.end());
    for (Atom& a : out) a.x += delta;
    return DiscreteDistribution(std::move(out));
}

// --- moments --------------------------------------------------------------

MomentVector moments_from_discrete(const DiscreteDistribution& dist) {
    std::array<CompensatedSum, 5> acc;
    for (const Atom& a : dist.atoms()) {
        double power = 1.0;  // 0^0 := 1
        for (auto& s : acc) {
            s += a.p * power;
            power *= a.x;
        }
    }
    return MomentVector(1.0, acc[1].value(), acc[2].value(), acc[3].value(), acc[4].value());
}

MomentVector moments_from_samples(std::span<const double> samples) {
    return moments_from_discrete(DiscreteDistribution::empirical(samples));
}

double abs_third_moment(const DiscreteDistribution& dist) {
    CompensatedSum acc;
    for (const Atom& a : dist.atoms()) {
        const double ax = std::fabs(a.x);
        acc += a.p * ax * ax * ax;
    }
    return acc.value();
}

MomentVector scale_moments(const MomentVector& mv, double lambda) {
    if (!std::isfinite(lambda)) throw Error(Errc::invalid_argument, "non-finite scale factor");
    const double l2 = lambda * lambda;
    return MomentVector(1.0, lambda * mv.m1(), l2 * mv.m2(), l2 * lambda * mv.m3(), l2 * l2 * mv.m4());
}

// --- Hankel ---------------------------------------------------------------

HankelMatrix::HankelMatrix(const MomentVector& mv) {
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) h_[i][j] = mv[i + j];
    }
}

double HankelMatrix::quadratic_form(const linalg3::Vector3& a) const noexcept {
    return linalg3::dot(a, linalg3::multiply(h_, a));
}

double hankel_det_closed_form(const MomentVector& mv) noexcept {
    const double m1 = mv.m1(), m2 = mv.m2(), m3 = mv.m3(), m4 = mv.m4();
    return m4 * m2 - m2 * m2 * m2 - m1 * m1 * m4 + 2.0 * m1 * m2 * m3 - m3 * m3;
}

FeasibilityReport feasibility(const MomentVector& mv, double tol) {
    if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
    const HankelMatrix h(mv);
    FeasibilityReport r;
    r.scale = tolerance_scale(mv);
    r.det = linalg3::determinant(h.entries());
    r.minors = {mv.m0(), mv.m2() - mv.m1() * mv.m1(), r.det};
    r.min_eigenvalue = linalg3::symmetric_eigenvalues(h.entries())[0];
    const double floor = -tol * r.scale;
    r.psd = std::all_of(r.minors.begin(), r.minors.end(), [floor](double d) { return d >= floor; }) &&
            r.min_eigenvalue >= floor;
    return r;
}

}  // namespace mombound
