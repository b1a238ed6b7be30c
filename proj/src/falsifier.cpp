#include "mombound/bound_engine.hpp"
#include "mombound/error.hpp"
#include "mombound/extremal_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mombound {

namespace {

// SplitMix64; portable and fully specified, unlike the std distributions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // [0, 1)
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 mix(seed);
    return SplitMix64(mix.next() ^ (trial * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
}

}  // namespace

DiscreteDistribution falsifier_draw(std::uint64_t seed, std::uint64_t trial, int atom_budget, FalsifierDraw draw) {
    SplitMix64 rng = trial_stream(seed, trial);
    switch (draw) {
        case FalsifierDraw::point_mass_at_zero:
            return DiscreteDistribution::point_mass(0.0);
        case FalsifierDraw::two_point_zero_mean: {
            const double u = std::pow(10.0, rng.uniform(-1.0, 1.0));
            const double v = std::pow(10.0, rng.uniform(-1.0, 1.0));
            return two_point_zero_mean(u, v);
        }
        case FalsifierDraw::general:
            break;
    }

    const auto count = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(atom_budget));
    std::vector<Atom> atoms(static_cast<std::size_t>(count));
    double total = 0.0;
    for (Atom& a : atoms) {
        a.x = rng.uniform(-5.0, 5.0);
        a.p = -std::log1p(-rng.uniform());  // Exp(1); normalised below -> flat Dirichlet
        total += a.p;
    }
    if (!(total > 0.0)) return DiscreteDistribution::point_mass(0.0);
    for (Atom& a : atoms) a.p /= total;
    const DiscreteDistribution raw(std::move(atoms));

    // push the mean to <= 0 by translation; the jitter keeps it strictly below
    const double m1 = moments_from_discrete(raw).m1();
    const double jitter = 1e-3 * rng.uniform();
    return raw.shifted(-std::max(0.0, m1) - jitter);
}

FalsifierReport random_falsifier(std::uint64_t trials, std::uint64_t seed, int atom_budget, FalsifierDraw draw) {
    if (trials == 0) throw Error(Errc::invalid_argument, "trials must be positive");
    if (atom_budget < 2) throw Error(Errc::invalid_argument, "atom_budget must be at least 2");

    FalsifierReport rep;
    rep.trials = trials;
    rep.worst_slack_sqrt = std::numeric_limits<double>::infinity();
    rep.worst_slack_quarter = std::numeric_limits<double>::infinity();

    for (std::uint64_t t = 0; t < trials; ++t) {
        const DiscreteDistribution d = falsifier_draw(seed, t, atom_budget, draw);
        const MomentVector mv = moments_from_discrete(d);
        const double scale = tolerance_scale(mv);
        const double allowed = kFalsifierTol * scale;

        if (!feasibility(mv, kFalsifierTol).psd) ++rep.violations_psd;

        double sqrt_bound = std::numeric_limits<double>::quiet_NaN();
        try {
            const BoundResult b = bound_sqrt(mv);
            sqrt_bound = b.bound;
            rep.worst_slack_sqrt = std::min(rep.worst_slack_sqrt, b.slack / scale);
            rep.max_abs_slack_sqrt = std::max(rep.max_abs_slack_sqrt, std::fabs(b.slack) / scale);
            if (mv.m3() > b.bound + allowed) ++rep.violations_sqrt;
        } catch (const Error&) {
            ++rep.violations_sqrt;
        }

        try {
            const BoundResult b = bound_quarter(mv);
            rep.worst_slack_quarter = std::min(rep.worst_slack_quarter, b.slack / scale);
            if (mv.m3() > b.bound + allowed) ++rep.violations_quarter;
        } catch (const Error&) {
            ++rep.violations_quarter;
        }

        try {
            const MomentInterval iv = m3_interval(mv.m1(), mv.m2(), mv.m4());
            const bool chain_ok = !(iv.hi > sqrt_bound + allowed);  // NaN bound counts as a failure above
            if (!iv.contains(mv.m3(), allowed) || !chain_ok) ++rep.violations_interval;
        } catch (const Error&) {
            ++rep.violations_interval;
        }
    }
    return rep;
}

}  // namespace mombound
