#pragma once

// Brute-force counterparts of the closed-form bounds: linear programs over
// distributions supported on a finite grid, solved by enumerating every basic
// feasible solution, plus a seeded random search for counterexamples.
//
// With r linear constraints on the weights, an LP vertex has at most r atoms,
// so for the problems here (<= 3 constraints) it suffices to walk all grid
// supports of size <= 3 and solve a small linear system for each.

#include "mombound/moment_core.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mombound {

struct OracleConfig {
    double grid_lo = -3.0;
    double grid_hi = 3.0;
    double grid_step = 0.01;
    double m4_target = 1.0;
    double m1_max = 0.0;
    int max_support = 3;
    /// Admission band for the moment constraints that a support cannot be
    /// solved for exactly (oracle_extreme_m3_given), relative to max(1, m).
    double residual_tol = 1e-5;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    /// Throws Error(invalid_argument) for malformed settings and
    /// Error(infeasible) when the grid lacks a negative or a positive point.
    void validate() const;

    /// lo, lo + step, ... up to hi (inclusive within rounding).
    std::vector<double> grid() const;
};

struct ConstraintResiduals {
    double m0 = 0.0;  // sum p - 1
    double m1 = 0.0;  // m1 - m1_max (<= 0 when the mean constraint is slack)
    double m4 = 0.0;  // m4 - m4_target
};

struct OracleResult {
    double max_m3 = 0.0;
    DiscreteDistribution argmax;
    ConstraintResiduals constraint_residuals;
    std::uint64_t candidates_examined = 0;
};

/// A basic feasible candidate: up to three grid atoms with weights.
struct GridCandidate {
    std::array<double, 3> x{};
    std::array<double, 3> p{};
    int size = 0;

    std::span<const double> support() const noexcept { return {x.data(), static_cast<std::size_t>(size)}; }
    double moment(int j) const noexcept;
};

/// max E X^3 subject to E 1 = 1, E X <= m1_max, E X^4 = m4_target, support
/// on the grid. Deterministic: ties go to the lexicographically smallest
/// sorted support. Throws Error(infeasible) when nothing is feasible.
OracleResult oracle_max_m3(const OracleConfig& cfg);

/// Calls `visit` on every feasible vertex considered by oracle_max_m3, in a
/// fixed order and on the calling thread.
void for_each_max_m3_candidate(const OracleConfig& cfg, const std::function<void(const GridCandidate&)>& visit);

struct ExtremeM3 {
    double min_m3 = 0.0;
    double max_m3 = 0.0;
    DiscreteDistribution argmin;
    DiscreteDistribution argmax;
    std::uint64_t candidates_admitted = 0;
};

/// min and max of E X^3 over grid distributions with moments (1, m1, m2, *, m4).
/// Supports of size <= 3 solve the leading moment equations exactly; the
/// remaining ones must hold within cfg.residual_tol. Uses the grid fields of
/// cfg only. Throws Error(infeasible) for an infeasible triple or when the
/// grid cannot represent it.
ExtremeM3 oracle_extreme_m3_given(double m1, double m2, double m4, const OracleConfig& cfg);

// --- randomized falsification ----------------------------------------------

enum class FalsifierDraw {
    general,              // 1..atom_budget atoms uniform in [-5, 5], flat Dirichlet weights, shifted to m1 <= 0
    two_point_zero_mean,  // X_{u,v} with u, v log-uniform in [0.1, 10]
    point_mass_at_zero,
};

struct FalsifierReport {
    std::uint64_t trials = 0;
    std::uint64_t violations_sqrt = 0;      // m3 > sqrt(m4 m2 - m2^3)
    std::uint64_t violations_quarter = 0;   // m3 > (4/27)^{1/4} m4^{3/4}
    std::uint64_t violations_interval = 0;  // m3 outside m3_interval, or interval top above the sqrt bound
    std::uint64_t violations_psd = 0;       // Hankel matrix not PSD
    double worst_slack_sqrt = 0.0;          // min slack / scale
    double worst_slack_quarter = 0.0;
    double max_abs_slack_sqrt = 0.0;        // max |slack| / scale

    std::uint64_t total_violations() const noexcept {
        return violations_sqrt + violations_quarter + violations_interval + violations_psd;
    }
};

inline constexpr double kFalsifierTol = 1e-9;

/// Runs `trials` seeded random draws and counts bound violations beyond
/// kFalsifierTol * scale. Every trial uses its own generator derived from
/// (seed, trial index), so the result depends on nothing but the arguments.
FalsifierReport random_falsifier(std::uint64_t trials, std::uint64_t seed, int atom_budget,
                                 FalsifierDraw draw = FalsifierDraw::general);

/// The distribution drawn for a given trial; exposed for reproducing a report.
DiscreteDistribution falsifier_draw(std::uint64_t seed, std::uint64_t trial, int atom_budget, FalsifierDraw draw);

}  // namespace mombound
