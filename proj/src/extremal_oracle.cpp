#include "mombound/extremal_oracle.hpp"

#include "mombound/bound_engine.hpp"
#include "mombound/error.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace mombound {

namespace {

constexpr double kWeightClamp = 1e-12;
constexpr double kConstraintTol = 1e-10;
constexpr double kSolvedTol = 1e-9;
constexpr double kMaxCandidates = 6e8;

struct Grid {
    std::vector<double> x, x2, x3, x4;

    explicit Grid(std::vector<double> pts) : x(std::move(pts)) {
        for (double v : x) {
            x2.push_back(v * v);
            x3.push_back(v * v * v);
            x4.push_back(v * v * v * v);
        }
    }
    std::size_t size() const noexcept { return x.size(); }
};

// Clamp round-off negatives and renormalise. False if a weight is genuinely
// negative.
bool settle_weights(GridCandidate& c) {
    double total = 0.0;
    for (int k = 0; k < c.size; ++k) {
        if (!(c.p[k] >= -kWeightClamp)) return false;
        c.p[k] = std::max(0.0, c.p[k]);
        total += c.p[k];
    }
    if (!(total > 0.0)) return false;
    for (int k = 0; k < c.size; ++k) c.p[k] /= total;
    return true;
}

struct Incumbent {
    bool has = false;
    double value = 0.0;
    GridCandidate cand;

    // larger value wins when maximise, smaller otherwise; ties go to the
    // lexicographically smaller support
    void offer(const GridCandidate& c, double v, bool maximise) {
        if (has) {
            const bool better = maximise ? v > value : v < value;
            if (!better) {
                if (v != value) return;
                const auto a = c.support(), b = cand.support();
                if (!std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) return;
            }
        }
        has = true;
        value = v;
        cand = c;
    }

    void merge(const Incumbent& other, bool maximise) {
        if (other.has) offer(other.cand, other.value, maximise);
    }
};

unsigned worker_count(const OracleConfig& cfg, std::size_t n) {
    unsigned t = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, n)));
}

// Runs body(first, stride) on `workers` threads, where each worker owns the
// supports whose smallest grid index is congruent to its id.
template <class Body>
void partitioned(unsigned workers, Body&& body) {
    if (workers <= 1) {
        body(0u, 1u);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&body, w, workers] { body(w, workers); });
}

DiscreteDistribution to_distribution(const GridCandidate& c) {
    std::vector<Atom> atoms;
    for (int k = 0; k < c.size; ++k) atoms.push_back({c.x[k], c.p[k]});
    return DiscreteDistribution(std::move(atoms));
}

// --- max m3 subject to E1 = 1, EX <= m1_max, EX^4 = m4_target ---------------

struct MaxProblem {
    const Grid& g;
    double m1_max;
    double m4;
    double m4_tol;
    int max_support;

    bool admissible(const GridCandidate& c) const {
        const double mean = c.moment(1);
        return mean <= m1_max + kConstraintTol && std::fabs(c.moment(4) - m4) <= m4_tol;
    }

    template <class Visit>
    void enumerate(std::size_t first, std::size_t stride, Visit&& visit) const {
        const std::size_t n = g.size();
        const auto& x = g.x;
        const auto& x4 = g.x4;
        GridCandidate c;
        for (std::size_t i = first; i < n; i += stride) {
            c.size = 1;
            c.x[0] = x[i];
            c.p[0] = 1.0;
            if (admissible(c)) visit(c);

            for (std::size_t j = i + 1; j < n; ++j) {
                c.size = 2;
                c.x = {x[i], x[j], 0.0};
                const double d = x4[j] - x4[i];
                if (std::fabs(d) > 1e-14 * std::max(x4[i], x4[j])) {
                    // mean constraint slack: the two equalities fix the weights
                    c.p[1] = (m4 - x4[i]) / d;
                    c.p[0] = (x4[j] - m4) / d;
                } else {
                    // x_j = -x_i: the x^4 row is dependent, the mean row binds
                    c.p[1] = (m1_max - x[i]) / (x[j] - x[i]);
                    c.p[0] = (x[j] - m1_max) / (x[j] - x[i]);
                }
                if (settle_weights(c) && admissible(c)) visit(c);

                if (max_support < 3) continue;
                const double dx_j = x[j] - x[i];
                const double d4_j = x4[j] - x4[i];
                const double r1 = m1_max - x[i];
                const double r4 = m4 - x4[i];
                for (std::size_t k = j + 1; k < n; ++k) {
                    // all three rows active; eliminate p_i = 1 - p_j - p_k
                    const double dx_k = x[k] - x[i];
                    const double d4_k = x4[k] - x4[i];
                    const double det = dx_j * d4_k - dx_k * d4_j;
                    if (std::fabs(det) <= 1e-14 * (std::fabs(dx_j * d4_k) + std::fabs(dx_k * d4_j))) continue;
                    const double pj = (r1 * d4_k - dx_k * r4) / det;
                    const double pk = (dx_j * r4 - r1 * d4_j) / det;
                    if (pj < -kWeightClamp || pk < -kWeightClamp) continue;
                    c.size = 3;
                    c.x = {x[i], x[j], x[k]};
                    c.p = {1.0 - pj - pk, pj, pk};
                    if (settle_weights(c) && admissible(c)) visit(c);
                }
            }
        }
    }
};

std::uint64_t count_supports(std::uint64_t n, int max_support) {
    std::uint64_t total = n + n * (n - 1) / 2;
    if (max_support >= 3) total += n * (n - 1) * (n - 2) / 6;
    return total;
}

// --- extremes of m3 given (m1, m2, m4) --------------------------------------

struct GivenProblem {
    const Grid& g;
    double m1, m2, m4;
    double residual_tol;

    bool near(double got, double want, double rel) const {
        return std::fabs(got - want) <= rel * std::max(1.0, std::fabs(want));
    }

    // moments solved for exactly are held to kSolvedTol, the rest to residual_tol
    bool admissible(const GridCandidate& c) const {
        const double t1 = c.size >= 2 ? kSolvedTol : residual_tol;
        const double t2 = c.size >= 3 ? kSolvedTol : residual_tol;
        return near(c.moment(1), m1, t1) && near(c.moment(2), m2, t2) && near(c.moment(4), m4, residual_tol);
    }

    template <class Visit>
    void enumerate(std::size_t first, std::size_t stride, Visit&& visit) const {
        const std::size_t n = g.size();
        const auto& x = g.x;
        GridCandidate c;
        for (std::size_t i = first; i < n; i += stride) {
            c.size = 1;
            c.x[0] = x[i];
            c.p[0] = 1.0;
            if (admissible(c)) visit(c);

            for (std::size_t j = i + 1; j < n; ++j) {
                const double dij = x[i] - x[j];
                c.size = 2;
                c.x = {x[i], x[j], 0.0};
                c.p = {(x[j] - m1) / -dij, (m1 - x[i]) / -dij, 0.0};
                if (settle_weights(c) && admissible(c)) visit(c);

                for (std::size_t k = j + 1; k < n; ++k) {
                    // Lagrange weights of the Vandermonde system on (1, x, x^2)
                    const double dik = x[i] - x[k];
                    const double djk = x[j] - x[k];
                    const double pi = (m2 - (x[j] + x[k]) * m1 + x[j] * x[k]) / (dij * dik);
                    const double pj = (m2 - (x[i] + x[k]) * m1 + x[i] * x[k]) / (-dij * djk);
                    const double pk = (m2 - (x[i] + x[j]) * m1 + x[i] * x[j]) / (dik * djk);
                    if (pi < -kWeightClamp || pj < -kWeightClamp || pk < -kWeightClamp) continue;
                    c.size = 3;
                    c.x = {x[i], x[j], x[k]};
                    c.p = {pi, pj, pk};
                    if (settle_weights(c) && admissible(c)) visit(c);
                }
            }
        }
    }
};

}  // namespace

double GridCandidate::moment(int j) const noexcept {
    double s = 0.0;
    for (int k = 0; k < size; ++k) {
        double xp = 1.0;
        for (int e = 0; e < j; ++e) xp *= x[k];
        s += p[k] * xp;
    }
    return s;
}

void OracleConfig::validate() const {
    if (!std::isfinite(grid_lo) || !std::isfinite(grid_hi) || !std::isfinite(grid_step) ||
        !std::isfinite(m4_target) || !std::isfinite(m1_max) || !std::isfinite(residual_tol)) {
        throw Error(Errc::invalid_argument, "non-finite oracle setting");
    }
    if (!(grid_lo < grid_hi)) throw Error(Errc::invalid_argument, "grid_lo must be below grid_hi");
    if (!(grid_step > 0.0)) throw Error(Errc::invalid_argument, "grid_step must be positive");
    if (max_support != 2 && max_support != 3) throw Error(Errc::invalid_argument, "max_support must be 2 or 3");
    if (m4_target < 0.0) throw Error(Errc::invalid_argument, "m4_target must be nonnegative");
    if (!(residual_tol > 0.0)) throw Error(Errc::invalid_argument, "residual_tol must be positive");
    const double n = std::floor((grid_hi - grid_lo) / grid_step + 1e-9) + 1.0;
    if (static_cast<double>(count_supports(static_cast<std::uint64_t>(std::min(n, 1e6)), max_support)) > kMaxCandidates) {
        throw Error(Errc::invalid_argument, "grid too fine for exhaustive enumeration");
    }
    const auto pts = grid();
    const bool neg = std::any_of(pts.begin(), pts.end(), [](double v) { return v < 0.0; });
    const bool pos = std::any_of(pts.begin(), pts.end(), [](double v) { return v > 0.0; });
    if (!neg || !pos) throw Error(Errc::infeasible, "infeasible configuration: grid needs a negative and a positive point");
}

std::vector<double> OracleConfig::grid() const {
    const auto n = static_cast<std::size_t>(std::floor((grid_hi - grid_lo) / grid_step + 1e-9)) + 1;
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = grid_lo + static_cast<double>(i) * grid_step;
        if (std::fabs(v) < 1e-9 * grid_step) v = 0.0;
        pts[i] = v;
    }
    return pts;
}

OracleResult oracle_max_m3(const OracleConfig& cfg) {
    cfg.validate();
    const Grid g(cfg.grid());
    const double m4_tol = kConstraintTol * std::max(1.0, std::pow(cfg.m4_target, 1.5));
    const MaxProblem problem{g, cfg.m1_max, cfg.m4_target, m4_tol, cfg.max_support};

    const unsigned workers = worker_count(cfg, g.size());
    std::vector<Incumbent> best(workers);
    partitioned(workers, [&](unsigned first, unsigned stride) {
        Incumbent& mine = best[first];
        problem.enumerate(first, stride, [&](const GridCandidate& c) { mine.offer(c, c.moment(3), true); });
    });
    Incumbent overall;
    for (const auto& b : best) overall.merge(b, true);
    if (!overall.has) throw Error(Errc::infeasible, "infeasible configuration");

    DiscreteDistribution argmax = to_distribution(overall.cand);
    const MomentVector mv = moments_from_discrete(argmax);
    OracleResult r{mv.m3(), std::move(argmax), {}, count_supports(g.size(), cfg.max_support)};
    r.constraint_residuals = {mv.m0() - 1.0, mv.m1() - cfg.m1_max, mv.m4() - cfg.m4_target};
    return r;
}

void for_each_max_m3_candidate(const OracleConfig& cfg, const std::function<void(const GridCandidate&)>& visit) {
    cfg.validate();
    const Grid g(cfg.grid());
    const double m4_tol = kConstraintTol * std::max(1.0, std::pow(cfg.m4_target, 1.5));
    const MaxProblem problem{g, cfg.m1_max, cfg.m4_target, m4_tol, cfg.max_support};
    problem.enumerate(0, 1, visit);
}

ExtremeM3 oracle_extreme_m3_given(double m1, double m2, double m4, const OracleConfig& cfg) {
    (void)m3_interval(m1, m2, m4);  // rejects triples no distribution can have
    cfg.validate();
    const Grid g(cfg.grid());
    const GivenProblem problem{g, m1, m2, m4, cfg.residual_tol};

    const unsigned workers = worker_count(cfg, g.size());
    std::vector<Incumbent> lo(workers), hi(workers);
    std::vector<std::uint64_t> admitted(workers, 0);
    partitioned(workers, [&](unsigned first, unsigned stride) {
        problem.enumerate(first, stride, [&](const GridCandidate& c) {
            const double m3 = c.moment(3);
            lo[first].offer(c, m3, false);
            hi[first].offer(c, m3, true);
            ++admitted[first];
        });
    });
    Incumbent min_inc, max_inc;
    std::uint64_t total = 0;
    for (unsigned w = 0; w < workers; ++w) {
        min_inc.merge(lo[w], false);
        max_inc.merge(hi[w], true);
        total += admitted[w];
    }
    if (!max_inc.has) throw Error(Errc::infeasible, "grid cannot represent the moment triple");

    DiscreteDistribution argmin = to_distribution(min_inc.cand);
    DiscreteDistribution argmax = to_distribution(max_inc.cand);
    const double min_m3 = moments_from_discrete(argmin).m3();
    const double max_m3 = moments_from_discrete(argmax).m3();
    return {min_m3, max_m3, std::move(argmin), std::move(argmax), total};
}

}  // namespace mombound
