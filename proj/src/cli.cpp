#include "mombound/cli.hpp"

#include "mombound/bound_engine.hpp"
#include "mombound/error.hpp"
#include "mombound/extremal_oracle.hpp"
#include "mombound/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>

#ifndef MOMBOUND_VERSION
#define MOMBOUND_VERSION "0.0.0"
#endif

namespace mombound::cli {

namespace {

using nlohmann::json;

constexpr const char* kToolName = "mombound";

json report_header(const std::string& command) {
    return json{{"tool", kToolName}, {"version", MOMBOUND_VERSION}, {"command", command}};
}

struct DistributionSource {
    std::string file;
    std::vector<double> samples;
};

// Loads a distribution from a document file or an inline sample list and
// records what was read in the report's input echo.
DiscreteDistribution load_distribution(const DistributionSource& src, json& echo) {
    if (!src.file.empty() && !src.samples.empty()) {
        throw Error(Errc::invalid_argument, "give either a distribution file or --samples, not both");
    }
    if (!src.samples.empty()) {
        echo["samples"] = src.samples;
        return DiscreteDistribution::empirical(src.samples);
    }
    if (src.file.empty()) throw Error(Errc::invalid_argument, "no input: give a distribution file or --samples");
    json doc = load_json_file(src.file);
    echo["file"] = src.file;
    echo["document"] = doc;
    return distribution_from_document(doc);
}

void require_tol(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(Errc::invalid_argument, "--tol must be positive");
}

// --- subcommands ------------------------------------------------------------

json cmd_moments(const DistributionSource& src, double tol) {
    require_tol(tol);
    json rep = report_header("moments");
    json echo = json::object();
    const DiscreteDistribution d = load_distribution(src, echo);
    echo["tol"] = tol;
    rep["input"] = echo;

    const MomentVector mv = moments_from_discrete(d);
    const FeasibilityReport f = feasibility(mv, tol);
    rep["distribution"] = d;
    rep["moments"] = mv;
    rep["abs_m3"] = abs_third_moment(d);
    rep["hankel_det"] = f.det;
    rep["feasibility"] = f;
    return rep;
}

json cmd_bound(const DistributionSource& src, const std::vector<double>& raw, double tol) {
    require_tol(tol);
    json rep = report_header("bound");
    json echo = json::object();
    std::optional<MomentVector> parsed;
    if (!raw.empty()) {
        if (!src.file.empty() || !src.samples.empty()) {
            throw Error(Errc::invalid_argument, "give either --moments or a distribution, not both");
        }
        echo["moments"] = raw;
        parsed.emplace(raw[0], raw[1], raw[2], raw[3], raw[4]);
    } else {
        parsed.emplace(moments_from_discrete(load_distribution(src, echo)));
    }
    echo["tol"] = tol;
    rep["input"] = echo;
    const MomentVector mv = *parsed;
    rep["moments"] = mv;

    const FeasibilityReport f = feasibility(mv, tol);
    rep["feasibility"] = f;
    if (!f.psd) throw Error(Errc::infeasible, "not a moment sequence (Hankel matrix is not PSD)");

    json notes = json::array();
    json bounds = json::object();
    bounds["trivial"] = bound_trivial(mv);
    rep["interval"] = m3_interval(mv.m1(), mv.m2(), mv.m4(), tol);

    json tightness = json::object();
    if (mv.m1() <= tol * length_scale(mv)) {
        const BoundResult s = bound_sqrt(mv, tol);
        const BoundResult q = bound_quarter(mv, tol);
        bounds["sqrt"] = s;
        bounds["quarter"] = q;
        tightness["sqrt"] = s.tight;
        tightness["quarter"] = q.tight;
    } else {
        bounds["sqrt"] = nullptr;
        bounds["quarter"] = nullptr;
        tightness["sqrt"] = nullptr;
        tightness["quarter"] = nullptr;
        notes.push_back("m1 > 0: the sharp bounds need E X <= 0; see interval for the exact m3 range");
    }
    rep["bounds"] = bounds;
    rep["tightness"] = tightness;

    if (std::fabs(f.det) <= tol * f.scale) {
        try {
            rep["certificate"] = certificate_from_hankel(mv, tol);
        } catch (const Error& e) {
            rep["certificate"] = nullptr;
            notes.push_back(std::string("certificate unavailable: ") + e.what());
        }
    } else {
        rep["certificate"] = nullptr;
    }
    rep["notes"] = notes;
    return rep;
}

json cmd_interval(double m1, double m2, double m4, double tol) {
    require_tol(tol);
    json rep = report_header("interval");
    rep["input"] = {{"m1", m1}, {"m2", m2}, {"m4", m4}, {"tol", tol}};
    rep["interval"] = m3_interval(m1, m2, m4, tol);
    return rep;
}

json cmd_extremal(double sigma, double tol) {
    require_tol(tol);
    json rep = report_header("extremal");
    rep["input"] = {{"sigma", sigma}, {"tol", tol}};
    const ExtremalSpec spec = ExtremalSpec::from_sigma(sigma);
    const DiscreteDistribution d = extremal_from_sigma(sigma);
    const MomentVector mv = moments_from_discrete(d);
    rep["parameters"] = spec;
    rep["distribution"] = d;
    rep["moments"] = mv;
    rep["bound_quarter"] = bound_quarter(mv, tol);

    const double target_m3 = sharp_constant() * std::pow(mv.m4(), 0.75);
    const double target_m2 = std::sqrt(mv.m4() / 3.0);
    rep["checks"] = {{"m3_rel_error", std::fabs(mv.m3() - target_m3) / target_m3},
                     {"m2_rel_error", std::fabs(mv.m2() - target_m2) / target_m2}};
    return rep;
}

struct VerifyOptions {
    OracleConfig oracle;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    int atoms = 8;
    double gap_tol = 5e-3;
};

json cmd_verify(const VerifyOptions& opt, bool& passed) {
    if (opt.trials == 0) throw Error(Errc::invalid_argument, "--trials must be positive");
    if (opt.atoms < 2) throw Error(Errc::invalid_argument, "--atoms must be at least 2");
    if (!(opt.gap_tol > 0.0)) throw Error(Errc::invalid_argument, "--gap-tol must be positive");
    opt.oracle.validate();

    json rep = report_header("verify");
    const OracleConfig& c = opt.oracle;
    rep["input"] = {{"grid_lo", c.grid_lo},     {"grid_hi", c.grid_hi}, {"step", c.grid_step},
                    {"m4", c.m4_target},        {"m1_max", c.m1_max},   {"max_support", c.max_support},
                    {"trials", opt.trials},     {"seed", opt.seed},     {"atoms", opt.atoms},
                    {"gap_tol", opt.gap_tol}};

    const auto t0 = std::chrono::steady_clock::now();
    const OracleResult oracle = oracle_max_m3(c);
    const auto t1 = std::chrono::steady_clock::now();
    const FalsifierReport fals = random_falsifier(opt.trials, opt.seed, opt.atoms);
    const auto t2 = std::chrono::steady_clock::now();

    const double target = sharp_constant() * std::pow(c.m4_target, 0.75);
    const double gap = std::fabs(target - oracle.max_m3);
    passed = fals.total_violations() == 0 && gap <= opt.gap_tol;

    rep["oracle"] = oracle;
    rep["sharp_bound"] = target;
    rep["gap"] = gap;
    rep["falsifier"] = fals;
    rep["seconds"] = {{"oracle", std::chrono::duration<double>(t1 - t0).count()},
                      {"falsifier", std::chrono::duration<double>(t2 - t1).count()}};
    rep["passed"] = passed;
    return rep;
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::infeasible:
            return kInfeasible;
        case Errc::invalid_argument:
        case Errc::precondition:
            return kUsageError;
    }
    return kUsageError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sharp third-moment bounds from the first four moments", kToolName};
    app.set_version_flag("--version", MOMBOUND_VERSION);
    app.require_subcommand(1);

    double tol = kDefaultTightTol;

    DistributionSource msrc;
    auto* moments = app.add_subcommand("moments", "moments, E|X|^3 and Hankel feasibility of a distribution");
    moments->add_option("file", msrc.file, "distribution document (JSON)");
    moments->add_option("--samples", msrc.samples, "inline sample values");
    moments->add_option("--tol", tol, "relative tolerance")->capture_default_str();

    DistributionSource bsrc;
    std::vector<double> raw;
    auto* bound = app.add_subcommand("bound", "trivial and sharp upper bounds on m3");
    bound->add_option("file", bsrc.file, "distribution document (JSON)");
    bound->add_option("--samples", bsrc.samples, "inline sample values");
    bound->add_option("--moments", raw, "m0 m1 m2 m3 m4")->expected(5);
    bound->add_option("--tol", tol, "relative tightness tolerance")->capture_default_str();

    double m1 = 0.0, m2 = 0.0, m4 = 0.0;
    auto* interval = app.add_subcommand("interval", "exact m3 range for given (m1, m2, m4)");
    interval->add_option("m1", m1)->required();
    interval->add_option("m2", m2)->required();
    interval->add_option("m4", m4)->required();
    interval->add_option("--tol", tol)->capture_default_str();

    double sigma = 0.0;
    auto* extremal = app.add_subcommand("extremal", "the two-point law attaining the (4/27)^{1/4} bound");
    extremal->add_option("sigma", sigma, "standard deviation of the extremal law")->required();
    extremal->add_option("--tol", tol)->capture_default_str();

    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "grid oracle and randomized falsification of the sharp bound");
    verify->add_option("--grid-lo", vopt.oracle.grid_lo)->capture_default_str();
    verify->add_option("--grid-hi", vopt.oracle.grid_hi)->capture_default_str();
    verify->add_option("--step", vopt.oracle.grid_step)->capture_default_str();
    verify->add_option("--m4", vopt.oracle.m4_target)->capture_default_str();
    verify->add_option("--m1-max", vopt.oracle.m1_max)->capture_default_str();
    verify->add_option("--max-support", vopt.oracle.max_support)->capture_default_str();
    verify->add_option("--threads", vopt.oracle.threads, "oracle worker threads (0 = all cores)")->capture_default_str();
    verify->add_option("--trials", vopt.trials)->capture_default_str();
    verify->add_option("--seed", vopt.seed)->capture_default_str();
    verify->add_option("--atoms", vopt.atoms, "atom budget per random draw")->capture_default_str();
    verify->add_option("--gap-tol", vopt.gap_tol)->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << kToolName << ": usage error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        json rep;
        int code = kSuccess;
        if (moments->parsed()) {
            rep = cmd_moments(msrc, tol);
        } else if (bound->parsed()) {
            rep = cmd_bound(bsrc, raw, tol);
        } else if (interval->parsed()) {
            rep = cmd_interval(m1, m2, m4, tol);
        } else if (extremal->parsed()) {
            rep = cmd_extremal(sigma, tol);
        } else {
            bool passed = false;
            rep = cmd_verify(vopt, passed);
            code = passed ? kSuccess : kVerificationFailed;
        }
        out << rep.dump(2) << '\n';
        return code;
    } catch (const Error& e) {
        err << kToolName << ": error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

}  // namespace mombound::cli
