#include "mombound/report.hpp"

#include "mombound/error.hpp"

#include <fstream>

namespace mombound {

using nlohmann::json;

void to_json(json& j, const MomentVector& mv) {
    j = json{{"m0", mv.m0()}, {"m1", mv.m1()}, {"m2", mv.m2()}, {"m3", mv.m3()}, {"m4", mv.m4()}};
}

void to_json(json& j, const DiscreteDistribution& d) {
    j = json::array();
    for (const Atom& a : d.atoms()) j.push_back({{"x", a.x}, {"p", a.p}});
}

void to_json(json& j, const FeasibilityReport& f) {
    j = json{{"psd", f.psd},
             {"det", f.det},
             {"minors", f.minors},
             {"min_eigenvalue", f.min_eigenvalue},
             {"scale", f.scale},
             {"necessary_condition_only", true}};
}

void to_json(json& j, const BoundResult& b) {
    j = json{{"bound", b.bound}, {"slack", b.slack}, {"tight", b.tight}};
    j["witness"] = b.witness ? json(*b.witness) : json(nullptr);
}

void to_json(json& j, const MomentInterval& iv) { j = json{{"lo", iv.lo}, {"hi", iv.hi}}; }

void to_json(json& j, const Certificate& c) {
    j = json{{"coeffs", c.coeffs}, {"roots", c.roots}, {"recovered", c.recovered}};
}

void to_json(json& j, const ExtremalSpec& s) { j = json{{"sigma", s.sigma}, {"u", s.u}, {"v", s.v}}; }

void to_json(json& j, const OracleResult& r) {
    j = json{{"max_m3", r.max_m3},
             {"argmax", r.argmax},
             {"constraint_residuals",
              {{"m0", r.constraint_residuals.m0}, {"m1", r.constraint_residuals.m1}, {"m4", r.constraint_residuals.m4}}},
             {"candidates_examined", r.candidates_examined}};
}

void to_json(json& j, const ExtremeM3& r) {
    j = json{{"min_m3", r.min_m3},
             {"max_m3", r.max_m3},
             {"argmin", r.argmin},
             {"argmax", r.argmax},
             {"candidates_admitted", r.candidates_admitted}};
}

void to_json(json& j, const FalsifierReport& r) {
    j = json{{"trials", r.trials},
             {"violations",
              {{"sqrt", r.violations_sqrt},
               {"quarter", r.violations_quarter},
               {"interval", r.violations_interval},
               {"psd", r.violations_psd},
               {"total", r.total_violations()}}},
             {"worst_slack_sqrt", r.worst_slack_sqrt},
             {"worst_slack_quarter", r.worst_slack_quarter},
             {"max_abs_slack_sqrt", r.max_abs_slack_sqrt}};
}

MomentVector moments_from_json(const json& j) {
    try {
        return MomentVector(j.at("m0").get<double>(), j.at("m1").get<double>(), j.at("m2").get<double>(),
                            j.at("m3").get<double>(), j.at("m4").get<double>());
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_argument, std::string("malformed moment object: ") + e.what());
    }
}

namespace {

double number_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw Error(Errc::invalid_argument, std::string("atom is missing \"") + key + "\"");
    if (!it->is_number()) throw Error(Errc::invalid_argument, std::string("atom field \"") + key + "\" is not a number");
    return it->get<double>();
}

}  // namespace

DistributionInput parse_distribution_document(const json& doc) {
    if (!doc.is_object()) throw Error(Errc::invalid_argument, "distribution document must be an object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "atoms" && key != "samples") throw Error(Errc::invalid_argument, "unknown key \"" + key + "\"");
    }
    const bool has_atoms = doc.contains("atoms");
    if (has_atoms == doc.contains("samples")) {
        throw Error(Errc::invalid_argument, "document needs exactly one of \"atoms\" or \"samples\"");
    }

    if (has_atoms) {
        const json& list = doc.at("atoms");
        if (!list.is_array()) throw Error(Errc::invalid_argument, "\"atoms\" must be an array");
        std::vector<Atom> atoms;
        for (const json& item : list) {
            if (!item.is_object()) throw Error(Errc::invalid_argument, "each atom must be an object");
            for (const auto& [key, _] : item.items()) {
                if (key != "x" && key != "p") throw Error(Errc::invalid_argument, "unknown atom key \"" + key + "\"");
            }
            atoms.push_back({number_field(item, "x"), number_field(item, "p")});
        }
        return atoms;
    }

    const json& list = doc.at("samples");
    if (!list.is_array()) throw Error(Errc::invalid_argument, "\"samples\" must be an array");
    std::vector<double> samples;
    for (const json& item : list) {
        if (!item.is_number()) throw Error(Errc::invalid_argument, "samples must be numbers");
        samples.push_back(item.get<double>());
    }
    return samples;
}

DiscreteDistribution distribution_from_document(const json& doc) {
    auto input = parse_distribution_document(doc);
    if (auto* atoms = std::get_if<std::vector<Atom>>(&input)) return DiscreteDistribution(std::move(*atoms));
    return DiscreteDistribution::empirical(std::get<std::vector<double>>(input));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::invalid_argument, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(Errc::invalid_argument, path + ": " + e.what());
    }
}

}  // namespace mombound
