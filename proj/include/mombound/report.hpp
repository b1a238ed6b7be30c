#pragma once

// JSON encodings of the library types, and the strict distribution-file
// parser used by the CLI.
//
// Distribution documents are either
//   {"atoms": [{"x": -1, "p": 0.5}, {"x": 1, "p": 0.5}]}
// or
//   {"samples": [0.3, -1.2, 2.0]}
// and nothing else: unknown keys are rejected at both levels.

#include "mombound/bound_engine.hpp"
#include "mombound/extremal_oracle.hpp"
#include "mombound/moment_core.hpp"

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace mombound {

void to_json(nlohmann::json& j, const MomentVector& mv);
void to_json(nlohmann::json& j, const DiscreteDistribution& d);
void to_json(nlohmann::json& j, const FeasibilityReport& f);
void to_json(nlohmann::json& j, const BoundResult& b);
void to_json(nlohmann::json& j, const MomentInterval& iv);
void to_json(nlohmann::json& j, const Certificate& c);
void to_json(nlohmann::json& j, const ExtremalSpec& s);
void to_json(nlohmann::json& j, const OracleResult& r);
void to_json(nlohmann::json& j, const ExtremeM3& r);
void to_json(nlohmann::json& j, const FalsifierReport& r);

/// Reads {"m0": .., "m1": .., "m2": .., "m3": .., "m4": ..}.
MomentVector moments_from_json(const nlohmann::json& j);

using DistributionInput = std::variant<std::vector<Atom>, std::vector<double>>;

/// Parses a distribution document. Throws Error(invalid_argument) on any
/// schema violation.
DistributionInput parse_distribution_document(const nlohmann::json& doc);

/// Builds the distribution a document describes (atoms as given, or the
/// empirical law of the samples).
DiscreteDistribution distribution_from_document(const nlohmann::json& doc);

nlohmann::json load_json_file(const std::string& path);

}  // namespace mombound
