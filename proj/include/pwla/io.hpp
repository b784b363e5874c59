#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "pwla/classifier.hpp"
#include "pwla/displacement.hpp"
#include "pwla/params.hpp"

/// Parameter files and report serialisation.
///
/// A parameter file is a JSON object in exactly one of two forms:
///
///   raw:        {"AL": [a11, a12, a21, a22], "AR": [...], "bL": [b1, b2], "bR": [b1, b2]}
///   canonical:  {"TL": .., "DL": .., "aL": .., "TR": .., "DR": .., "aR": .., "b": ..}
///
/// Unknown keys, missing keys, mixed forms and non-finite numbers are rejected.
namespace pwla::io {

struct ParameterInput {
    SystemParams params;
    /// Present when the file used the canonical form.
    std::optional<CanonicalSystem> canonical;
};

/// Throws ParseError on malformed input.
ParameterInput parse_parameters(std::string_view text);
ParameterInput load_parameters(const std::filesystem::path& path);

nlohmann::json to_json(const classifier::Classification& c);
nlohmann::json to_json(const DerivedQuantities& d);
nlohmann::json to_json(const SystemParams& p);

/// Rows `field,value,scale,passed`; the first row carries the verdict.
std::string to_csv(const classifier::Classification& c);

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

}  // namespace pwla::io
