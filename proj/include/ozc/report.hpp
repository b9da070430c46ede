// JSON report builders and the problem-document front end. The command-line
// driver is a thin shell over run(); keeping the pipeline here makes the
// byte-for-byte reproducibility of reports testable in-process.
#pragma once

#include "ozc/closure.hpp"

#include <json.hpp>

#include <string>

namespace ozc {

using Json = nlohmann::ordered_json;

struct ProblemDocument {
    FieldPtr field;
    std::vector<PlaneAutomorphism> generators;
    std::optional<PlanePoint> point;
    ClosureConfig config;
};

// Accepts {"field": ..., "generators": [["fx","fy"], ...], "point": ["a","b"],
// "config": {...}}. The field is "Q", {"cyclotomic": n}, or {"modulus":
// ["c0", ..., "1"]}. Missing config entries fall back to `base`.
ProblemDocument parse_document(const Json& doc, const ClosureConfig& base = {});

Json field_json(const FieldPtr& field);
Json subvariety_json(const Subvariety& v);
Json descriptor_json(const LatticeDescriptor& d);
Json word_json(const AmalgamWord& w);
Json closure_json(const ClosureResult& r, bool with_trace);

// subcommand is one of factorize, conjugate, classify, closure
Json run(const std::string& subcommand, const ProblemDocument& doc, bool with_trace = false);

} // namespace ozc
