#pragma once

#include "knotconc/verdict.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>

namespace knotconc {

using Json = nlohmann::ordered_json;

struct Options {
    Rational tol = Rational(1, 1000000000);
    std::string tol_text = "1e-9";
    std::size_t support_cap = kDefaultSupportCap;
};

/// Parsed input document: knot records (built-ins included), independence
/// axioms, named constructions and options.
///
/// {
///   "knots":  {"K1": {}, "T2": {"seifert": [[-1, 1], [0, -1]], "flags": ["ribbon"]}},
///   "axioms": {"independent": [["rho0(K1)", "rho0(K2)"]], "nonzero": ["rho0(K1)"]},
///   "builds": {"ex": {"op": "infect", "parent": {"knot": "nine46"}, ...}},
///   "options": {"tol": "1e-9"}
/// }
struct Document {
    std::map<std::string, std::shared_ptr<const KnotRecord>> knots;
    Axioms axioms;
    std::map<std::string, NodePtr> builds;
    Options options;

    /// Throws InputError for unknown names.
    std::shared_ptr<const KnotRecord> knot(const std::string& name) const;
    /// A build by name, else a knot by name as a base node.
    NodePtr target(const std::string& name) const;
    RhoContext context() const;
};

/// Built-in knots only, default options.
Document builtin_document();
/// Validates the schema and resolves every reference; throws InputError.
Document parse_document(const Json& j);
Document parse_document_text(const std::string& text);
Document load_document(const std::string& path);

/// "t^2 - 3t + 1" or sparse [[exponent, [num, den]], ...] in descending order.
LaurentPoly parse_poly_json(const Json& j);
NodePtr parse_node(const Json& j, const Document& doc);

Json to_json(const RhoTerm& t);
Json to_json(const SolvDegree& d);
Json to_json(const FosResult& r);
Json to_json(const Verdict& v);
Json to_json(const Node& n);

} // namespace knotconc
