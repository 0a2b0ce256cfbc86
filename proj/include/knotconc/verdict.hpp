#pragma once

#include "knotconc/rhocalc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace knotconc {

enum class Conclusion { NotSlice, NotSliceConditional, Inconclusive, SolvableUpperBound };
enum class HypothesisStatus { Certified, Assumed, Failed };

std::string to_string(Conclusion c);
std::string to_string(HypothesisStatus s);

struct Hypothesis {
    std::string text;
    HypothesisStatus status = HypothesisStatus::Certified;
};

/// subject is not in the excluded set of values.
struct Residual {
    RhoAtom subject;
    std::vector<RhoTerm> excluded;   // sorted, distinct

    std::string str() const;
};

// Citation tags for the obstruction theorems.
inline constexpr const char* kTagBingDouble = "BING_DOUBLE_FOS";
inline constexpr const char* kTagTrivialLink = "TRIVIAL_LINK_INFECTION";
inline constexpr const char* kTagSliceLink = "SLICE_LINK_INFECTION";
inline constexpr const char* kTagDoubling = "GENERALIZED_DOUBLING";

struct Verdict {
    Conclusion conclusion = Conclusion::Inconclusive;
    std::string theorem;
    std::vector<Hypothesis> hypotheses;
    std::string condition;               // human-readable residual predicate
    std::optional<Residual> residual;    // structured form when it is a single exclusion
    std::optional<SolvDegree> solvable_bound;
    std::vector<std::string> notes;

    bool has_failed_hypothesis() const;
    /// NOT_SLICE only with every hypothesis certified.
    bool sound() const;
    /// Whether the verdict would stay sound with conclusion c.
    bool sound_with(Conclusion c) const;
    /// Multi-line report: conclusion, citation, hypotheses, condition, notes.
    std::string transcript() const;
};

/// Throws std::logic_error if the verdict violates the soundness gate.
void check_soundness(const Verdict& v);

/// No iterated Bing double of K is slice when every first-order signature of
/// K is provably nonzero.
Verdict bing_obstruction(const NodePtr& knot, const RhoContext& ctx, const Axioms& axioms);

/// Single infection of a trivial link (certified word depth) or of a link
/// assumed slice by a knot K.
Verdict infection_obstruction(const NodePtr& tree, const RhoContext& ctx, const Axioms& axioms);

/// L = T(alpha, R_m o ... o R_1(K)), optionally wrapped in Multiple, with T
/// trivial or assumed slice, alpha of exact depth k, and every R_j a slice
/// knot infected along curves whose span carries a nonzero Blanchfield
/// pairing. Also accepts BingDouble(tower, k).
Verdict doubling_operator_verdict(const NodePtr& tree, const RhoContext& ctx);

/// Dispatches on the tree shape: links to the infection or doubling engines,
/// knots to the Bing double obstruction.
Verdict verdict_for(const NodePtr& tree, const RhoContext& ctx, const Axioms& axioms);

} // namespace knotconc
