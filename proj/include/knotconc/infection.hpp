#pragma once

#include "knotconc/alexmod.hpp"
#include "knotconc/freegroup.hpp"
#include "knotconc/seifert.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace knotconc {

struct KnotFlags {
    bool amphichiral = false;         // admits an orientation-reversing symmetry
    bool fully_amphichiral = false;   // the symmetry swaps conjugate module factors
    bool ribbon = false;
    bool slice = false;

    bool slice_like() const { return ribbon || slice; }
    friend bool operator==(const KnotFlags&, const KnotFlags&) = default;
};

/// A module element given in presentation coordinates (one Laurent
/// polynomial per Seifert generator), in decomposition coordinates, or by the
/// name of a class declared on the knot record.
struct AlexClass {
    enum class Kind { Presentation, Decomposition, Named };
    Kind kind = Kind::Presentation;
    std::vector<LaurentPoly> coords;
    std::string name;

    friend bool operator==(const AlexClass&, const AlexClass&) = default;
};

struct KnotRecord {
    std::string name;
    std::optional<SeifertMatrix> seifert;   // absent for opaque knots
    KnotFlags flags;
    std::optional<int> arf;                 // user-supplied Arf invariant for opaque knots
    std::map<std::string, AlexClass> classes;
    std::vector<std::string> disk_kernels;  // classes generating submodules that extend over a slice disk

    bool opaque() const { return !seifert.has_value(); }
    /// Arf invariant from the Seifert matrix or the record; nullopt if unknown.
    std::optional<int> arf_invariant() const;
};

/// Resolves a class against a knot record and its module. Throws InputError
/// for unknown names or malformed coordinates.
ModElement resolve_class(const KnotRecord& knot, const AlexModule& m, const AlexClass& c);

/// Label of a submodule: "0", "<alpha>" when generated by a named class of
/// the knot, otherwise "<f>" with f the generating divisor.
std::string submodule_label(const KnotRecord& knot, const AlexModule& m, const Submodule& p);

struct DepthCertificate {
    enum class Kind { Word, Assumed, Structural };
    Kind kind = Kind::Assumed;
    std::optional<FreeWord> word;   // Kind::Word
    int depth = 0;                  // Kind::Assumed and Kind::Structural
    std::string reason;             // Kind::Structural

    static DepthCertificate from_word(FreeWord w);
    static DepthCertificate assumed(int k);
    static DepthCertificate structural(int k, std::string why);
};

struct CurveSpec {
    std::string label;
    std::optional<DepthCertificate> depth;
    std::optional<AlexClass> alex_class;
    bool lk_zero = true;
};

enum class NodeKind { BaseKnot, TrivialLink, SliceLinkAssumed, Infect, BingDouble, RDouble, ConnectedSum, Multiple };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable construction tree node. Only the fields of the active kind are
/// meaningful.
struct Node {
    NodeKind kind = NodeKind::BaseKnot;
    std::shared_ptr<const KnotRecord> knot;   // BaseKnot
    std::string label;                        // SliceLinkAssumed, RDouble
    int components = 1;                       // TrivialLink, SliceLinkAssumed
    NodePtr parent;                           // Infect, BingDouble, RDouble, Multiple
    std::vector<CurveSpec> curves;            // Infect
    std::vector<NodePtr> children;            // Infect infectants, ConnectedSum summands
    int count = 0;                            // BingDouble iterations, Multiple count
};

NodePtr base_knot(std::shared_ptr<const KnotRecord> knot);
NodePtr trivial_link(int components);
NodePtr slice_link(std::string label, int components);
/// Throws InputError unless curves and infectants pair up, every curve has
/// lk_zero and every infectant is a knot.
NodePtr infect(NodePtr parent, std::vector<CurveSpec> curves, std::vector<NodePtr> infectants);
NodePtr bing_double(NodePtr knot, int iterations);
NodePtr rdouble(std::string label, NodePtr knot);
NodePtr connected_sum(std::vector<NodePtr> summands);
NodePtr multiple(NodePtr parent, int count);

/// Number of link components.
int components(const Node& n);
bool is_knot(const Node& n);

/// The built-in ribbon knot 9_46 with Seifert matrix [[0, 2], [1, 0]] and its
/// band meridians alpha (order 2t - 1) and beta (order t - 2).
std::shared_ptr<const KnotRecord> nine46();

/// RDouble as an explicit infection of 9_46 along alpha and beta; BingDouble
/// as an infection of the trivial link along the Bing curve. Other nodes are
/// returned unchanged.
NodePtr desugar(const NodePtr& n);

/// Filtration level: finite n (stored as twice the level so half-integers
/// fit), infinite (slice), or unknown with diagnostics.
struct SolvDegree {
    enum class State { Finite, Infinite, Unknown };
    State state = State::Unknown;
    int twice_level = 0;
    bool rational = false;
    std::vector<std::string> diagnostics;

    static SolvDegree finite(int level) { return {State::Finite, 2 * level, false, {}}; }
    static SolvDegree infinite() { return {State::Infinite, 0, false, {}}; }
    static SolvDegree unknown(std::string why) { return {State::Unknown, 0, false, {std::move(why)}}; }

    bool is_finite() const { return state == State::Finite; }
    int level() const { return twice_level / 2; }
    std::string str() const;
};

SolvDegree solvability_upper_bound(const NodePtr& n);

/// Depth of a curve as far as its certificate shows (lower bound for words
/// in F^(5)); nullopt without a certificate.
std::optional<int> certified_depth(const CurveSpec& c);

/// Number of RDouble levels stacked on top of a non-RDouble base.
int tower_height(const NodePtr& n);

/// Rewrites an n-fold RDouble tower over K as the opaque ribbon knot R_i
/// infected along 2^i clones (depth i) by copies of the (n - i)-fold tower.
/// i = 0 returns the tower and i = 1 its explicit 9_46 infection.
NodePtr expand_clones(const NodePtr& tower, int i);

/// Flattens sums, expands multiples of knots and orders sum children.
NodePtr normalize_tree(const NodePtr& n);

/// Deterministic one-line serialization; equal after normalize_tree iff the
/// trees are equivalent.
std::string canonical_string(const Node& n);

/// Built-in knots: unknot, trefoil, figure8, nine46, eight9.
std::map<std::string, std::shared_ptr<const KnotRecord>> builtin_catalogue();

} // namespace knotconc
