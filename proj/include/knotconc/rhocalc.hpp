#pragma once

#include "knotconc/infection.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace knotconc {

/// An unknown real number: rho0(K), rho1(K; P) or a Cheeger-Gromov constant.
/// Rho0 atoms of knots with Seifert matrices carry a certified value.
struct RhoAtom {
    enum class Kind { Rho0, Rho1, CG };
    Kind kind = Kind::Rho0;
    std::string label;
    std::string qualifier;   // Rho1: submodule label, "0" for the zero submodule
    std::optional<CertifiedReal> value;

    static RhoAtom rho0(std::string knot, std::optional<CertifiedReal> value = std::nullopt);
    static RhoAtom rho1(std::string knot, std::string submodule = "0");
    static RhoAtom cg(std::string manifold);

    /// rho0(K), rho1(K), rho1(K; <alpha>), C(M)
    std::string str() const;

    // identity ignores the attached value
    friend bool operator==(const RhoAtom& a, const RhoAtom& b)
    {
        return a.kind == b.kind && a.label == b.label && a.qualifier == b.qualifier;
    }
    friend bool operator<(const RhoAtom& a, const RhoAtom& b)
    {
        return std::tie(a.kind, a.label, a.qualifier) < std::tie(b.kind, b.label, b.qualifier);
    }
};

/// Rational linear combination of atoms plus a rational constant, kept
/// canonical (no zero coefficients).
class RhoTerm {
public:
    RhoTerm() = default;
    RhoTerm(const Rational& c) : constant_(c) {}   // NOLINT: implicit on purpose
    RhoTerm(const RhoAtom& a) { coeffs_[a] = 1; }  // NOLINT

    const std::map<RhoAtom, Rational>& coefficients() const { return coeffs_; }
    const Rational& constant() const { return constant_; }
    Rational coefficient(const RhoAtom& a) const;
    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }
    bool is_constant() const { return coeffs_.empty(); }
    std::set<RhoAtom> atoms() const;

    RhoTerm& operator+=(const RhoTerm& o);
    RhoTerm& operator-=(const RhoTerm& o);
    friend RhoTerm operator+(RhoTerm a, const RhoTerm& b) { return a += b; }
    friend RhoTerm operator-(RhoTerm a, const RhoTerm& b) { return a -= b; }
    friend RhoTerm operator*(const Rational& c, const RhoTerm& t);
    RhoTerm operator-() const { return Rational(-1) * *this; }

    /// Replaces every occurrence of atom a by t.
    RhoTerm substitute(const RhoAtom& a, const RhoTerm& t) const;

    /// Interval value when every atom carries one.
    std::optional<CertifiedReal> evaluate() const;

    /// "rho1(nine46) + rho0(K1) + rho0(K2)", "-1/2 rho1(nine46)", "0"
    std::string str() const;

    friend bool operator==(const RhoTerm& a, const RhoTerm& b);
    friend bool operator<(const RhoTerm& a, const RhoTerm& b);

private:
    void add(const RhoAtom& a, const Rational& c);

    std::map<RhoAtom, Rational> coeffs_;
    Rational constant_ = 0;
};

/// Declared Q-linear independence of atoms. Each set lists printed atom
/// names; "1" in a set makes its atoms independent of the rationals too, and
/// a singleton {a} says a != 0.
struct Axioms {
    std::vector<std::set<std::string>> independent;

    /// Index of a set containing every name, if any.
    std::optional<std::size_t> covering_set(const std::set<std::string>& names) const;
};

/// How a term was shown to be nonzero.
struct NonzeroProof {
    bool proven = false;
    std::string route;
};

/// A term is nonzero if its interval excludes 0, or if it is a nonzero
/// combination of atoms from one independent set (with "1" in that set when
/// the constant is nonzero), or a nonzero constant.
NonzeroProof prove_nonzero(const RhoTerm& t, const Axioms& axioms);

/// Exact rank test over Q: true iff the terms are linearly independent as
/// real numbers given the axioms (all atoms, and "1" if constants occur, must
/// lie in one independent set).
bool linearly_independent(const std::vector<RhoTerm>& terms, const Axioms& axioms);

/// 0 if the class lies in P (kernel of the coefficient system), else 1.
int eval_kernel(const Submodule& p, const ModElement& cls);
/// Resolves the curve class first; throws InputError when it is missing.
int eval_kernel(const KnotRecord& knot, const AlexModule& m, const Submodule& p, const CurveSpec& curve);

/// base + sum of the terms whose bit is 1.
RhoTerm rho_additivity(const RhoTerm& base, const std::vector<std::pair<int, RhoTerm>>& contributions);

/// Knot records consulted by the vanishing rules.
struct RhoContext {
    std::map<std::string, std::shared_ptr<const KnotRecord>> knots;
    Rational tol = Rational(1, 1000000000);

    void add(const std::shared_ptr<const KnotRecord>& k) { knots[k->name] = k; }
    const KnotRecord* find(const std::string& name) const;
};

/// Whether every first-order signature of the knot vanishes by the
/// ribbon + fully amphichiral rule; the derivation is appended to why.
bool all_fos_zero(const KnotRecord& k, std::vector<std::string>* why = nullptr);

/// Applies the vanishing rules until nothing changes:
///   rho0(K) = 0 for slice or ribbon K;
///   rho1(K) = 0 (zero submodule) for amphichiral K;
///   rho1(K; P) = 0 when K is slice or ribbon and P is generated by a disk kernel class;
///   rho1(K; *) = 0 when all_fos_zero(K);
///   rho1(K) = 0 when the Alexander module of K is zero (it equals rho0(K) = 0).
/// Each applied rule is appended to notes.
RhoTerm simplify(const RhoTerm& t, const RhoContext& ctx, std::vector<std::string>* notes = nullptr);

/// rho0 of a knot-valued construction as a term.
RhoTerm rho0_term(const NodePtr& knot, const RhoContext& ctx);

struct FosEntry {
    std::string label;   // submodule label
    long dimension = 0;
    RhoTerm term;
};

struct FosResult {
    std::string knot;    // base knot name
    std::vector<FosEntry> entries;
    bool complete = true;   // false when the isotropic submodules are unknown
    std::vector<std::string> notes;

    std::vector<RhoTerm> terms() const;
};

/// First-order signatures of a base knot or of an infection (possibly
/// nested, possibly via R-doubling) of a base knot, one per isotropic
/// submodule of the base.
FosResult first_order_signatures(const NodePtr& knot, const RhoContext& ctx);

} // namespace knotconc
