#pragma once

#include "knotconc/factor.hpp"
#include "knotconc/laurent.hpp"
#include "knotconc/ratfunc.hpp"
#include "knotconc/seifert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace knotconc {

/// Coordinates of a module element over the decomposition basis; entry i is
/// taken modulo the i-th invariant factor.
using ModElement = std::vector<LaurentPoly>;

struct SmithForm {
    std::vector<LaurentPoly> diagonal;   // normalized, d_1 | d_2 | ...
    LaurentMatrix w;                     // D = U A W for some invertible U
    LaurentMatrix w_inv;
};

/// Smith normal form over Q[t, 1/t] of a square matrix with nonzero determinant.
SmithForm smith_form(LaurentMatrix a);

struct PrimarySummand {
    LaurentPoly prime;   // normalized irreducible
    int exponent = 0;
    ModElement generator;   // generates a cyclic summand of order prime^exponent
};

/// Rational Alexander module Q[t,1/t]^n / (rows of tV - V^T).
///
/// Presentation coordinates are row vectors x with x ~ x + zA. Decomposition
/// coordinates y = x W, restricted to the nonunit invariant factors.
class AlexModule {
public:
    explicit AlexModule(const SeifertMatrix& v);

    const SeifertMatrix& seifert() const { return v_; }
    const LaurentMatrix& presentation() const { return a_; }
    /// Nonunit invariant factors d_1 | d_2 | ... (empty for the zero module).
    const std::vector<LaurentPoly>& invariant_factors() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    bool is_zero() const { return orders_.empty(); }
    bool is_cyclic() const { return orders_.size() <= 1; }
    /// Product of the invariant factors, equal to Delta up to units.
    LaurentPoly order() const;

    ModElement zero() const { return ModElement(rank()); }
    ModElement basis(std::size_t i) const;
    ModElement reduce(ModElement y) const;
    ModElement add(const ModElement& a, const ModElement& b) const;
    ModElement scale(const LaurentPoly& f, const ModElement& y) const;
    bool is_zero(const ModElement& y) const;

    /// Throws InputError if x has the wrong length.
    ModElement from_presentation(const std::vector<LaurentPoly>& x) const;
    std::vector<LaurentPoly> to_presentation(const ModElement& y) const;

    /// Elementary-divisor view: one cyclic summand per prime power.
    std::vector<PrimarySummand> primary_decomposition() const;

    /// Bl(x, y) = (1 - t) x A^-1 conj(y)^T mod Q[t, 1/t] on presentation vectors.
    RationalFunctionModP blanchfield_presentation(const std::vector<LaurentPoly>& x,
                                                  const std::vector<LaurentPoly>& y) const;
    RationalFunctionModP blanchfield(const ModElement& x, const ModElement& y) const;

private:
    SeifertMatrix v_;
    LaurentMatrix a_;
    LaurentMatrix adj_;   // adjugate of A
    LaurentPoly det_;
    SmithForm snf_;
    std::vector<LaurentPoly> orders_;
    std::vector<std::size_t> slots_;   // SNF index of each nonunit factor
};

/// Gram matrix of the Blanchfield form on the decomposition basis.
struct BlanchfieldForm {
    std::vector<std::vector<RationalFunctionModP>> gram;
};
BlanchfieldForm blanchfield_form(const AlexModule& m);

/// Submodule of an AlexModule, canonically represented by the Hermite normal
/// form of its generators together with the relations d_i e_i.
class Submodule {
public:
    Submodule(const AlexModule& m, std::vector<ModElement> generators);

    const std::vector<ModElement>& generators() const { return gens_; }
    /// Upper triangular, diagonal entries normalized, off-diagonal entries
    /// reduced modulo the diagonal entry below them.
    const std::vector<ModElement>& hermite() const { return hnf_; }
    bool contains(const ModElement& x) const;
    bool is_zero() const { return dim_ == 0; }
    /// Dimension over Q.
    long dimension() const { return dim_; }
    /// For submodules of a cyclic module: the normalized f with P = f * module.
    std::optional<LaurentPoly> cyclic_divisor() const;

    friend bool operator==(const Submodule& a, const Submodule& b) { return a.hnf_ == b.hnf_; }

private:
    std::vector<ModElement> gens_;
    std::vector<ModElement> hnf_;
    long dim_ = 0;
};

/// All P with P inside its Blanchfield orthogonal complement, sorted by
/// dimension and then by divisor. Supported for cyclic modules (every
/// submodule is f times the module for a divisor f of the order); other
/// modules raise UnsupportedError.
std::vector<Submodule> isotropic_submodules(const AlexModule& m);

/// Normalized divisors of f up to units, including 1 and f.
std::vector<LaurentPoly> divisors(const LaurentPoly& f);

} // namespace knotconc
