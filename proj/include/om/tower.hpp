#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "om/base_field.hpp"
#include "om/rat.hpp"

namespace om {

/// Element of a residue-field tower level. Level 0 is F_p (value c); a level
/// L > 0 element is a dense polynomial in the level generator z_{L-1} with
/// coefficients one level down, reduced modulo that level's minimal
/// polynomial. Canonical form: rep carries no trailing zeros; the zero
/// element has an empty rep.
struct TowerElem {
    int level = 0;
    long c = 0;                 // level-0 value, 0 <= c < p
    std::vector<TowerElem> rep; // level > 0 coefficients

    bool is_zero() const { return level == 0 ? c == 0 : rep.empty(); }
    bool operator==(const TowerElem& o) const;
};

/// Deterministic total order (level, then degree, then coefficients from the
/// constant term up); used to canonicalize factor lists.
int elem_cmp(const TowerElem& a, const TowerElem& b);

/// Dense univariate polynomial with coefficients at one tower level.
struct TowerPoly {
    int level = 0;
    std::vector<TowerElem> c;

    bool is_zero() const { return c.empty(); }
    long deg() const { return static_cast<long>(c.size()) - 1; }
    bool operator==(const TowerPoly& o) const { return level == o.level && c == o.c; }
};

int poly_cmp(const TowerPoly& a, const TowerPoly& b);

struct TowerFactor {
    TowerPoly poly;
    int multiplicity;
};

struct TowerFactorization {
    std::vector<TowerFactor> factors; // monic, irreducible, pairwise distinct, sorted
    TowerElem lead;                   // leading coefficient of the input
};

/// The tower k = kappa_0 c kappa_1 c ... c kappa_r over F_p, with
/// kappa_{i+1} = kappa_i[y]/(m_i) for the stored monic irreducible minimal
/// polynomials m_i. Immutable after construction; extend() returns a new
/// tower sharing nothing mutable.
class Tower {
public:
    explicit Tower(const Prime& p);

    unsigned long p() const { return p_; }
    int levels() const { return static_cast<int>(minpolys_.size()); } // r
    long fdeg(int i) const { return f_[static_cast<size_t>(i)]; }     // [kappa_{i+1}:kappa_i]
    const Int& cardinality(int level) const { return q_[static_cast<size_t>(level)]; }
    const TowerPoly& minpoly(int i) const { return minpolys_[static_cast<size_t>(i)]; }

    /// Verifies m monic and irreducible over the top level (by the module's
    /// own factorizer); on failure the error message names a proper factor.
    Tower extend(const TowerPoly& m) const;
    Tower truncate(int nlevels) const;

    // --- elements ---
    TowerElem zero(int level) const;
    TowerElem one(int level) const;
    TowerElem from_residue(long v, int level = 0) const; // v mod p, embedded
    /// z_{level-1}: the class of the generator in kappa_level (level >= 1).
    TowerElem gen(int level) const;

    TowerElem add(const TowerElem& a, const TowerElem& b) const;
    TowerElem sub(const TowerElem& a, const TowerElem& b) const;
    TowerElem neg(const TowerElem& a) const;
    TowerElem mul(const TowerElem& a, const TowerElem& b) const;
    TowerElem inv(const TowerElem& a) const;
    TowerElem div(const TowerElem& a, const TowerElem& b) const;
    /// a^n; negative n via the inverse. Exponents are reduced modulo
    /// cardinality(level) - 1 before powering (a != 0).
    TowerElem pow(const TowerElem& a, const Int& n) const;

    /// Identity inclusion kappa_from -> kappa_to (to >= a.level).
    TowerElem embed(const TowerElem& a, int to_level) const;
    /// Inverse of embed; errors when the element does not lie in the sublevel.
    TowerElem norm_down(const TowerElem& a, int to_level) const;

    // --- polynomials over a level ---
    TowerPoly pmake(int level, std::vector<TowerElem> coeffs) const;
    TowerPoly pconst(int level, const TowerElem& e) const;
    TowerPoly pvar(int level) const; // the monomial y
    TowerPoly padd(const TowerPoly& a, const TowerPoly& b) const;
    TowerPoly psub(const TowerPoly& a, const TowerPoly& b) const;
    TowerPoly pmul(const TowerPoly& a, const TowerPoly& b) const;
    TowerPoly pscale(const TowerPoly& a, const TowerElem& s) const;
    std::pair<TowerPoly, TowerPoly> pdivrem(const TowerPoly& a, const TowerPoly& b) const;
    TowerPoly pgcd(const TowerPoly& a, const TowerPoly& b) const;
    TowerPoly pmonic(const TowerPoly& a) const;
    TowerPoly pderiv(const TowerPoly& a) const;
    TowerPoly ppow_mod(const TowerPoly& a, const Int& n, const TowerPoly& mod) const;
    TowerElem peval(const TowerPoly& a, const TowerElem& x) const;
    /// f(y + eta), exact composition with a linear shift.
    TowerPoly pcompose_shift(const TowerPoly& a, const TowerElem& eta) const;
    /// Interprets a polynomial over level L as an element of kappa_{L+1} by
    /// evaluating at the generator z_L (reduction modulo the minimal
    /// polynomial). The tower must already have level L+1.
    TowerElem eval_at_gen(const TowerPoly& a) const;

    /// Full factorization over the coefficients' level: squarefree
    /// decomposition, distinct-degree splitting, then equal-degree splitting
    /// driven by a PRNG seeded from (p, minpoly fingerprints, input
    /// fingerprint, seed_mix) so runs are reproducible.
    TowerFactorization factor(const TowerPoly& f, std::uint64_t seed_mix = 0) const;
    bool is_irreducible(const TowerPoly& f, std::uint64_t seed_mix = 0) const;

    std::string elem_str(const TowerElem& a) const;
    std::string poly_str(const TowerPoly& f, const std::string& var = "y") const;

private:
    unsigned long p_;
    std::vector<TowerPoly> minpolys_;
    std::vector<long> f_;
    std::vector<Int> q_; // q_[i] = |kappa_i|

    void check_level(const TowerElem& a, int level) const;
    TowerElem reduce(int level, std::vector<TowerElem> rep) const;
    TowerElem pth_root(const TowerElem& a) const;
};

} // namespace om
