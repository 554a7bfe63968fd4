#pragma once

#include <compare>
#include <vector>

#include "om/rat.hpp"

namespace om {

/// Element of Q^k under the lexicographic order. Houses group values:
/// augmentation values gamma_i, valuation outputs mu(f), polygon slopes.
/// All arithmetic is exact; there is no floating point in this module.
class GroupVec {
public:
    explicit GroupVec(std::vector<Rat> coords);
    static GroupVec zero(int k);
    /// Embeds a scalar into the first coordinate, zero elsewhere.
    static GroupVec scalar(const Rat& v, int k);

    int dim() const { return static_cast<int>(c_.size()); }
    const Rat& operator[](int j) const { return c_[static_cast<size_t>(j)]; }
    const std::vector<Rat>& coords() const { return c_; }

    GroupVec operator+(const GroupVec& o) const;
    GroupVec operator-(const GroupVec& o) const;
    GroupVec operator-() const;
    GroupVec operator*(const Rat& s) const;
    bool is_zero() const;

    bool operator==(const GroupVec& o) const;
    std::strong_ordering operator<=>(const GroupVec& o) const;

private:
    std::vector<Rat> c_;
};

/// Three-way lexicographic comparison; dimension mismatches throw.
std::strong_ordering lex_cmp(const GroupVec& a, const GroupVec& b);

/// Bezout and L-operator data of one augmentation level, derived from the
/// coordinates u_j = h_j/e_j of gamma in the incoming basis:
///
///   ell_j * h_j * eprime_j + ellprime_j * e_j = d_j,   0 <= ell_j < e_j/d_j
///   e_level = lcm(e_1,...,e_k) = prod(e_j)/prod(d_j)
///   Lprime  = prod(ellprime_j),  L_j = ell_j * ellprime_{j+1} *...* ellprime_k
///
/// The exact identity Lprime + L(gamma) = 1/e_level holds for every ledger.
struct LevelLedger {
    std::vector<Int> h;         // numerators of u, coprime to e
    std::vector<Int> e;         // positive denominators of u
    std::vector<Int> d;         // d_j = gcd(e_j, eprime_j)
    std::vector<Int> eprime;    // eprime_1 = 1, eprime_j = lcm(e_1..e_{j-1})
    std::vector<Int> ell;       // 0 <= ell_j < e_j/d_j
    std::vector<Int> ellprime;
    Int e_level;                // ramification index contributed by gamma
    Int Lprime;
    std::vector<Int> L;
    std::vector<Rat> gamma_coords; // u itself

    int dim() const { return static_cast<int>(h.size()); }
};

/// Computes the ledger of a nonzero coordinate vector u. Entries of u are
/// read as reduced fractions h_j/e_j with e_j > 0 (Rat is always canonical).
/// allow_zero admits u = 0 (ledger of a Gauss-style level with e = 1).
LevelLedger bezout_ledger(const std::vector<Rat>& u, bool allow_zero = false);

/// L(beta) = sum_j L_j * v_j for beta given by coordinates v in the ledger's
/// incoming basis. Integer-valued on integer coordinates.
Rat L_value(const LevelLedger& lg, const std::vector<Rat>& beta_coords);

/// Basis of a finitely generated subgroup of Q^k: k linearly independent
/// vectors iota_1..iota_k. `level` records which group Gamma_level it spans
/// (-1 for the base choice Gamma_{-1}).
class Basis {
public:
    Basis(std::vector<GroupVec> vecs, int level);
    static Basis standard(int k); // identity basis, level -1

    int dim() const { return static_cast<int>(vecs_.size()); }
    int level() const { return level_; }
    const GroupVec& vec(int j) const { return vecs_[static_cast<size_t>(j)]; }
    const std::vector<GroupVec>& vecs() const { return vecs_; }

    /// Determinant of the coordinate matrix (columns = basis vectors).
    Rat det() const;

    /// Solves sum_j u_j iota_j = g exactly. Throws on singular basis
    /// (cannot happen for a constructed Basis, which checks det != 0).
    std::vector<Rat> coords_of(const GroupVec& g) const;

    /// Membership in the Z-span: coordinates exist and are all integers.
    bool contains(const GroupVec& g) const;

    bool operator==(const Basis& o) const;

private:
    std::vector<GroupVec> vecs_;
    int level_;
};

/// New basis (iota'_1..iota'_k) = (iota_1..iota_k) * Q with Q as in the
/// augmentation lemma: diagonal d_j/e_j, below-diagonal entries
/// q_{m,j} = ell_j * eprime_j * h_m / e_m. Spans <Z-span(B), gamma>.
Basis augment_basis(const Basis& b, const LevelLedger& lg);

/// gamma in Z-span(B)?
bool membership(const Basis& b, const GroupVec& gamma);

} // namespace om
