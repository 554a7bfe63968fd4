#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "om/base_field.hpp"
#include "om/newton.hpp"
#include "om/ordered_group.hpp"
#include "om/tower.hpp"

namespace om {

/// One augmentation level (phi_i, gamma_i) of a MacLane chain, with the
/// Bezout ledger of gamma_i over the incoming basis and, once the next level
/// exists, the residual minimal polynomial R_i(phi_{i+1}) and its degree f_i.
struct Level {
    Poly phi;
    GroupVec gamma;
    long m; // deg(phi)
    LevelLedger ledger;
    Basis basis_in;
    Basis basis_out;
    std::optional<TowerPoly> resminpoly;
    std::optional<long> f;

    const Int& e() const { return ledger.e_level; }
    GroupVec h() const { return gamma * Rat(ledger.e_level); }
};

struct KeyCheck {
    bool ok = false;
    int kase = 0; // 1: same degree, equivalent to phi_r; 2: residual test
    std::string reason;
};

struct ChainInvariants {
    std::vector<Int> e_list;   // e_i per level
    std::vector<long> f_list;  // f_i per level that has a successor
    Int ramification;          // prod of all e_i = e(phi) of a prospective next key
    Int residual_degree;       // prod of f_i = f(phi)/deg(psi) of such a key
};

/// An inductive valuation on Q[x] extending v_p, represented by a MacLane
/// chain of augmentations over a depth-zero valuation. Immutable; augment
/// and refine return new chains sharing prefix levels structurally.
/// phi-expansions and level values are memoized per chain.
class Chain {
public:
    /// mu_{x+a,gamma}: the depth-zero valuation with phi_0 = x + a. The Gauss
    /// valuation is a = 0, gamma = 0. For group dimension k > 1 a basis of
    /// Gamma_{-1} must be supplied; the shipped valued field is rank one.
    /// `uniformizer` (default p) enters only residual computations.
    static Chain depth_zero(const Prime& p, const Rat& a, const GroupVec& gamma,
                            std::optional<Basis> basis_m1 = std::nullopt,
                            std::optional<Rat> uniformizer = std::nullopt);
    static Chain gauss(const Prime& p);

    int depth() const { return static_cast<int>(lv_.size()) - 1; } // r
    int dim() const;                                               // group dimension k
    const Prime& prime() const { return p_; }
    const Rat& uniformizer() const { return unif_; }
    const Level& level(int i) const { return *lv_[static_cast<size_t>(i)]; }
    const Level& top() const { return *lv_.back(); }
    const Tower& tower() const { return *tower_; }

    /// Truncation to levels 0..r (a MacLane chain of the intermediate
    /// valuation mu_r). Shares levels and the value cache.
    Chain prefix(int r) const;

    /// v_p embedded into the first group coordinate; nullopt for 0.
    std::optional<GroupVec> base_value(const Rat& a) const;

    /// mu(f); nullopt encodes +infinity (f = 0).
    std::optional<GroupVec> mu(const Poly& f) const;
    /// mu(f) for nonzero f.
    GroupVec mu_fin(const Poly& f) const;
    /// Value of f under the intermediate valuation mu_i (i = -1 is v itself,
    /// defined only for constants).
    std::optional<GroupVec> value_at_level(int i, const Poly& f) const;
    /// Cached phi_i-expansion of f.
    std::vector<Poly> expansion(int i, const Poly& f) const;

    /// N_r(f): Newton polygon of the phi_r-expansion with mu_{r-1} values.
    Polygon newton(const Poly& f) const;
    /// Same cloud for a candidate key polynomial phi (values under mu_r).
    Polygon newton_wrt(const Poly& phi, const Poly& f) const;

    KeyCheck is_key(const Poly& phi) const;

    /// [mu; phi, gamma]: appends a level. phi must be a key polynomial of
    /// degree > deg(phi_r); same-degree keys must go through refine, keeping
    /// stored chains optimal.
    Chain augment(const Poly& phi, const GroupVec& gamma) const;

    /// Replaces the top level (phi_r, gamma_r) by (phi_star, gamma_star) over
    /// the same prefix; requires deg(phi_star) = m_r,
    /// mu_{r-1}(phi_star - phi_r) >= gamma_r and gamma_star > gamma_r.
    Chain refine(const Poly& phi_star, const GroupVec& gamma_star) const;

    bool optimal() const; // deg(phi_0) < ... < deg(phi_r)

    ChainInvariants invariants() const;

private:
    struct Memo {
        std::mutex mtx;
        std::map<std::pair<int, Poly>, std::optional<GroupVec>> values;
        std::map<std::pair<int, Poly>, std::vector<Poly>> expansions;
    };

    Prime p_;
    Rat unif_;
    std::vector<std::shared_ptr<const Level>> lv_;
    std::shared_ptr<const Tower> tower_;
    std::shared_ptr<Memo> memo_;

    Chain(Prime p, Rat unif) : p_(std::move(p)), unif_(std::move(unif)) {}
    std::optional<GroupVec> value_uncached(int i, const Poly& f) const;
};

/// Equality of the represented valuations, decided level by level on optimal
/// chains: equal key degrees, equal gamma_i and mu_{i-1}(phi_i - phi*_i) >=
/// gamma_i.
bool chains_equal(const Chain& a, const Chain& b);

} // namespace om
