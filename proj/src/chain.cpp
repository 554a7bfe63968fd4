#include "om/chain.hpp"

#include <algorithm>

#include "om/residual.hpp"

namespace om {

Chain Chain::depth_zero(const Prime& p, const Rat& a, const GroupVec& gamma,
                        std::optional<Basis> basis_m1, std::optional<Rat> uniformizer) {
    const int k = gamma.dim();
    Rat unif = uniformizer ? *uniformizer : Rat(p.z());
    auto uv = vp(unif, p);
    if (!uv || *uv != 1) throw math_error("depth_zero: uniformizer must have v_p = 1");
    Basis b = basis_m1 ? *basis_m1 : [&] {
        if (k != 1)
            throw math_error("depth_zero: a basis of Gamma_{-1} is required for group dimension > 1");
        return Basis::standard(1);
    }();
    if (b.dim() != k) throw math_error("depth_zero: basis dimension mismatch");

    Chain c(p, unif);
    c.tower_ = std::make_shared<const Tower>(Tower(p));
    c.memo_ = std::make_shared<Memo>();
    LevelLedger lg = bezout_ledger(b.coords_of(gamma), /*allow_zero=*/true);
    Basis out = augment_basis(b, lg);
    Level lv{Poly(std::vector<Rat>{a, Rat(1)}), gamma, 1, std::move(lg), std::move(b), std::move(out),
             std::nullopt, std::nullopt};
    c.lv_.push_back(std::make_shared<const Level>(std::move(lv)));
    return c;
}

Chain Chain::gauss(const Prime& p) { return depth_zero(p, Rat(0), GroupVec::zero(1)); }

int Chain::dim() const { return lv_[0]->gamma.dim(); }

Chain Chain::prefix(int r) const {
    if (r < 0 || r > depth()) throw math_error("Chain::prefix: bad depth");
    if (r == depth()) return *this;
    Chain c(p_, unif_);
    c.lv_.assign(lv_.begin(), lv_.begin() + r + 1);
    if (c.lv_.back()->resminpoly) {
        Level t = *c.lv_.back();
        t.resminpoly.reset();
        t.f.reset();
        c.lv_.back() = std::make_shared<const Level>(std::move(t));
    }
    c.tower_ = std::make_shared<const Tower>(tower_->truncate(r));
    c.memo_ = memo_; // levels 0..r are identical, cached values stay valid
    return c;
}

std::optional<GroupVec> Chain::base_value(const Rat& a) const {
    auto v = vp(a, p_);
    if (!v) return std::nullopt;
    return GroupVec::scalar(Rat(*v), dim());
}

std::vector<Poly> Chain::expansion(int i, const Poly& f) const {
    const Poly& phi = level(i).phi;
    {
        std::lock_guard<std::mutex> lock(memo_->mtx);
        auto it = memo_->expansions.find({i, f});
        if (it != memo_->expansions.end()) return it->second;
    }
    std::vector<Poly> e = phi_expand(f, phi);
    std::lock_guard<std::mutex> lock(memo_->mtx);
    memo_->expansions.emplace(std::make_pair(i, f), e);
    return e;
}

std::optional<GroupVec> Chain::value_uncached(int i, const Poly& f) const {
    if (f.is_zero()) return std::nullopt;
    if (i == -1) {
        if (f.deg() > 0) throw math_error("value_at_level(-1): non-constant polynomial");
        return base_value(f[0]);
    }
    const GroupVec& gamma = level(i).gamma;
    std::vector<Poly> exp = expansion(i, f);
    std::optional<GroupVec> best;
    for (size_t s = 0; s < exp.size(); ++s) {
        if (exp[s].is_zero()) continue;
        auto v = value_at_level(i - 1, exp[s]);
        GroupVec val = *v + gamma * Rat(static_cast<unsigned long>(s));
        if (!best || lex_cmp(val, *best) == std::strong_ordering::less) best = val;
    }
    return best;
}

std::optional<GroupVec> Chain::value_at_level(int i, const Poly& f) const {
    if (i < -1 || i > depth()) throw math_error("value_at_level: bad level");
    if (f.is_zero()) return std::nullopt;
    if (i >= 0) {
        std::lock_guard<std::mutex> lock(memo_->mtx);
        auto it = memo_->values.find({i, f});
        if (it != memo_->values.end()) return it->second;
    }
    auto v = value_uncached(i, f);
    if (i >= 0) {
        std::lock_guard<std::mutex> lock(memo_->mtx);
        memo_->values.emplace(std::make_pair(i, f), v);
    }
    return v;
}

std::optional<GroupVec> Chain::mu(const Poly& f) const { return value_at_level(depth(), f); }

GroupVec Chain::mu_fin(const Poly& f) const {
    auto v = mu(f);
    if (!v) throw math_error("mu: infinite value (zero polynomial)");
    return *v;
}

Polygon Chain::newton(const Poly& f) const {
    if (f.is_zero()) throw math_error("newton: zero polynomial");
    const int r = depth();
    std::vector<Poly> exp = expansion(r, f);
    std::vector<CloudPoint> pts;
    for (size_t s = 0; s < exp.size(); ++s)
        pts.push_back(CloudPoint{Int(static_cast<unsigned long>(s)),
                                 exp[s].is_zero() ? std::nullopt : value_at_level(r - 1, exp[s])});
    return lower_hull(Cloud(std::move(pts)));
}

Polygon Chain::newton_wrt(const Poly& phi, const Poly& f) const {
    if (f.is_zero()) throw math_error("newton_wrt: zero polynomial");
    if (!phi.is_monic() || phi.deg() < 1) throw math_error("newton_wrt: phi must be monic, non-constant");
    std::vector<Poly> exp = phi_expand(f, phi);
    std::vector<CloudPoint> pts;
    for (size_t s = 0; s < exp.size(); ++s)
        pts.push_back(CloudPoint{Int(static_cast<unsigned long>(s)),
                                 exp[s].is_zero() ? std::nullopt : mu(exp[s])});
    return lower_hull(Cloud(std::move(pts)));
}

KeyCheck Chain::is_key(const Poly& phi) const {
    if (phi.deg() < 1) throw math_error("is_key: phi must be non-constant");
    if (!phi.is_monic()) throw math_error("is_key: phi must be monic");
    const Level& t = top();
    if (phi.deg() == t.m) {
        if (phi == t.phi) return {true, 1, ""};
        auto d = mu(phi - t.phi);
        if (!d || lex_cmp(*d, t.gamma) == std::strong_ordering::greater) return {true, 1, ""};
    }
    ResidualResult rr = residual(*this, phi);
    if (rr.s != 0) return {false, 0, "phi_r-divisible: s_r(phi) = " + rr.s.get_str()};
    Int want = t.e() * Int(t.m) * Int(rr.d);
    if (Int(phi.deg()) != want)
        return {false, 0, "deg(phi) = " + std::to_string(phi.deg()) + " != e*m*deg(R) = " + want.get_str()};
    if (!tower().is_irreducible(rr.poly))
        return {false, 0, "residual polynomial " + tower().poly_str(rr.poly) + " is reducible"};
    // Consequence of the characterization: the polygon is one-sided of slope -gamma_r.
    if (!is_one_sided(newton(phi), t.gamma))
        throw math_error("is_key: internal: residual test passed but polygon not one-sided");
    return {true, 2, ""};
}

Chain Chain::augment(const Poly& phi, const GroupVec& gamma) const {
    if (gamma.dim() != dim()) throw math_error("augment: gamma dimension mismatch");
    KeyCheck kc = is_key(phi);
    if (!kc.ok) throw math_error("augment: not a key polynomial: " + kc.reason);
    const Level& t = top();
    GroupVec cur = mu_fin(phi);
    if (!(lex_cmp(gamma, cur) == std::strong_ordering::greater))
        throw math_error("augment: gamma must exceed mu(phi)");
    if (phi.deg() == t.m) {
        // Same degree: MacLane condition phi !~ phi_r fails or the chain
        // would lose optimality; both cases are refinements.
        throw math_error("augment: deg(phi) = deg(phi_r); use refine");
    }
    ResidualResult rr = residual(*this, phi); // irreducible by the key check
    if (rr.s != 0) throw math_error("augment: internal: s_r(phi) != 0");

    const Basis& bin = t.basis_out;
    LevelLedger lg = bezout_ledger(bin.coords_of(gamma), /*allow_zero=*/true);
    if (!bin.contains(gamma * Rat(lg.e_level)))
        throw math_error("augment: h = e*gamma outside the incoming span");
    Basis bout = augment_basis(bin, lg);

    Chain c(p_, unif_);
    c.lv_.assign(lv_.begin(), lv_.end());
    Level old_top = *c.lv_.back();
    old_top.resminpoly = rr.poly;
    old_top.f = rr.d;
    c.lv_.back() = std::make_shared<const Level>(std::move(old_top));
    Level nl{phi, gamma, phi.deg(), std::move(lg), bin, std::move(bout), std::nullopt, std::nullopt};
    c.lv_.push_back(std::make_shared<const Level>(std::move(nl)));
    c.tower_ = std::make_shared<const Tower>(tower_->extend(rr.poly));
    c.memo_ = std::make_shared<Memo>();
    return c;
}

Chain Chain::refine(const Poly& phi_star, const GroupVec& gamma_star) const {
    if (gamma_star.dim() != dim()) throw math_error("refine: gamma dimension mismatch");
    const Level& t = top();
    if (phi_star.deg() != t.m)
        throw math_error("refine: deg(phi_star) = " + std::to_string(phi_star.deg()) +
                         " != deg(phi_r) = " + std::to_string(t.m));
    if (!phi_star.is_monic()) throw math_error("refine: phi_star must be monic");
    Poly diff = phi_star - t.phi;
    if (!diff.is_zero()) {
        auto dv = value_at_level(depth() - 1, diff);
        if (!dv || !(lex_cmp(*dv, t.gamma) != std::strong_ordering::less))
            throw math_error("refine: mu_{r-1}(phi_star - phi_r) < gamma_r");
    }
    if (!(lex_cmp(gamma_star, t.gamma) == std::strong_ordering::greater))
        throw math_error("refine: gamma_star must exceed gamma_r");

    const Basis& bin = t.basis_in;
    LevelLedger lg = bezout_ledger(bin.coords_of(gamma_star), /*allow_zero=*/true);
    Basis bout = augment_basis(bin, lg);

    Chain c(p_, unif_);
    c.lv_.assign(lv_.begin(), lv_.end() - 1);
    Level nl{phi_star, gamma_star, t.m, std::move(lg), bin, std::move(bout), std::nullopt, std::nullopt};
    c.lv_.push_back(std::make_shared<const Level>(std::move(nl)));
    c.tower_ = tower_;
    c.memo_ = std::make_shared<Memo>();
    return c;
}

bool Chain::optimal() const {
    for (int i = 1; i <= depth(); ++i)
        if (!(level(i - 1).m < level(i).m)) return false;
    return true;
}

ChainInvariants Chain::invariants() const {
    ChainInvariants inv;
    inv.ramification = 1;
    inv.residual_degree = 1;
    for (int i = 0; i <= depth(); ++i) {
        inv.e_list.push_back(level(i).e());
        inv.ramification *= level(i).e();
        if (level(i).f) {
            inv.f_list.push_back(*level(i).f);
            inv.residual_degree *= Int(*level(i).f);
        }
    }
    return inv;
}

bool chains_equal(const Chain& a, const Chain& b) {
    if (!a.optimal() || !b.optimal()) throw math_error("chains_equal: both chains must be optimal");
    if (!(a.prime() == b.prime())) return false;
    if (a.dim() != b.dim() || a.depth() != b.depth()) return false;
    for (int i = 0; i <= a.depth(); ++i) {
        const Level& x = a.level(i);
        const Level& y = b.level(i);
        if (x.m != y.m || !(x.gamma == y.gamma)) return false;
        Poly diff = x.phi - y.phi;
        if (diff.is_zero()) continue;
        auto dv = a.value_at_level(i - 1, diff);
        if (!dv || lex_cmp(*dv, x.gamma) == std::strong_ordering::less) return false;
    }
    return true;
}

} // namespace om
