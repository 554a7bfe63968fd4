#include "om/tower.hpp"

#include <algorithm>
#include <random>

namespace om {

namespace {

using u128 = unsigned __int128;

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

bool TowerElem::operator==(const TowerElem& o) const {
    if (level != o.level) return false;
    if (level == 0) return c == o.c;
    return rep == o.rep;
}

int elem_cmp(const TowerElem& a, const TowerElem& b) {
    if (a.level != b.level) return a.level < b.level ? -1 : 1;
    if (a.level == 0) return a.c < b.c ? -1 : (a.c > b.c ? 1 : 0);
    if (a.rep.size() != b.rep.size()) return a.rep.size() < b.rep.size() ? -1 : 1;
    for (size_t i = 0; i < a.rep.size(); ++i)
        if (int c = elem_cmp(a.rep[i], b.rep[i])) return c;
    return 0;
}

int poly_cmp(const TowerPoly& a, const TowerPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (int c = elem_cmp(a.c[i], b.c[i])) return c;
    return 0;
}

Tower::Tower(const Prime& p) : p_(p.value()) {
    if (p_ >= (1ul << 62)) throw math_error("Tower: p too large for residue arithmetic");
    q_.push_back(p.z());
}

void Tower::check_level(const TowerElem& a, int level) const {
    if (a.level != level) throw math_error("Tower: element level mismatch");
    if (level < 0 || level > levels()) throw math_error("Tower: no such level");
}

TowerElem Tower::zero(int level) const {
    TowerElem e;
    e.level = level;
    return e;
}

TowerElem Tower::one(int level) const { return from_residue(1, level); }

TowerElem Tower::from_residue(long v, int level) const {
    long m = static_cast<long>(p_);
    long c = ((v % m) + m) % m;
    TowerElem e;
    e.level = 0;
    e.c = c;
    return embed(e, level);
}

TowerElem Tower::reduce(int level, std::vector<TowerElem> rep) const {
    // rep: polynomial in the generator with coefficients at level-1; reduce
    // modulo the level's minimal polynomial, then trim.
    const TowerPoly& m = minpolys_[static_cast<size_t>(level - 1)];
    const long f = m.deg();
    while (static_cast<long>(rep.size()) > f) {
        TowerElem top = rep.back();
        rep.pop_back();
        if (top.is_zero()) continue;
        const size_t off = rep.size() - static_cast<size_t>(f);
        for (long j = 0; j < f; ++j)
            rep[off + static_cast<size_t>(j)] =
                sub(rep[off + static_cast<size_t>(j)], mul(top, m.c[static_cast<size_t>(j)]));
    }
    while (!rep.empty() && rep.back().is_zero()) rep.pop_back();
    TowerElem e;
    e.level = level;
    e.rep = std::move(rep);
    return e;
}

TowerElem Tower::gen(int level) const {
    if (level < 1 || level > levels()) throw math_error("Tower::gen: no such level");
    std::vector<TowerElem> rep{zero(level - 1), one(level - 1)};
    return reduce(level, std::move(rep));
}

TowerElem Tower::add(const TowerElem& a, const TowerElem& b) const {
    if (a.level != b.level) throw math_error("Tower::add: level mismatch");
    if (a.level == 0) {
        TowerElem e;
        e.level = 0;
        e.c = static_cast<long>(((u128)a.c + (u128)b.c) % p_);
        return e;
    }
    std::vector<TowerElem> rep(std::max(a.rep.size(), b.rep.size()), zero(a.level - 1));
    for (size_t i = 0; i < a.rep.size(); ++i) rep[i] = a.rep[i];
    for (size_t i = 0; i < b.rep.size(); ++i) rep[i] = add(rep[i], b.rep[i]);
    while (!rep.empty() && rep.back().is_zero()) rep.pop_back();
    TowerElem e;
    e.level = a.level;
    e.rep = std::move(rep);
    return e;
}

TowerElem Tower::neg(const TowerElem& a) const {
    if (a.level == 0) {
        TowerElem e;
        e.level = 0;
        e.c = a.c == 0 ? 0 : static_cast<long>(p_) - a.c;
        return e;
    }
    TowerElem e;
    e.level = a.level;
    e.rep.reserve(a.rep.size());
    for (const auto& r : a.rep) e.rep.push_back(neg(r));
    return e;
}

TowerElem Tower::sub(const TowerElem& a, const TowerElem& b) const { return add(a, neg(b)); }

TowerElem Tower::mul(const TowerElem& a, const TowerElem& b) const {
    if (a.level != b.level) throw math_error("Tower::mul: level mismatch");
    if (a.level == 0) {
        TowerElem e;
        e.level = 0;
        e.c = static_cast<long>((u128)a.c * (u128)b.c % p_);
        return e;
    }
    if (a.is_zero() || b.is_zero()) return zero(a.level);
    std::vector<TowerElem> rep(a.rep.size() + b.rep.size() - 1, zero(a.level - 1));
    for (size_t i = 0; i < a.rep.size(); ++i) {
        if (a.rep[i].is_zero()) continue;
        for (size_t j = 0; j < b.rep.size(); ++j)
            rep[i + j] = add(rep[i + j], mul(a.rep[i], b.rep[j]));
    }
    return reduce(a.level, std::move(rep));
}

TowerElem Tower::inv(const TowerElem& a) const {
    if (a.is_zero()) throw math_error("Tower::inv: division by zero");
    if (a.level == 0) {
        Int inv;
        Int av(a.c);
        if (mpz_invert(inv.get_mpz_t(), av.get_mpz_t(), q_[0].get_mpz_t()) == 0)
            throw math_error("Tower::inv: not invertible");
        TowerElem e;
        e.level = 0;
        e.c = inv.get_si();
        return e;
    }
    // Extended Euclid against the minimal polynomial, one level down.
    const int lo = a.level - 1;
    TowerPoly r0 = minpolys_[static_cast<size_t>(lo)];
    TowerPoly r1 = pmake(lo, a.rep);
    TowerPoly s0 = pconst(lo, zero(lo));
    TowerPoly s1 = pconst(lo, one(lo));
    while (!r1.is_zero()) {
        auto [q, r] = pdivrem(r0, r1);
        TowerPoly s2 = psub(s0, pmul(q, s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if (r0.deg() != 0) throw math_error("Tower::inv: modulus not irreducible");
    TowerPoly res = pscale(s0, inv(r0.c[0]));
    return reduce(a.level, res.c);
}

TowerElem Tower::div(const TowerElem& a, const TowerElem& b) const { return mul(a, inv(b)); }

TowerElem Tower::pow(const TowerElem& a, const Int& n) const {
    if (a.is_zero()) {
        if (n == 0) return one(a.level);
        if (n < 0) throw math_error("Tower::pow: zero to a negative power");
        return zero(a.level);
    }
    // The multiplicative group has order q-1; reduce the exponent first.
    Int m = cardinality(a.level) - 1;
    Int e;
    mpz_mod(e.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    TowerElem r = one(a.level);
    TowerElem b = a;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = mul(r, b);
        if (i + 1 < bits) b = mul(b, b);
    }
    return r;
}

TowerElem Tower::embed(const TowerElem& a, int to_level) const {
    if (to_level < a.level || to_level > levels()) throw math_error("Tower::embed: bad target level");
    TowerElem e = a;
    while (e.level < to_level) {
        TowerElem up;
        up.level = e.level + 1;
        if (!e.is_zero()) up.rep.push_back(std::move(e));
        e = std::move(up);
    }
    return e;
}

TowerElem Tower::norm_down(const TowerElem& a, int to_level) const {
    if (to_level < 0 || to_level > a.level) throw math_error("Tower::norm_down: bad target level");
    TowerElem e = a;
    while (e.level > to_level) {
        if (e.rep.size() > 1)
            throw math_error("Tower::norm_down: element not in sublevel " + std::to_string(to_level));
        TowerElem down = e.rep.empty() ? zero(e.level - 1) : e.rep[0];
        e = std::move(down);
    }
    return e;
}

// --- polynomials ---

TowerPoly Tower::pmake(int level, std::vector<TowerElem> coeffs) const {
    for (const auto& x : coeffs) check_level(x, level);
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    TowerPoly f;
    f.level = level;
    f.c = std::move(coeffs);
    return f;
}

TowerPoly Tower::pconst(int level, const TowerElem& e) const { return pmake(level, {e}); }

TowerPoly Tower::pvar(int level) const { return pmake(level, {zero(level), one(level)}); }

TowerPoly Tower::padd(const TowerPoly& a, const TowerPoly& b) const {
    std::vector<TowerElem> c(std::max(a.c.size(), b.c.size()), zero(a.level));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] = add(c[i], b.c[i]);
    return pmake(a.level, std::move(c));
}

TowerPoly Tower::psub(const TowerPoly& a, const TowerPoly& b) const {
    return padd(a, pscale(b, from_residue(-1, a.level)));
}

TowerPoly Tower::pmul(const TowerPoly& a, const TowerPoly& b) const {
    if (a.is_zero() || b.is_zero()) return pmake(a.level, {});
    std::vector<TowerElem> c(a.c.size() + b.c.size() - 1, zero(a.level));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] = add(c[i + j], mul(a.c[i], b.c[j]));
    }
    return pmake(a.level, std::move(c));
}

TowerPoly Tower::pscale(const TowerPoly& a, const TowerElem& s) const {
    std::vector<TowerElem> c;
    c.reserve(a.c.size());
    for (const auto& x : a.c) c.push_back(mul(x, s));
    return pmake(a.level, std::move(c));
}

std::pair<TowerPoly, TowerPoly> Tower::pdivrem(const TowerPoly& a, const TowerPoly& b) const {
    if (b.is_zero()) throw math_error("Tower::pdivrem: division by zero polynomial");
    if (a.deg() < b.deg()) return {pmake(a.level, {}), a};
    std::vector<TowerElem> rem = a.c;
    std::vector<TowerElem> quo(static_cast<size_t>(a.deg() - b.deg() + 1), zero(a.level));
    TowerElem lcinv = inv(b.c.back());
    for (long i = a.deg(); i >= b.deg(); --i) {
        TowerElem t = mul(rem[static_cast<size_t>(i)], lcinv);
        if (t.is_zero()) continue;
        quo[static_cast<size_t>(i - b.deg())] = t;
        for (long j = 0; j <= b.deg(); ++j)
            rem[static_cast<size_t>(i - b.deg() + j)] =
                sub(rem[static_cast<size_t>(i - b.deg() + j)], mul(t, b.c[static_cast<size_t>(j)]));
    }
    return {pmake(a.level, std::move(quo)), pmake(a.level, std::move(rem))};
}

TowerPoly Tower::pgcd(const TowerPoly& a, const TowerPoly& b) const {
    TowerPoly x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = pdivrem(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return pmonic(x);
}

TowerPoly Tower::pmonic(const TowerPoly& a) const {
    if (a.is_zero()) return a;
    if (a.c.back() == one(a.level)) return a;
    return pscale(a, inv(a.c.back()));
}

TowerPoly Tower::pderiv(const TowerPoly& a) const {
    if (a.c.size() <= 1) return pmake(a.level, {});
    std::vector<TowerElem> c;
    c.reserve(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        c.push_back(mul(a.c[i], from_residue(static_cast<long>(i % p_), a.level)));
    return pmake(a.level, std::move(c));
}

TowerPoly Tower::ppow_mod(const TowerPoly& a, const Int& n, const TowerPoly& mod) const {
    if (n < 0) throw math_error("Tower::ppow_mod: negative exponent");
    TowerPoly r = pconst(a.level, one(a.level));
    TowerPoly b = pdivrem(a, mod).second;
    if (n == 0) return r;
    const size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = pdivrem(pmul(r, b), mod).second;
        if (i + 1 < bits) b = pdivrem(pmul(b, b), mod).second;
    }
    return r;
}

TowerElem Tower::peval(const TowerPoly& a, const TowerElem& x) const {
    TowerElem r = zero(a.level);
    for (size_t i = a.c.size(); i-- > 0;) r = add(mul(r, x), a.c[i]);
    return r;
}

TowerPoly Tower::pcompose_shift(const TowerPoly& a, const TowerElem& eta) const {
    TowerPoly shift = pmake(a.level, {eta, one(a.level)}); // y + eta
    TowerPoly r = pmake(a.level, {});
    for (size_t i = a.c.size(); i-- > 0;) r = padd(pmul(r, shift), pconst(a.level, a.c[i]));
    return r;
}

TowerElem Tower::eval_at_gen(const TowerPoly& a) const {
    if (a.level + 1 > levels()) throw math_error("Tower::eval_at_gen: level not built");
    TowerElem e;
    e.level = a.level + 1;
    e.rep = a.c;
    return reduce(a.level + 1, std::move(e.rep));
}

TowerElem Tower::pth_root(const TowerElem& a) const {
    // x -> x^p is an automorphism; its inverse is x -> x^(q/p).
    Int e = cardinality(a.level) / Int(p_);
    return pow(a, e);
}

Tower Tower::extend(const TowerPoly& m) const {
    if (m.level != levels()) throw math_error("Tower::extend: minimal polynomial at wrong level");
    if (m.deg() < 1) throw math_error("Tower::extend: constant minimal polynomial");
    if (!(m.c.back() == one(m.level))) throw math_error("Tower::extend: minimal polynomial not monic");
    if (m.deg() > 1) {
        TowerFactorization fz = factor(m);
        if (fz.factors.size() != 1 || fz.factors[0].multiplicity != 1)
            throw math_error("Tower::extend: reducible minimal polynomial, factor " +
                             poly_str(fz.factors[0].poly));
    }
    Tower t(*this);
    t.minpolys_.push_back(m);
    t.f_.push_back(m.deg());
    Int q = t.q_.back();
    Int qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(m.deg()));
    t.q_.push_back(qn);
    return t;
}

Tower Tower::truncate(int nlevels) const {
    if (nlevels < 0 || nlevels > levels()) throw math_error("Tower::truncate: bad level count");
    Tower t(*this);
    t.minpolys_.resize(static_cast<size_t>(nlevels));
    t.f_.resize(static_cast<size_t>(nlevels));
    t.q_.resize(static_cast<size_t>(nlevels) + 1);
    return t;
}

// --- factorization ---

namespace {

struct SqfPart {
    TowerPoly poly;
    int mult;
};

} // namespace

TowerFactorization Tower::factor(const TowerPoly& f, std::uint64_t seed_mix) const {
    if (f.deg() < 1) throw math_error("Tower::factor: need degree >= 1");
    const int level = f.level;

    std::string fingerprint = std::to_string(p_) + "#" + std::to_string(seed_mix) + "#";
    for (const auto& m : minpolys_) fingerprint += poly_str(m) + ";";
    fingerprint += "|" + poly_str(f);
    std::mt19937_64 rng(fnv64(fingerprint));

    TowerFactorization out;
    out.lead = f.c.back();
    TowerPoly g = pmonic(f);

    // squarefree decomposition, characteristic p
    std::vector<SqfPart> sqf;
    auto pth_root_poly = [&](const TowerPoly& a) {
        std::vector<TowerElem> c;
        for (size_t i = 0; i < a.c.size(); i += p_) c.push_back(pth_root(a.c[i]));
        return pmake(level, std::move(c));
    };
    std::vector<std::pair<TowerPoly, int>> work{{g, 1}};
    while (!work.empty()) {
        auto [h, m] = work.back();
        work.pop_back();
        if (h.deg() < 1) continue;
        TowerPoly hp = pderiv(h);
        if (hp.is_zero()) {
            work.push_back({pth_root_poly(h), m * static_cast<int>(p_)});
            continue;
        }
        TowerPoly c = pgcd(h, hp);
        TowerPoly w = pdivrem(h, c).first;
        int i = 1;
        while (w.deg() > 0) {
            TowerPoly y = pgcd(w, c);
            TowerPoly z = pdivrem(w, y).first;
            if (z.deg() > 0) sqf.push_back({z, m * i});
            ++i;
            w = y;
            c = pdivrem(c, y).first;
        }
        if (c.deg() > 0) work.push_back({pth_root_poly(c), m * static_cast<int>(p_)});
    }

    const Int q = cardinality(level);
    long n_exp = 1; // q = p^n_exp
    for (int i = 0; i < level; ++i) n_exp *= f_[static_cast<size_t>(i)];

    auto random_nonconst_poly = [&](long degbound) {
        // random polynomial of degree in [1, degbound]
        while (true) {
            long d = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(degbound));
            std::vector<TowerElem> c;
            for (long i = 0; i <= d; ++i) {
                TowerElem e = zero(level);
                // random element: random coordinates over F_p in the nested rep
                std::function<TowerElem(int)> rnd = [&](int lv) -> TowerElem {
                    if (lv == 0) return from_residue(static_cast<long>(rng() % p_), 0);
                    std::vector<TowerElem> rep;
                    for (long t = 0; t < f_[static_cast<size_t>(lv - 1)]; ++t) rep.push_back(rnd(lv - 1));
                    while (!rep.empty() && rep.back().is_zero()) rep.pop_back();
                    TowerElem x;
                    x.level = lv;
                    x.rep = std::move(rep);
                    return x;
                };
                e = rnd(level);
                c.push_back(e);
            }
            TowerPoly a = pmake(level, std::move(c));
            if (a.deg() >= 1) return a;
        }
    };

    // equal-degree splitting (Cantor-Zassenhaus; trace construction for p = 2)
    std::function<void(const TowerPoly&, long, std::vector<TowerPoly>&)> edf =
        [&](const TowerPoly& h, long d, std::vector<TowerPoly>& res) {
            if (h.deg() == 0) return;
            if (h.deg() == d) {
                res.push_back(h);
                return;
            }
            while (true) {
                TowerPoly a = random_nonconst_poly(h.deg() - 1);
                TowerPoly t;
                if (p_ == 2) {
                    TowerPoly cur = pdivrem(a, h).second;
                    TowerPoly tr = cur;
                    for (long i = 1; i < n_exp * d; ++i) {
                        cur = pdivrem(pmul(cur, cur), h).second;
                        tr = padd(tr, cur);
                    }
                    t = pgcd(tr, h);
                } else {
                    Int qd;
                    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
                    TowerPoly b = ppow_mod(a, (qd - 1) / 2, h);
                    t = pgcd(psub(b, pconst(level, one(level))), h);
                }
                if (t.deg() > 0 && t.deg() < h.deg()) {
                    edf(t, d, res);
                    edf(pdivrem(h, t).first, d, res);
                    return;
                }
            }
        };

    for (const auto& part : sqf) {
        // distinct-degree splitting
        TowerPoly rem = part.poly;
        TowerPoly x = pvar(level);
        TowerPoly h = pdivrem(x, rem).second;
        long d = 0;
        while (rem.deg() > 0 && 2 * (d + 1) <= rem.deg()) {
            ++d;
            h = ppow_mod(h, q, rem);
            TowerPoly gd = pgcd(psub(h, x), rem);
            if (gd.deg() > 0) {
                std::vector<TowerPoly> irr;
                edf(gd, d, irr);
                for (auto& ir : irr) out.factors.push_back({ir, part.mult});
                rem = pdivrem(rem, gd).first;
                h = pdivrem(h, rem).second;
            }
        }
        if (rem.deg() > 0) out.factors.push_back({rem, part.mult});
    }

    std::sort(out.factors.begin(), out.factors.end(),
              [](const TowerFactor& a, const TowerFactor& b) { return poly_cmp(a.poly, b.poly) < 0; });
    return out;
}

bool Tower::is_irreducible(const TowerPoly& f, std::uint64_t seed_mix) const {
    if (f.deg() == 1) return true;
    TowerFactorization fz = factor(f, seed_mix);
    return fz.factors.size() == 1 && fz.factors[0].multiplicity == 1;
}

// --- text forms ---

std::string Tower::elem_str(const TowerElem& a) const {
    if (a.level == 0) return std::to_string(a.c);
    if (a.is_zero()) return "0";
    const std::string var = "z" + std::to_string(a.level - 1);
    std::string out;
    for (size_t i = a.rep.size(); i-- > 0;) {
        const TowerElem& coef = a.rep[i];
        if (coef.is_zero()) continue;
        std::string cs = elem_str(coef);
        bool needs_parens = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += needs_parens ? "(" + cs + ")" : cs;
        } else {
            if (cs != "1") out += (needs_parens ? "(" + cs + ")" : cs) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::string Tower::poly_str(const TowerPoly& f, const std::string& var) const {
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t i = f.c.size(); i-- > 0;) {
        const TowerElem& coef = f.c[i];
        if (coef.is_zero()) continue;
        std::string cs = elem_str(coef);
        bool needs_parens = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += needs_parens ? "(" + cs + ")" : cs;
        } else {
            if (cs != "1") out += (needs_parens ? "(" + cs + ")" : cs) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace om
