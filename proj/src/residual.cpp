#include "om/residual.hpp"

namespace om {

namespace {

Rat rat_pow(const Rat& base, const Int& e) {
    if (base == 0) throw math_error("rat_pow: zero base");
    Int a = abs(e);
    if (!a.fits_ulong_p()) throw math_error("rat_pow: exponent too large");
    Rat num;
    mpz_pow_ui(num.get_num().get_mpz_t(), base.get_num().get_mpz_t(), a.get_ui());
    mpz_pow_ui(num.get_den().get_mpz_t(), base.get_den().get_mpz_t(), a.get_ui());
    num.canonicalize();
    if (e < 0) return Rat(1) / num;
    return num;
}

Int require_int(const Rat& q, const char* what) {
    if (!is_integer(q)) throw math_error(std::string(what) + ": fractional value " + rat_str(q) +
                                         " (unattainable)");
    return q.get_num();
}

} // namespace

TowerElem coeff_residual(const Chain& c, const Poly& a) {
    if (a.is_zero()) throw math_error("coeff_residual: zero polynomial");
    const int r = c.depth();
    if (a.deg() >= c.top().m) throw math_error("coeff_residual: deg(a) >= deg(phi_r)");
    if (r == 0) {
        // a is a constant of K; reduce a / pi_0^{v(a)} in the residue field.
        const Rat& a0 = a[0];
        auto v = vp(a0, c.prime());
        Rat unit = a0 / rat_pow(c.uniformizer(), *v);
        return c.tower().from_residue(residue(unit, c.prime()), 0);
    }
    ResidualResult rr = residual(c.prefix(r - 1), a);
    const Level& lw = c.level(r - 1);
    Rat lu = L_value(lw.ledger, lw.basis_in.coords_of(rr.u));
    Int expnt = lw.ledger.Lprime * rr.s - require_int(lu, "coeff_residual: L(u)");
    TowerElem tw = c.tower().pow(c.tower().gen(r), expnt);
    TowerElem val = c.tower().eval_at_gen(rr.poly);
    return c.tower().mul(tw, val);
}

ResidualResult residual(const Chain& c, const Poly& f) {
    if (f.is_zero()) throw math_error("residual: zero polynomial");
    const int r = c.depth();
    const Level& t = c.top();
    Polygon n = c.newton(f);
    Segment comp = lambda_component(n, t.gamma);
    const Int s0 = comp.left.s;
    const Int s1 = comp.right.s;
    const GroupVec u0 = comp.left.u;
    const Int& e = t.e();
    Int width = s1 - s0;
    if (width % e != 0)
        throw math_error("residual: component width not divisible by e (unattainable value)");
    const long d = static_cast<long>(Int(width / e).get_si());
    GroupVec h = t.h();

    std::vector<Poly> exp = c.expansion(r, f);
    std::vector<TowerElem> coeffs;
    coeffs.reserve(static_cast<size_t>(d) + 1);
    for (long j = 0; j <= d; ++j) {
        Int sj = s0 + Int(j) * e;
        GroupVec uj = u0 - h * Rat(static_cast<unsigned long>(j));
        const Poly& a = exp[static_cast<size_t>(sj.get_si())];
        if (a.is_zero()) {
            coeffs.push_back(c.tower().zero(r));
            continue;
        }
        auto av = c.value_at_level(r - 1, a);
        auto cmp = lex_cmp(*av, uj);
        if (cmp == std::strong_ordering::less)
            throw math_error("residual: internal: cloud point below the polygon");
        if (cmp == std::strong_ordering::greater) {
            coeffs.push_back(c.tower().zero(r)); // strictly above the polygon
            continue;
        }
        coeffs.push_back(coeff_residual(c, a));
    }
    TowerPoly poly = c.tower().pmake(r, std::move(coeffs));
    if (poly.deg() != d || poly.c.empty() || poly.c[0].is_zero())
        throw math_error("residual: internal: endpoint coefficient vanished");
    return ResidualResult{s0, s1, u0, std::move(poly), d};
}

TowerElem epsilon(const Chain& c, int i, const Poly& a) {
    const int r = c.depth();
    if (i < 0 || i >= r) throw math_error("epsilon: level out of range");
    if (a.is_zero()) throw math_error("epsilon: zero polynomial");
    if (a.deg() >= c.level(i + 1).m) throw math_error("epsilon: deg(a) >= m_{i+1}");
    ResidualResult rr = residual(c.prefix(i), a);
    const Level& lv = c.level(i);
    Rat lu = L_value(lv.ledger, lv.basis_in.coords_of(rr.u));
    Int expnt = lv.ledger.Lprime * rr.s - require_int(lu, "epsilon: L(u)");
    return c.tower().pow(c.tower().gen(i + 1), expnt);
}

TowerElem residual_const(const Chain& c, const Rat& a) {
    if (a == 0) throw math_error("residual_const: zero constant");
    const int r = c.depth();
    auto v = vp(a, c.prime());
    GroupVec alpha = GroupVec::scalar(Rat(*v), c.dim());
    Rat unit = a / rat_pow(c.uniformizer(), *v);
    TowerElem out = c.tower().from_residue(residue(unit, c.prime()), r);
    for (int i = 0; i < r; ++i) {
        const Level& lv = c.level(i);
        Rat la = L_value(lv.ledger, lv.basis_in.coords_of(alpha));
        Int li = require_int(la, "residual_const: L(alpha)");
        TowerElem zi = c.tower().embed(c.tower().gen(i + 1), r);
        out = c.tower().mul(out, c.tower().pow(zi, -li));
    }
    return out;
}

Poly lift_element(const Chain& c, const TowerElem& xi, const GroupVec& u) {
    if (xi.is_zero()) throw math_error("lift_element: xi = 0");
    const int r = c.depth();
    if (xi.level != r) throw math_error("lift_element: xi at wrong tower level");
    if (u.dim() != c.dim()) throw math_error("lift_element: dimension mismatch");
    if (r == 0) {
        if (!c.top().basis_in.contains(u)) throw math_error("lift_element: u outside span");
        for (int j = 1; j < u.dim(); ++j)
            if (u[j] != 0)
                throw math_error("lift_element: no uniformizer realizes synthetic coordinates");
        Int v = require_int(u[0], "lift_element: v(a)");
        return Poly::constant(Rat(xi.c) * rat_pow(c.uniformizer(), v));
    }
    const Level& lw = c.level(r - 1);
    const GroupVec& gamma = lw.gamma;
    GroupVec h = lw.h();
    long e = static_cast<long>(lw.e().get_si());
    long s = -1;
    GroupVec uprime = u;
    for (long cand = 0; cand < e; ++cand) {
        GroupVec w = u - gamma * Rat(static_cast<unsigned long>(cand));
        if (lw.basis_in.contains(w)) {
            s = cand;
            uprime = w;
            break;
        }
    }
    if (s < 0) throw math_error("lift_element: u outside span");

    Rat lu = L_value(lw.ledger, lw.basis_in.coords_of(uprime));
    Int w = lw.ledger.Lprime * Int(s) - require_int(lu, "lift_element: L(u)");
    TowerElem eta = c.tower().mul(c.tower().pow(c.tower().gen(r), -w), xi);

    // eta written in the z_{r-1}-power basis; strip a leading y-power so the
    // residual polynomial being inverted has nonzero constant term.
    const std::vector<TowerElem>& rep = eta.rep;
    size_t tshift = 0;
    while (tshift < rep.size() && rep[tshift].is_zero()) ++tshift;
    if (tshift == rep.size()) throw math_error("lift_element: internal: eta = 0");
    s += static_cast<long>(tshift) * e;
    uprime = uprime - h * Rat(static_cast<unsigned long>(tshift));

    Chain cp = c.prefix(r - 1);
    Poly out;
    for (size_t j = tshift; j < rep.size(); ++j) {
        if (rep[j].is_zero()) continue;
        unsigned long jj = static_cast<unsigned long>(j - tshift);
        Poly b = lift_element(cp, rep[j], uprime - h * Rat(jj));
        out = out + b * lw.phi.pow(static_cast<unsigned long>(s) + jj * static_cast<unsigned long>(e));
    }
    return out;
}

Poly lift_poly(const Chain& c, const TowerPoly& psi, const Int& s, const GroupVec& u) {
    if (psi.is_zero()) throw math_error("lift_poly: psi = 0");
    if (psi.level != c.depth()) throw math_error("lift_poly: psi at wrong tower level");
    if (psi.c[0].is_zero()) throw math_error("lift_poly: psi(0) = 0");
    if (s < 0) throw math_error("lift_poly: s must be nonnegative");
    const Level& t = c.top();
    GroupVec h = t.h();
    const Int& e = t.e();
    Poly out;
    for (size_t j = 0; j < psi.c.size(); ++j) {
        if (psi.c[j].is_zero()) continue;
        Poly b = lift_element(c, psi.c[j], u - h * Rat(static_cast<unsigned long>(j)));
        Int expnt = s + Int(static_cast<unsigned long>(j)) * e;
        out = out + b * t.phi.pow(expnt.get_ui());
    }
    return out;
}

Poly lift_key(const Chain& c, const TowerPoly& psi) {
    if (psi.deg() < 1) throw math_error("lift_key: psi must be non-constant");
    if (!(psi.c.back() == c.tower().one(psi.level))) throw math_error("lift_key: psi must be monic");
    if (psi.c[0].is_zero())
        throw math_error("lift_key: psi(0) = 0 (psi = y is not liftable)");
    if (!c.tower().is_irreducible(psi))
        throw math_error("lift_key: psi is reducible over kappa_r");
    const Level& t = c.top();
    long d = psi.deg();
    Poly phi = lift_poly(c, psi, Int(0), t.h() * Rat(static_cast<unsigned long>(d)));
    if (!phi.is_monic() || Int(phi.deg()) != t.e() * Int(t.m) * Int(d))
        throw math_error("lift_key: internal: lift not monic of degree e*m*deg(psi)");
    return phi;
}

} // namespace om
