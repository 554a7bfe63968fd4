#include "om/factorizer.hpp"

#include <algorithm>

namespace om {

namespace {

struct Driver {
    const Poly& f;
    const Prime& p;
    int max_depth;
    std::uint64_t seed;
    OMTree& tree;

    std::string gammas_str(const Chain& c) const {
        std::string s = "[";
        for (int i = 0; i <= c.depth(); ++i) {
            if (i) s += ",";
            s += rat_str(c.level(i).gamma[0]);
        }
        return s + "]";
    }

    void leaf_residual(const Chain& c, const TowerPoly& psi) {
        ChainInvariants inv = c.invariants();
        OMLeaf lf{c,
                  c.top().gamma,
                  psi,
                  false,
                  lift_key(c, psi),
                  c.mu_fin(f),
                  inv.ramification,
                  static_cast<long>(Int(inv.residual_degree * Int(psi.deg())).get_si()),
                  c.depth()};
        tree.trace.push_back("leaf gammas=" + gammas_str(c) + " psi=" + c.tower().poly_str(psi) +
                             " e=" + lf.e.get_str() + " f=" + std::to_string(lf.fdeg));
        tree.leaves.push_back(std::move(lf));
    }

    void leaf_exact(const Chain& c, const Poly& phi) {
        ChainInvariants inv = c.invariants();
        Int e = inv.ramification;
        Int fd = Int(phi.deg()) / e;
        if (fd * e != Int(phi.deg()))
            throw math_error("om_factor: internal: exact divisor degree not divisible by e");
        OMLeaf lf{c,
                  c.top().gamma,
                  c.tower().pvar(c.depth()),
                  true,
                  phi,
                  c.mu_fin(f),
                  e,
                  static_cast<long>(fd.get_si()),
                  c.depth()};
        tree.trace.push_back("leaf exact phi=" + poly_str(phi) + " e=" + e.get_str() +
                             " f=" + fd.get_str());
        tree.leaves.push_back(std::move(lf));
    }

    // Residual factorization at a freshly augmented or refined chain: the
    // gamma_r-component of N(f) is the side that created this child.
    void child(const Chain& c, int depth) {
        ResidualResult rr = residual(c, f);
        tree.trace.push_back("residual gammas=" + gammas_str(c) + " s=" + rr.s.get_str() +
                             " R=" + c.tower().poly_str(rr.poly));
        if (rr.d == 0) return; // no residual content on this side
        TowerFactorization fz = c.tower().factor(rr.poly, seed);
        std::string ft = "factor R:";
        for (const auto& fac : fz.factors)
            ft += " (" + c.tower().poly_str(fac.poly) + ")^" + std::to_string(fac.multiplicity);
        tree.trace.push_back(ft);
        for (const auto& fac : fz.factors) {
            if (fac.multiplicity == 1) {
                leaf_residual(c, fac.poly);
            } else {
                Poly phin = lift_key(c, fac.poly);
                tree.trace.push_back("lift psi=" + c.tower().poly_str(fac.poly) +
                                     " -> phi=" + poly_str(phin));
                node(c, phin, depth + 1);
            }
        }
    }

    // phi is a key polynomial for the chain's valuation; explore the sides of
    // the principal polygon of f with respect to it.
    void node(const Chain& c, const Poly& phi, int depth) {
        if (depth > max_depth)
            throw math_error("om_factor: max depth " + std::to_string(max_depth) +
                             " exceeded (raise --max-depth, or input outside the separable "
                             "defectless contract)");
        auto [quot, rem] = poly_divrem(f, phi);
        (void)quot;
        if (rem.is_zero()) leaf_exact(c, phi);
        Polygon npp = principal_part(c.newton_wrt(phi, f), c.mu_fin(phi));
        tree.trace.push_back("polygon phi=" + poly_str(phi) + " sides=" +
                             std::to_string(npp.side_count()));
        for (size_t i = 0; i < npp.side_count(); ++i) {
            GroupVec gamma = -npp.slope(i);
            tree.trace.push_back("side gamma=" + rat_str(gamma[0]));
            const bool same_degree = phi.deg() == c.top().m;
            Chain cc = same_degree ? c.refine(phi, gamma) : c.augment(phi, gamma);
            tree.trace.push_back(std::string(same_degree ? "refine" : "augment") +
                                 " phi=" + poly_str(phi) + " gamma=" + rat_str(gamma[0]));
            child(cc, depth);
        }
    }

    void run() {
        Chain c0 = Chain::gauss(p);
        ResidualResult rr = residual(c0, f);
        tree.trace.push_back("residual gammas=[0] s=" + rr.s.get_str() +
                             " R=" + c0.tower().poly_str(rr.poly));
        if (rr.d > 0) {
            TowerFactorization fz = c0.tower().factor(rr.poly, seed);
            std::string ft = "factor R:";
            for (const auto& fac : fz.factors)
                ft += " (" + c0.tower().poly_str(fac.poly) + ")^" + std::to_string(fac.multiplicity);
            tree.trace.push_back(ft);
            for (const auto& fac : fz.factors) {
                if (fac.multiplicity == 1) {
                    leaf_residual(c0, fac.poly);
                } else {
                    Poly phin = lift_key(c0, fac.poly);
                    tree.trace.push_back("lift psi=" + c0.tower().poly_str(fac.poly) +
                                         " -> phi=" + poly_str(phin));
                    node(c0, phin, 1);
                }
            }
        }
        // the part of f congruent to a power of x: the phi_0-branch
        if (rr.s > 0) node(c0, c0.top().phi, 1);
    }
};

bool leaf_less(const OMLeaf& a, const OMLeaf& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    for (int i = 0; i <= a.depth; ++i) {
        auto c = lex_cmp(a.chain.level(i).gamma, b.chain.level(i).gamma);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
    }
    if (int c = poly_cmp(a.psi, b.psi)) return c < 0;
    if (a.exact != b.exact) return a.exact < b.exact;
    return a.phi_approx < b.phi_approx;
}

} // namespace

OMTree om_factor(const Poly& f, const Prime& p, int max_depth, std::uint64_t seed) {
    if (f.deg() < 1) throw math_error("om_factor: input must be non-constant");
    if (!f.is_monic()) throw math_error("om_factor: input must be monic");
    for (long i = 0; i <= f.deg(); ++i) {
        auto v = vp(f[i], p);
        if (v && *v < 0)
            throw math_error("om_factor: coefficient of x^" + std::to_string(i) +
                             " is not p-integral; rescale the input");
    }
    if (poly_gcd(f, f.derivative()).deg() != 0)
        throw math_error("om_factor: input not squarefree");

    OMTree tree{f, p, max_depth, seed, {}, {}};
    Driver d{f, p, max_depth, seed, tree};
    d.run();
    std::sort(tree.leaves.begin(), tree.leaves.end(), leaf_less);
    return tree;
}

bool certify(const OMTree& t) {
    Int total = 0;
    for (const auto& lf : t.leaves) total += lf.e * Int(lf.fdeg);
    return total == Int(t.input.deg());
}

} // namespace om
