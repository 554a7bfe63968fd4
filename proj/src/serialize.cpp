#include "om/serialize.hpp"

namespace om {

namespace {

ordered_json groupvec_json(const GroupVec& g) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < g.dim(); ++i) a.push_back(rat_str(g[i]));
    return a;
}

GroupVec groupvec_from_json(const ordered_json& j) {
    std::vector<Rat> c;
    for (const auto& x : j) c.push_back(parse_rat(x.get<std::string>()));
    return GroupVec(std::move(c));
}

} // namespace

ordered_json poly_to_json(const Poly& f) {
    ordered_json a = ordered_json::array();
    for (long i = 0; i <= f.deg(); ++i) a.push_back(rat_str(f[i]));
    return a;
}

Poly poly_from_json(const ordered_json& j) {
    if (!j.is_array()) throw math_error("polynomial JSON: expected an array of coefficient strings");
    std::vector<Rat> c;
    for (const auto& x : j) c.push_back(parse_rat(x.get<std::string>()));
    return Poly(std::move(c));
}

namespace {

Poly poly_from_json_or_text(const ordered_json& j) {
    if (j.is_string()) return parse_poly(j.get<std::string>());
    return poly_from_json(j);
}

} // namespace

ordered_json chain_to_json(const Chain& c) {
    ordered_json j;
    j["p"] = c.prime().value();
    ordered_json levels = ordered_json::array();
    for (int i = 0; i <= c.depth(); ++i) {
        const Level& lv = c.level(i);
        ordered_json l;
        l["phi"] = poly_str(lv.phi);
        l["gamma"] = groupvec_json(lv.gamma);
        l["e"] = lv.e().get_si();
        if (lv.f) l["f"] = *lv.f;
        l["h"] = groupvec_json(lv.h());
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    return j;
}

Chain chain_from_json(const ordered_json& j) {
    if (!j.contains("p") || !j.contains("levels") || !j["levels"].is_array() || j["levels"].empty())
        throw math_error("chain JSON: need p and a nonempty levels array");
    Prime p(j["p"].get<unsigned long>());
    const auto& levels = j["levels"];

    Poly phi0 = poly_from_json_or_text(levels[0]["phi"]);
    if (phi0.deg() != 1 || !phi0.is_monic())
        throw math_error("chain JSON: phi_0 must be monic of degree 1");
    GroupVec g0 = groupvec_from_json(levels[0]["gamma"]);
    if (g0.dim() != 1) throw math_error("chain JSON: only rank-one chains are serializable");
    Chain c = Chain::depth_zero(p, phi0[0], g0);

    for (size_t i = 1; i < levels.size(); ++i) {
        Poly phi = poly_from_json_or_text(levels[i]["phi"]);
        GroupVec g = groupvec_from_json(levels[i]["gamma"]);
        c = c.augment(phi, g);
    }
    // verify the stored invariants against the recomputed chain
    for (size_t i = 0; i < levels.size(); ++i) {
        const Level& lv = c.level(static_cast<int>(i));
        if (levels[i].contains("e") && Int(levels[i]["e"].get<long>()) != lv.e())
            throw math_error("chain JSON: stored e mismatch at level " + std::to_string(i));
        if (levels[i].contains("f") && (!lv.f || levels[i]["f"].get<long>() != *lv.f))
            throw math_error("chain JSON: stored f mismatch at level " + std::to_string(i));
        if (levels[i].contains("h") && !(groupvec_from_json(levels[i]["h"]) == lv.h()))
            throw math_error("chain JSON: stored h mismatch at level " + std::to_string(i));
    }
    return c;
}

ordered_json polygon_to_json(const Polygon& n) {
    ordered_json verts = ordered_json::array();
    for (const auto& v : n.vertices()) {
        ordered_json e = ordered_json::array();
        e.push_back(v.s.get_si());
        e.push_back(groupvec_json(v.u));
        verts.push_back(std::move(e));
    }
    ordered_json j;
    j["vertices"] = std::move(verts);
    return j;
}

ordered_json residual_to_json(const Chain& c, const ResidualResult& rr) {
    ordered_json j;
    j["s"] = rr.s.get_si();
    j["sprime"] = rr.sprime.get_si();
    j["u"] = groupvec_json(rr.u);
    j["R"] = c.tower().poly_str(rr.poly);
    return j;
}

ordered_json leaf_to_json(const OMLeaf& lf) {
    ordered_json j;
    j["e"] = lf.e.get_si();
    j["f"] = lf.fdeg;
    j["depth"] = lf.depth;
    ordered_json gs = ordered_json::array();
    for (int i = 0; i <= lf.chain.depth(); ++i) gs.push_back(rat_str(lf.chain.level(i).gamma[0]));
    j["gammas"] = std::move(gs);
    j["psi"] = lf.chain.tower().poly_str(lf.psi);
    ordered_json pc = ordered_json::array();
    for (int i = 0; i <= lf.chain.depth(); ++i) pc.push_back(poly_str(lf.chain.level(i).phi));
    j["phi_chain"] = std::move(pc);
    j["phi"] = poly_str(lf.phi_approx);
    j["exact"] = lf.exact;
    j["mu_f"] = groupvec_json(lf.mu_f);
    return j;
}

ordered_json tree_to_json(const OMTree& t, bool include_trace) {
    ordered_json j;
    j["p"] = t.p.value();
    j["f"] = poly_str(t.input);
    ordered_json leaves = ordered_json::array();
    for (const auto& lf : t.leaves) leaves.push_back(leaf_to_json(lf));
    j["leaves"] = std::move(leaves);
    j["certified"] = certify(t);
    if (include_trace) j["trace"] = t.trace;
    return j;
}

ordered_json leaf_report(const OMLeaf& lf) {
    ordered_json j = leaf_to_json(lf);
    j["chain"] = chain_to_json(lf.chain);
    return j;
}

} // namespace om
