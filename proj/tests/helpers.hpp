#pragma once

// Shared test utilities: deterministic random generators and independent
// oracles. Everything here must stay independent of the implementation paths
// it is used to check.

#include <random>
#include <vector>

#include "om/base_field.hpp"
#include "om/newton.hpp"
#include "om/ordered_group.hpp"

namespace omtest {

inline om::Rat Q(long n, long d = 1) { return om::make_rat(om::Int(n), om::Int(d)); }

inline om::GroupVec gv1(const om::Rat& a) { return om::GroupVec(std::vector<om::Rat>{a}); }
inline om::GroupVec gv1(long a) { return gv1(om::Rat(a)); }
inline om::GroupVec gv2(const om::Rat& a, const om::Rat& b) {
    return om::GroupVec(std::vector<om::Rat>{a, b});
}

inline om::Poly P(const std::string& text) { return om::parse_poly(text); }

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}

    long i(long lo, long hi) { // inclusive
        return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    om::Rat rat(long maxnum, long maxden) { return Q(i(-maxnum, maxnum), i(1, maxden)); }
    om::Rat nonzero_rat(long maxnum, long maxden) {
        while (true) {
            om::Rat q = rat(maxnum, maxden);
            if (q != 0) return q;
        }
    }
    /// Random nonzero polynomial with integer coefficients, deg in [mindeg, maxdeg].
    om::Poly poly(long mindeg, long maxdeg, long maxc) {
        while (true) {
            long d = i(mindeg, maxdeg);
            std::vector<om::Rat> c;
            for (long k = 0; k <= d; ++k) c.push_back(om::Rat(i(-maxc, maxc)));
            om::Poly f{std::move(c)};
            if (!f.is_zero()) return f;
        }
    }
    om::Poly monic_poly(long deg, long maxc) {
        std::vector<om::Rat> c;
        for (long k = 0; k < deg; ++k) c.push_back(om::Rat(i(-maxc, maxc)));
        c.push_back(om::Rat(1));
        return om::Poly(std::move(c));
    }
};

/// O(n^3) brute-force lower hull: a point is on the hull iff no chord
/// through two other points passes strictly below it; a hull point is a
/// vertex iff it is not exactly on a chord of two straddling hull points.
inline om::Polygon brute_hull(const om::Cloud& c) {
    using om::GroupVec;
    using om::Int;
    using om::Rat;
    std::vector<om::Vertex> pts;
    for (const auto& p : c.points())
        if (p.u) pts.push_back({p.s, *p.u});
    if (pts.empty()) throw om::math_error("brute_hull: empty");
    const size_t n = pts.size();

    // ordinate of the chord (a, b) at abscissa s, times positive (b.s - a.s)
    auto chord_cmp = [](const om::Vertex& p, const om::Vertex& a, const om::Vertex& b) {
        Rat t = Rat(b.s - a.s);
        GroupVec lhs = p.u * t;
        GroupVec rhs = a.u * t + (b.u - a.u) * Rat(p.s - a.s);
        return om::lex_cmp(lhs, rhs);
    };

    std::vector<bool> on_hull(n, true);
    for (size_t i = 0; i < n; ++i)
        for (size_t a = 0; a < n && on_hull[i]; ++a)
            for (size_t b = a + 1; b < n && on_hull[i]; ++b) {
                if (!(pts[a].s < pts[i].s && pts[i].s < pts[b].s)) continue;
                if (chord_cmp(pts[i], pts[a], pts[b]) == std::strong_ordering::greater)
                    on_hull[i] = false;
            }
    std::vector<om::Vertex> out;
    for (size_t i = 0; i < n; ++i) {
        if (!on_hull[i]) continue;
        bool interior_collinear = false;
        for (size_t a = 0; a < n && !interior_collinear; ++a)
            for (size_t b = a + 1; b < n && !interior_collinear; ++b) {
                if (!on_hull[a] || !on_hull[b]) continue;
                if (!(pts[a].s < pts[i].s && pts[i].s < pts[b].s)) continue;
                if (chord_cmp(pts[i], pts[a], pts[b]) == std::strong_ordering::equal)
                    interior_collinear = true;
            }
        if (!interior_collinear) out.push_back(pts[i]);
    }
    return om::Polygon(std::move(out));
}

/// Second independent hull oracle: gift wrapping with exact cross-multiplied
/// slope comparisons, collinear ties resolved to the farthest point.
inline om::Polygon hull_oracle(const om::Cloud& c) {
    std::vector<om::Vertex> pts;
    for (const auto& p : c.points())
        if (p.u) pts.push_back({p.s, *p.u});
    if (pts.empty()) throw om::math_error("hull_oracle: empty");
    std::vector<om::Vertex> out{pts.front()};
    size_t cur = 0;
    while (cur + 1 < pts.size()) {
        size_t best = cur + 1;
        for (size_t j = cur + 2; j < pts.size(); ++j) {
            om::GroupVec lhs = (pts[j].u - pts[cur].u) * om::Rat(pts[best].s - pts[cur].s);
            om::GroupVec rhs = (pts[best].u - pts[cur].u) * om::Rat(pts[j].s - pts[cur].s);
            auto cmp = om::lex_cmp(lhs, rhs);
            // strictly smaller slope, or equal slope and farther out
            if (cmp != std::strong_ordering::greater) best = j;
        }
        out.push_back(pts[best]);
        cur = best;
    }
    return om::Polygon(std::move(out));
}

/// Random cloud with strictly increasing abscissas, optional infinite points.
inline om::Cloud random_cloud(Rng& rng, int maxn, int k, long maxnum, long maxden) {
    int n = 1 + static_cast<int>(rng.i(1, maxn) - 1);
    std::vector<om::CloudPoint> pts;
    bool have_finite = false;
    for (int s = 0; s < n; ++s) {
        if (rng.i(0, 5) == 0) {
            pts.push_back({om::Int(s), std::nullopt});
            continue;
        }
        std::vector<om::Rat> u;
        for (int j = 0; j < k; ++j) u.push_back(rng.rat(maxnum, maxden));
        pts.push_back({om::Int(s), om::GroupVec(std::move(u))});
        have_finite = true;
    }
    if (!have_finite) {
        std::vector<om::Rat> u(static_cast<size_t>(k), om::Rat(0));
        pts[0].u = om::GroupVec(std::move(u));
    }
    return om::Cloud(std::move(pts));
}

} // namespace omtest
