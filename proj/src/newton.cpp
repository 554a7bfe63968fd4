#include "om/newton.hpp"

#include <algorithm>
#include <sstream>

namespace om {

Cloud::Cloud(std::vector<CloudPoint> pts) : pts_(std::move(pts)) {
    for (size_t i = 1; i < pts_.size(); ++i)
        if (!(pts_[i - 1].s < pts_[i].s)) throw math_error("Cloud: abscissas must be strictly increasing");
    int k = -1;
    for (const auto& p : pts_) {
        if (!p.u) continue;
        if (k < 0) k = p.u->dim();
        else if (p.u->dim() != k) throw math_error("Cloud: mixed ordinate dimensions");
    }
}

bool Cloud::has_finite_point() const {
    for (const auto& p : pts_)
        if (p.u) return true;
    return false;
}

int Cloud::group_dim() const {
    for (const auto& p : pts_)
        if (p.u) return p.u->dim();
    throw math_error("Cloud: no finite point");
}

namespace {

// slope(a->b) vs slope(c->d) by cross multiplication: both abscissa gaps are
// positive, so the lex order survives the scaling.
std::strong_ordering cmp_slopes(const Vertex& a, const Vertex& b, const Vertex& c, const Vertex& d) {
    Int ds1 = b.s - a.s, ds2 = d.s - c.s;
    GroupVec lhs = (b.u - a.u) * Rat(ds2);
    GroupVec rhs = (d.u - c.u) * Rat(ds1);
    return lex_cmp(lhs, rhs);
}

} // namespace

Polygon::Polygon(std::vector<Vertex> vertices) : v_(std::move(vertices)) {
    if (v_.empty()) throw math_error("Polygon: empty vertex list");
    for (size_t i = 1; i < v_.size(); ++i)
        if (!(v_[i - 1].s < v_[i].s)) throw math_error("Polygon: abscissas must be strictly increasing");
    for (size_t i = 2; i < v_.size(); ++i)
        if (cmp_slopes(v_[i - 2], v_[i - 1], v_[i - 1], v_[i]) != std::strong_ordering::less)
            throw math_error("Polygon: side slopes must strictly increase");
}

Polygon Polygon::point(Vertex v) { return Polygon(std::vector<Vertex>{std::move(v)}); }

GroupVec Polygon::slope(size_t i) const {
    const Vertex& a = v_[i];
    const Vertex& b = v_[i + 1];
    return (b.u - a.u) * (Rat(1) / Rat(b.s - a.s));
}

std::optional<GroupVec> Segment::slope() const {
    if (is_point()) return std::nullopt;
    return (right.u - left.u) * (Rat(1) / Rat(right.s - left.s));
}

Polygon lower_hull(const Cloud& c) {
    if (!c.has_finite_point()) throw math_error("lower_hull: no finite point in cloud");
    std::vector<Vertex> hull;
    for (const auto& p : c.points()) {
        if (!p.u) continue;
        Vertex v{p.s, *p.u};
        while (hull.size() >= 2 &&
               cmp_slopes(hull[hull.size() - 2], hull.back(), hull.back(), v) != std::strong_ordering::less)
            hull.pop_back();
        hull.push_back(std::move(v));
    }
    return Polygon(std::move(hull));
}

Segment lambda_component(const Polygon& n, const GroupVec& lambda) {
    const auto& vs = n.vertices();
    // u + s*lambda is convex along the vertex chain; the minimizers are contiguous.
    size_t best = 0;
    GroupVec bestval = vs[0].u + lambda * Rat(vs[0].s);
    for (size_t i = 1; i < vs.size(); ++i) {
        GroupVec val = vs[i].u + lambda * Rat(vs[i].s);
        if (lex_cmp(val, bestval) == std::strong_ordering::less) {
            best = i;
            bestval = val;
        }
    }
    size_t lo = best, hi = best;
    while (lo > 0 && vs[lo - 1].u + lambda * Rat(vs[lo - 1].s) == bestval) --lo;
    while (hi + 1 < vs.size() && vs[hi + 1].u + lambda * Rat(vs[hi + 1].s) == bestval) ++hi;
    return Segment{vs[lo], vs[hi]};
}

Polygon principal_part(const Polygon& n, const GroupVec& bound) {
    const GroupVec neg_bound = -bound;
    size_t keep = 0; // number of leading sides with slope < -bound
    for (size_t i = 0; i < n.side_count(); ++i) {
        if (lex_cmp(n.slope(i), neg_bound) == std::strong_ordering::less) keep = i + 1;
        else break;
    }
    if (keep == 0) return Polygon::point(n.left());
    std::vector<Vertex> vs(n.vertices().begin(), n.vertices().begin() + static_cast<long>(keep) + 1);
    return Polygon(std::move(vs));
}

Polygon polygon_add(const Polygon& a, const Polygon& b) {
    Vertex start{a.left().s + b.left().s, a.left().u + b.left().u};
    struct Side {
        Int ds;
        GroupVec du;
    };
    std::vector<Side> sides;
    auto collect = [&sides](const Polygon& p) {
        for (size_t i = 0; i + 1 < p.vertices().size(); ++i)
            sides.push_back(Side{p.vertices()[i + 1].s - p.vertices()[i].s,
                                 p.vertices()[i + 1].u - p.vertices()[i].u});
    };
    collect(a);
    collect(b);
    std::stable_sort(sides.begin(), sides.end(), [](const Side& x, const Side& y) {
        return lex_cmp(x.du * Rat(y.ds), y.du * Rat(x.ds)) == std::strong_ordering::less;
    });
    std::vector<Vertex> vs{start};
    for (size_t i = 0; i < sides.size(); ++i) {
        // merge runs of equal slope into one side
        Int ds = sides[i].ds;
        GroupVec du = sides[i].du;
        while (i + 1 < sides.size() &&
               lex_cmp(sides[i].du * Rat(sides[i + 1].ds), sides[i + 1].du * Rat(sides[i].ds)) ==
                   std::strong_ordering::equal) {
            ++i;
            ds += sides[i].ds;
            du = du + sides[i].du;
        }
        vs.push_back(Vertex{vs.back().s + ds, vs.back().u + du});
    }
    return Polygon(std::move(vs));
}

bool is_one_sided(const Polygon& n, const GroupVec& lambda) {
    Segment s = lambda_component(n, lambda);
    return s.left == n.left() && s.right == n.right() && s.left.s == 0 && s.right.s > 0;
}

GroupVec mu_from_polygon(const Polygon& n, const GroupVec& gamma) {
    Segment s = lambda_component(n, gamma);
    return s.left.u + gamma * Rat(s.left.s);
}

std::string render_polygon(const Polygon& n) {
    const auto& vs = n.vertices();
    // Plot the first ordinate coordinate on a small fixed grid.
    Rat umin = vs[0].u[0], umax = vs[0].u[0];
    for (const auto& v : vs) {
        if (v.u[0] < umin) umin = v.u[0];
        if (v.u[0] > umax) umax = v.u[0];
    }
    const long rows = (umin == umax) ? 1 : 9;
    const Int smin = vs.front().s, smax = vs.back().s;
    const long span = std::max(1l, static_cast<long>(Int(smax - smin).get_si()));
    const long colw = std::max(2l, std::min(8l, 48l / span));
    const long cols = span * colw + 1;

    auto row_of = [&](const Rat& u) -> long {
        if (umin == umax) return 0;
        Rat t = (umax - u) / (umax - umin) * Rat(static_cast<unsigned long>(rows - 1));
        return static_cast<long>(rat_floor(t + Rat(1, 2)).get_si());
    };
    auto col_of = [&](const Rat& s) -> long {
        Rat t = (s - Rat(smin)) * Rat(static_cast<unsigned long>(colw));
        return static_cast<long>(rat_floor(t + Rat(1, 2)).get_si());
    };

    std::vector<std::string> grid(static_cast<size_t>(rows), std::string(static_cast<size_t>(cols), ' '));
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
        const Vertex& a = vs[i];
        const Vertex& b = vs[i + 1];
        int sgn = cmp(b.u[0], a.u[0]);
        char glyph = sgn < 0 ? '\\' : (sgn == 0 ? '-' : '.');
        long c0 = col_of(Rat(a.s)), c1 = col_of(Rat(b.s));
        for (long c = c0 + 1; c < c1; ++c) {
            // interpolate the ordinate along the side
            Rat t = Rat(static_cast<unsigned long>(c)) / Rat(static_cast<unsigned long>(colw)) + Rat(smin);
            Rat u = a.u[0] + (b.u[0] - a.u[0]) * (t - Rat(a.s)) / Rat(b.s - a.s);
            grid[static_cast<size_t>(row_of(u))][static_cast<size_t>(c)] = glyph;
        }
    }
    std::vector<std::string> labels(static_cast<size_t>(rows));
    for (const auto& v : vs) {
        long r = row_of(v.u[0]), c = col_of(Rat(v.s));
        grid[static_cast<size_t>(r)][static_cast<size_t>(c)] = '*';
        if (labels[static_cast<size_t>(r)].empty()) labels[static_cast<size_t>(r)] = rat_str(v.u[0]);
    }
    size_t lw = 0;
    for (const auto& l : labels) lw = std::max(lw, l.size());
    std::ostringstream out;
    for (long r = 0; r < rows; ++r) {
        std::string lab = labels[static_cast<size_t>(r)];
        out << std::string(lw - lab.size(), ' ') << lab << " |" << grid[static_cast<size_t>(r)] << "\n";
    }
    out << std::string(lw, ' ') << " +" << std::string(static_cast<size_t>(cols), '-') << "\n";
    // abscissa labels at each vertex column
    std::string axis(static_cast<size_t>(cols) + lw + 2, ' ');
    for (const auto& v : vs) {
        std::string t = Int(v.s).get_str();
        size_t c = static_cast<size_t>(col_of(Rat(v.s))) + lw + 2;
        for (size_t i = 0; i < t.size() && c + i < axis.size(); ++i) axis[c + i] = t[i];
    }
    out << axis << "\n";
    return out.str();
}

} // namespace om
