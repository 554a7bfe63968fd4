#pragma once

#include <optional>
#include <string>
#include <vector>

#include "om/ordered_group.hpp"

namespace om {

/// One point of a coefficient cloud. A missing ordinate encodes +infinity
/// (zero expansion coefficient); such points never enter the hull but are
/// kept for rendering.
struct CloudPoint {
    Int s;
    std::optional<GroupVec> u;
};

/// Finite cloud in Q x Q^k with strictly increasing abscissas.
class Cloud {
public:
    Cloud() = default;
    explicit Cloud(std::vector<CloudPoint> pts);
    const std::vector<CloudPoint>& points() const { return pts_; }
    bool has_finite_point() const;
    int group_dim() const; // dimension of the finite ordinates

private:
    std::vector<CloudPoint> pts_;
};

struct Vertex {
    Int s;
    GroupVec u;
    bool operator==(const Vertex& o) const { return s == o.s && u == o.u; }
};

/// Lower Newton polygon: vertex chain with strictly increasing abscissas and
/// strictly increasing side slopes (no collinear interior vertices). Slopes
/// are derived from consecutive vertices, never stored.
class Polygon {
public:
    explicit Polygon(std::vector<Vertex> vertices);
    static Polygon point(Vertex v);

    const std::vector<Vertex>& vertices() const { return v_; }
    const Vertex& left() const { return v_.front(); }
    const Vertex& right() const { return v_.back(); }
    bool single_point() const { return v_.size() == 1; }
    size_t side_count() const { return v_.size() - 1; }
    /// Slope of side i (between vertices i and i+1), as a vector in Q^k.
    GroupVec slope(size_t i) const;
    /// Abscissa length right.s - left.s.
    Int length() const { return v_.back().s - v_.front().s; }

    bool operator==(const Polygon& o) const { return v_ == o.v_; }

private:
    std::vector<Vertex> v_;
};

/// Endpoints of a lambda-component: a side of the polygon or a single vertex.
struct Segment {
    Vertex left;
    Vertex right;
    bool is_point() const { return left.s == right.s; }
    /// Slope (right.u - left.u)/(right.s - left.s); nullopt for a point.
    std::optional<GroupVec> slope() const;
};

/// Lower convex hull of the finite points; throws if none exist.
Polygon lower_hull(const Cloud& c);

/// S_lambda(N): the subset of N where u + s*lambda is minimal. A full side
/// when N has a side of slope -lambda, otherwise a vertex.
Segment lambda_component(const Polygon& n, const GroupVec& lambda);

/// Sides of slope strictly less than -bound; the left endpoint of N when
/// there are none.
Polygon principal_part(const Polygon& n, const GroupVec& bound);

/// Left endpoints add as vectors; sides join sorted by increasing slope,
/// equal slopes merging into one side.
Polygon polygon_add(const Polygon& a, const Polygon& b);

/// N equals its lambda-component, starts at abscissa 0 and has positive length.
bool is_one_sided(const Polygon& n, const GroupVec& lambda);

/// min over N of u + s*gamma: the valuation value read off the polygon.
GroupVec mu_from_polygon(const Polygon& n, const GroupVec& gamma);

/// Fixed-width ASCII rendering of a polygon (first ordinate coordinate),
/// '*' vertices, '\' '-' '.' side glyphs, exact rational axis labels.
std::string render_polygon(const Polygon& n);

} // namespace om
