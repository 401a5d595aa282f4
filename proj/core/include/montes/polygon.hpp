#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "montes/zpoly.hpp"

namespace montes {

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

// Segment between two consecutive vertices. The slope is -h/e with
// gcd(h, e) = 1 and e > 0; h <= 0 for horizontal or rising sides.
struct Side {
    Point start, end;
    std::int64_t h = 0, e = 1;

    std::int64_t length() const { return end.x - start.x; }
    std::int64_t degree() const { return length() / e; }
    mpq_class slope() const { return mpq_class(-h, e); }
};

// Lower convex envelope given by its vertices (strictly increasing
// abscissae, strictly increasing slopes).
struct NewtonPolygon {
    std::vector<Point> vertices;

    bool empty() const { return vertices.empty(); }
    std::int64_t length() const { return empty() ? 0 : vertices.back().x - vertices.front().x; }
    std::string to_string() const;
    friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) { return a.vertices == b.vertices; }
};

struct CloudPoint {
    std::int64_t x = 0;
    Valuation y = kInfinity;
};

// Throws InputError when every ordinate is infinite.
NewtonPolygon lower_hull(const std::vector<CloudPoint>& points);
NewtonPolygon lower_hull(const std::vector<Point>& points);

NewtonPolygon principal_part(const NewtonPolygon& N);
// Sides of slope < -H.
NewtonPolygon partial_polygon(const NewtonPolygon& N, std::int64_t H);
// Steepest first.
std::vector<Side> sides(const NewtonPolygon& N);

std::int64_t polygon_index(const NewtonPolygon& N);
mpq_class ordinate_at(const NewtonPolygon& N, std::int64_t x);

// Intersection of N with its support line of slope -h/e: either a side
// or a single vertex (returned as a side of length zero).
Side lambda_component(const NewtonPolygon& N, std::int64_t h, std::int64_t e);

// Small ASCII picture, used by the trace output.
std::string render_ascii(const NewtonPolygon& N);

}  // namespace montes
