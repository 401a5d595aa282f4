#include "montes/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "montes/error.hpp"

namespace montes {

namespace {

__extension__ typedef __int128 i128;

// Cross product sign of (b - a) x (c - a), in 128 bits to stay exact.
i128 cross(const Point& a, const Point& b, const Point& c) {
    return static_cast<i128>(b.x - a.x) * (c.y - a.y) - static_cast<i128>(b.y - a.y) * (c.x - a.x);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Side make_side(const Point& a, const Point& b) {
    std::int64_t dx = b.x - a.x, dy = a.y - b.y;
    std::int64_t g = std::gcd(dx, dy < 0 ? -dy : dy);
    if (g == 0) g = 1;
    Side s{a, b, dy / g, dx / g};
    if (dy == 0) s.h = 0, s.e = 1;
    return s;
}

}  // namespace

std::string NewtonPolygon::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (i) os << " ";
        os << "(" << vertices[i].x << "," << vertices[i].y << ")";
    }
    return os.str();
}

NewtonPolygon lower_hull(const std::vector<Point>& pts0) {
    if (pts0.empty()) throw InputError("lower_hull: no finite points");
    std::vector<Point> pts = pts0;
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    std::vector<Point> hull;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && pts[i].x == pts[i - 1].x) continue;  // keep the lowest point per abscissa
        const Point& p = pts[i];
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }
    return NewtonPolygon{hull};
}

NewtonPolygon lower_hull(const std::vector<CloudPoint>& points) {
    std::vector<Point> pts;
    for (const auto& cp : points)
        if (!is_inf(cp.y)) pts.push_back({cp.x, cp.y});
    return lower_hull(pts);
}

NewtonPolygon partial_polygon(const NewtonPolygon& N, std::int64_t H) {
    if (N.empty()) return N;
    NewtonPolygon out;
    out.vertices.push_back(N.vertices.front());
    for (size_t i = 1; i < N.vertices.size(); ++i) {
        const Point& a = N.vertices[i - 1];
        const Point& b = N.vertices[i];
        // slope (b.y - a.y)/(b.x - a.x) < -H  <=>  a.y - b.y > H (b.x - a.x)
        if (static_cast<i128>(a.y - b.y) > static_cast<i128>(H) * (b.x - a.x))
            out.vertices.push_back(b);
        else
            break;
    }
    return out;
}

NewtonPolygon principal_part(const NewtonPolygon& N) { return partial_polygon(N, 0); }

std::vector<Side> sides(const NewtonPolygon& N) {
    std::vector<Side> out;
    for (size_t i = 1; i < N.vertices.size(); ++i) out.push_back(make_side(N.vertices[i - 1], N.vertices[i]));
    return out;
}

std::int64_t polygon_index(const NewtonPolygon& N) {
    if (N.vertices.size() < 2) return 0;
    std::int64_t ylast = N.vertices.back().y;
    std::int64_t total = 0;
    for (size_t i = 1; i < N.vertices.size(); ++i) {
        const Point& a = N.vertices[i - 1];
        const Point& b = N.vertices[i];
        std::int64_t dx = b.x - a.x;
        for (std::int64_t x = std::max<std::int64_t>(a.x + 1, 1); x <= b.x; ++x) {
            // floor of the ordinate a.y + (x - a.x)(b.y - a.y)/dx
            std::int64_t num = a.y * dx + (x - a.x) * (b.y - a.y);
            std::int64_t fy = floor_div(num, dx);
            if (fy > ylast) total += fy - ylast;
        }
    }
    // A first vertex at abscissa >= 1 contributes its own column.
    if (N.vertices.front().x >= 1 && N.vertices.front().y > ylast) total += N.vertices.front().y - ylast;
    return total;
}

mpq_class ordinate_at(const NewtonPolygon& N, std::int64_t x) {
    if (N.empty() || x < N.vertices.front().x || x > N.vertices.back().x)
        throw ContractViolation("ordinate_at: abscissa outside the polygon");
    for (size_t i = 0; i < N.vertices.size(); ++i) {
        if (N.vertices[i].x == x) return mpq_class(N.vertices[i].y);
        if (N.vertices[i].x > x) {
            const Point& a = N.vertices[i - 1];
            const Point& b = N.vertices[i];
            mpq_class r(mpz_class(b.y - a.y) * mpz_class(x - a.x), mpz_class(b.x - a.x));
            r.canonicalize();
            return r + a.y;
        }
    }
    throw InternalError("ordinate_at: unreachable");
}

Side lambda_component(const NewtonPolygon& N, std::int64_t h, std::int64_t e) {
    if (N.empty()) throw ContractViolation("lambda_component: empty polygon");
    // Minimise e*y + h*x over the vertices.
    size_t best = 0;
    i128 bv = static_cast<i128>(e) * N.vertices[0].y + static_cast<i128>(h) * N.vertices[0].x;
    for (size_t i = 1; i < N.vertices.size(); ++i) {
        i128 v = static_cast<i128>(e) * N.vertices[i].y + static_cast<i128>(h) * N.vertices[i].x;
        if (v < bv) bv = v, best = i;
    }
    size_t last = best;
    if (best + 1 < N.vertices.size()) {
        const Point& q = N.vertices[best + 1];
        if (static_cast<i128>(e) * q.y + static_cast<i128>(h) * q.x == bv) last = best + 1;
    }
    if (last == best) return Side{N.vertices[best], N.vertices[best], h, e};
    return make_side(N.vertices[best], N.vertices[last]);
}

std::string render_ascii(const NewtonPolygon& N) {
    if (N.empty()) return "(empty polygon)\n";
    std::int64_t x0 = N.vertices.front().x, x1 = N.vertices.back().x;
    std::int64_t ymin = N.vertices.front().y, ymax = ymin;
    for (const auto& v : N.vertices) ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
    const std::int64_t kMax = 40;
    if (x1 - x0 > kMax || ymax - ymin > kMax) return "(polygon too large to draw) " + N.to_string() + "\n";
    std::ostringstream os;
    for (std::int64_t y = ymax; y >= ymin; --y) {
        os << (y < 10 && y >= 0 ? " " : "") << y << " |";
        for (std::int64_t x = x0; x <= x1; ++x) {
            bool vertex = false;
            for (const auto& v : N.vertices) vertex |= (v.x == x && v.y == y);
            char ch = ' ';
            if (vertex) {
                ch = 'o';
            } else {
                mpq_class oy = ordinate_at(N, x);
                mpz_class fl;
                mpz_fdiv_q(fl.get_mpz_t(), oy.get_num_mpz_t(), oy.get_den_mpz_t());
                if (fl == y) ch = '.';
            }
            os << ch;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace montes
