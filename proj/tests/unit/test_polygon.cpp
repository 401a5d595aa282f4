#include <gtest/gtest.h>

#include "gen.hpp"
#include "montes/error.hpp"
#include "montes/polygon.hpp"

using namespace montes;

namespace {

std::vector<CloudPoint> random_cloud(gen::Rng& g, int len, int maxy) {
    std::vector<CloudPoint> pts;
    for (int x = 0; x <= len; ++x) {
        CloudPoint c{x, gen::uniform(g, 0, maxy)};
        if (x > 0 && x < len && gen::uniform(g, 0, 4) == 0) c.y = kInfinity;
        pts.push_back(c);
    }
    return pts;
}

// Lattice points with x >= 1, strictly above the last ordinate, on or below N.
std::int64_t brute_index(const NewtonPolygon& N) {
    if (N.vertices.size() < 2) return 0;
    std::int64_t ylast = N.vertices.back().y, count = 0;
    for (std::int64_t x = std::max<std::int64_t>(1, N.vertices.front().x); x <= N.vertices.back().x; ++x) {
        mpq_class Y = ordinate_at(N, x);
        for (std::int64_t y = ylast + 1; mpq_class(y) <= Y; ++y) ++count;
    }
    return count;
}

}  // namespace

TEST(Polygon, HullOfExampleCloud) {
    // order-one cloud of x^12 + 4x^6 + 16x^3 + 64 at p = 2
    std::vector<CloudPoint> pts(13);
    for (int i = 0; i <= 12; ++i) pts[i] = {i, kInfinity};
    pts[0].y = 6, pts[3].y = 4, pts[6].y = 2, pts[12].y = 0;
    NewtonPolygon N = lower_hull(pts);
    ASSERT_EQ(N.vertices.size(), 3u);
    EXPECT_EQ(N.vertices[1], (Point{6, 2}));
    auto S = sides(N);
    ASSERT_EQ(S.size(), 2u);
    EXPECT_EQ(S[0].h, 2);
    EXPECT_EQ(S[0].e, 3);
    EXPECT_EQ(S[0].degree(), 2);
    EXPECT_EQ(S[1].h, 1);
    EXPECT_EQ(S[1].e, 3);
    EXPECT_EQ(polygon_index(N), 23);
}

TEST(Polygon, HullIsConvexAndBelowEveryPoint) {
    gen::Rng g(41);
    for (int it = 0; it < 500; ++it) {
        auto pts = random_cloud(g, static_cast<int>(gen::uniform(g, 1, 20)), 40);
        NewtonPolygon N = lower_hull(pts);
        for (size_t i = 2; i < N.vertices.size(); ++i) {
            const Point &a = N.vertices[i - 2], &b = N.vertices[i - 1], &c = N.vertices[i];
            // strictly increasing slopes
            EXPECT_LT((b.y - a.y) * (c.x - b.x), (c.y - b.y) * (b.x - a.x));
        }
        for (const auto& q : pts) {
            if (is_inf(q.y)) continue;
            EXPECT_LE(ordinate_at(N, q.x), mpq_class(q.y));
        }
        EXPECT_EQ(N.vertices.front().x, 0);
        EXPECT_EQ(N.vertices.back().x, pts.back().x);
    }
}

TEST(Polygon, IndexMatchesBruteForceLatticeCount) {
    gen::Rng g(42);
    for (int it = 0; it < 1000; ++it) {
        auto pts = random_cloud(g, static_cast<int>(gen::uniform(g, 1, 25)), 60);
        NewtonPolygon N = principal_part(lower_hull(pts));
        EXPECT_EQ(polygon_index(N), brute_index(N)) << N.to_string();
    }
}

TEST(Polygon, PartialPolygonKeepsSteepSides) {
    NewtonPolygon N = lower_hull(std::vector<Point>{{0, 12}, {2, 4}, {4, 2}, {7, 1}, {9, 1}});
    EXPECT_EQ(principal_part(N).vertices.back(), (Point{7, 1}));
    EXPECT_EQ(partial_polygon(N, 1).vertices.back(), (Point{2, 4}));
    EXPECT_EQ(partial_polygon(N, 4).vertices.size(), 1u);
    // slope exactly -H is excluded
    EXPECT_EQ(partial_polygon(N, 0).vertices.size(), 4u);
}

TEST(Polygon, LambdaComponent) {
    NewtonPolygon N = lower_hull(std::vector<Point>{{0, 12}, {2, 4}, {4, 2}, {7, 1}});
    Side s = lambda_component(N, 1, 1);
    EXPECT_EQ(s.start, (Point{2, 4}));
    EXPECT_EQ(s.end, (Point{4, 2}));
    Side v = lambda_component(N, 2, 1);  // touches only the vertex (2, 4)
    EXPECT_EQ(v.length(), 0);
    EXPECT_EQ(v.start, (Point{2, 4}));
}

TEST(Polygon, SideDegreeAndSlope) {
    Side s = sides(lower_hull(std::vector<Point>{{0, 21}, {2, 12}}))[0];
    EXPECT_EQ(s.h, 9);
    EXPECT_EQ(s.e, 2);
    EXPECT_EQ(s.degree(), 1);
    EXPECT_EQ(s.slope(), mpq_class(-9, 2));
}

TEST(Polygon, EmptyCloudIsRejected) {
    std::vector<CloudPoint> pts{{0, kInfinity}, {1, kInfinity}};
    EXPECT_THROW(lower_hull(pts), InputError);
}

TEST(Polygon, AsciiRenderingMarksVertices) {
    NewtonPolygon N = lower_hull(std::vector<Point>{{0, 3}, {3, 0}});
    std::string pic = render_ascii(N);
    EXPECT_NE(pic.find('o'), std::string::npos);
}
