#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "dimest/dimension.hpp"
#include "dimest/errors.hpp"
#include "dimest/isomap.hpp"
#include "dimest/rng.hpp"
#include "testutil.hpp"

using dimest::ArgumentError;
using dimest::DataMatrix;
using dimest::DisconnectedGraphError;
using dimest::double_center;
using dimest::GeodesicMatrix;
using dimest::geodesics;
using dimest::isomap_embed;
using dimest::knn_graph;
using testutil::make_matrix;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_edge(const dimest::NeighborGraph& g, Eigen::Index i, Eigen::Index j) {
    return std::isfinite(g.distances(i, j));
}
}  // namespace

TEST_CASE("knn graph of three collinear points at k=1") {
    const auto x = make_matrix({{0.0}, {1.0}, {3.0}});
    const auto g = knn_graph(DataMatrix(x), 1);
    // 0 and 1 pick each other; 2 picks 1; the union adds 1-2.
    CHECK(is_edge(g, 0, 1));
    CHECK(is_edge(g, 1, 0));
    CHECK(is_edge(g, 1, 2));
    CHECK(is_edge(g, 2, 1));
    CHECK_FALSE(is_edge(g, 0, 2));
    CHECK(g.distances(0, 1) == doctest::Approx(1.0));
    CHECK(g.distances(1, 2) == doctest::Approx(2.0));
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(g.distances(i, i) == 0.0);
}

TEST_CASE("knn graph is symmetric by union") {
    const auto x = testutil::random_matrix(12, 3, 71);
    const auto g = knn_graph(DataMatrix(x), 3);
    for (Eigen::Index i = 0; i < 12; ++i)
        for (Eigen::Index j = 0; j < 12; ++j)
            CHECK(g.distances(i, j) == g.distances(j, i));
}

TEST_CASE("k = samples - 1 yields the complete graph with Euclidean distances") {
    const auto x = testutil::random_matrix(6, 2, 73);
    const auto g = knn_graph(DataMatrix(x), 5);
    for (Eigen::Index i = 0; i < 6; ++i)
        for (Eigen::Index j = 0; j < 6; ++j) {
            if (i == j) continue;
            const double d = (x.row(i) - x.row(j)).norm();
            CHECK(g.distances(i, j) == doctest::Approx(d).epsilon(1e-12));
        }
}

TEST_CASE("duplicate points tie-break deterministically and connect at distance 0") {
    const auto x = make_matrix({{1.0, 1.0}, {1.0, 1.0}, {5.0, 5.0}});
    const auto g = knn_graph(DataMatrix(x), 1);
    CHECK(g.distances(0, 1) == 0.0);
    CHECK(is_edge(g, 2, 0));  // ties at equal distance resolve to the lower index
    CHECK_FALSE(is_edge(g, 2, 1));
}

TEST_CASE("neighbor count is validated") {
    const auto x = make_matrix({{0.0}, {1.0}, {2.0}});
    CHECK_THROWS_AS(knn_graph(DataMatrix(x), 0), ArgumentError);
    CHECK_THROWS_AS(knn_graph(DataMatrix(x), 3), ArgumentError);
    CHECK_THROWS_AS(knn_graph(DataMatrix(make_matrix({{1.0}})), 1), ArgumentError);
}

TEST_CASE("geodesics accumulate along a chain") {
    const auto x = make_matrix({{0.0}, {1.0}, {3.0}});
    const auto geo = geodesics(knn_graph(DataMatrix(x), 1));
    CHECK(geo.distances(0, 2) == doctest::Approx(3.0));
    CHECK(geo.distances(2, 0) == doctest::Approx(3.0));
    CHECK(geo.distances(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("geodesic around a square's corners goes through a neighbor") {
    const auto x =
        make_matrix({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    const auto geo = geodesics(knn_graph(DataMatrix(x), 2));
    // k=2 links each corner to its two side-neighbors only, so the diagonal
    // pair is two sides long.
    CHECK(geo.distances(0, 2) == doctest::Approx(2.0));
    CHECK(geo.distances(1, 3) == doctest::Approx(2.0));
}

TEST_CASE("disconnected graph is reported") {
    const auto x = make_matrix({{0.0}, {0.1}, {100.0}, {100.1}});
    CHECK_THROWS_AS(geodesics(knn_graph(DataMatrix(x), 1)), DisconnectedGraphError);
}

TEST_CASE("geodesics satisfy metric properties and dominate Euclidean distance") {
    const auto x = testutil::random_matrix(15, 3, 79);
    const auto geo = geodesics(knn_graph(DataMatrix(x), 4));
    const Eigen::Index n = 15;
    for (Eigen::Index i = 0; i < n; ++i) {
        CHECK(geo.distances(i, i) == 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            CHECK(geo.distances(i, j) == geo.distances(j, i));
            const double euclid = (x.row(i) - x.row(j)).norm();
            CHECK(geo.distances(i, j) >= euclid - 1e-10);
            for (Eigen::Index k = 0; k < n; ++k)
                CHECK(geo.distances(i, j) <=
                      geo.distances(i, k) + geo.distances(k, j) + 1e-10);
        }
    }
}

TEST_CASE("double centering of a two-point metric") {
    GeodesicMatrix geo;
    geo.distances = make_matrix({{0.0, 3.0}, {3.0, 0.0}});
    const auto s = double_center(geo).values();
    CHECK(s(0, 0) == doctest::Approx(2.25));
    CHECK(s(1, 1) == doctest::Approx(2.25));
    CHECK(s(0, 1) == doctest::Approx(-2.25));
    CHECK(s(1, 0) == doctest::Approx(-2.25));
}

TEST_CASE("double centering of zeros is zero") {
    GeodesicMatrix geo;
    geo.distances = Eigen::MatrixXd::Zero(3, 3);
    const auto s = double_center(geo).values();
    CHECK(s.norm() == 0.0);
}

TEST_CASE("double centered matrix has zero row and column sums") {
    const auto x = testutil::random_matrix(10, 4, 83);
    const auto s = double_center(geodesics(knn_graph(DataMatrix(x), 3))).values();
    CHECK((s - s.transpose()).norm() == 0.0);
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        CHECK(std::abs(s.row(i).sum()) <= 1e-8);
        CHECK(std::abs(s.col(i).sum()) <= 1e-8);
    }
}

TEST_CASE("double centering of a 1-D line matches the Jacobi oracle") {
    // Points 0, 1, 2 on a line: centered Gram has eigenvalues {2, 0, 0}.
    const auto x = make_matrix({{0.0}, {1.0}, {2.0}});
    const auto s = double_center(geodesics(knn_graph(DataMatrix(x), 1)));
    const auto ev = testutil::jacobi_eigenvalues(s.values());
    CHECK(ev[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(ev[2] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("two points embed symmetrically about the origin") {
    const auto x = make_matrix({{0.0, 0.0}, {3.0, 4.0}});
    const auto res = isomap_embed(DataMatrix(x), 1, 2);
    const auto& e = res.embedding.values();
    CHECK(std::abs(e(0, 0)) == doctest::Approx(2.5));
    CHECK(e(0, 0) == doctest::Approx(-e(1, 0)));
    CHECK(std::abs(e(0, 1)) <= 1e-10);
    CHECK(res.spectrum.values()(0) == doctest::Approx(12.5));
    CHECK(res.spectrum.values()(1) == doctest::Approx(0.0));
}

TEST_CASE("identical points give a zero spectrum and zero embedding") {
    const auto x = make_matrix({{2.0, 2.0}, {2.0, 2.0}, {2.0, 2.0}});
    const auto res = isomap_embed(DataMatrix(x), 1, 2);
    CHECK(res.spectrum.values().maxCoeff() <= 1e-12);
    CHECK(res.embedding.values().norm() <= 1e-10);
}

TEST_CASE("embedding of collinear points reproduces the geodesics") {
    const auto x = make_matrix({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}});
    const auto geo = geodesics(knn_graph(DataMatrix(x), 1));
    const auto res = isomap_embed(DataMatrix(x), 1, 4);
    const auto& e = res.embedding.values();
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) {
            const double d = (e.row(i) - e.row(j)).norm();
            CHECK(d == doctest::Approx(geo.distances(i, j)).epsilon(1e-6));
        }
}

TEST_CASE("spectrum is descending, non-negative, and dims is validated") {
    const auto x = testutil::random_matrix(9, 3, 89);
    const auto res = isomap_embed(DataMatrix(x), 3, 5);
    CHECK(res.embedding.values().cols() == 5);
    const auto& sv = res.spectrum.values();
    CHECK(sv.size() == 9);
    for (Eigen::Index i = 0; i < sv.size(); ++i) CHECK(sv(i) >= 0.0);
    for (Eigen::Index i = 1; i < sv.size(); ++i) CHECK(sv(i) <= sv(i - 1));
    CHECK_THROWS_AS(isomap_embed(DataMatrix(x), 3, 0), ArgumentError);
    CHECK_THROWS_AS(isomap_embed(DataMatrix(x), 3, 10), ArgumentError);
}

TEST_CASE("a circle keeps its structure under an ambient rotation") {
    // n points on a circle, lifted to 10-D by an orthonormal map: the isomap
    // spectrum must match the planar run, the top two values must be equal and
    // dominant, and with the complete graph (Euclidean metric) the >=1% rule
    // must report exactly 2.
    const Eigen::Index n = 30;
    Eigen::MatrixXd planar(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(n);
        planar(i, 0) = std::cos(t);
        planar(i, 1) = std::sin(t);
    }
    const auto raw = testutil::random_normal_matrix(10, 2, 97);
    const Eigen::MatrixXd q =
        Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ() *
        Eigen::MatrixXd::Identity(10, 2);
    const Eigen::MatrixXd lifted = planar * q.transpose();

    const auto res2 = isomap_embed(DataMatrix(planar), 2, 2);
    const auto res10 = isomap_embed(DataMatrix(lifted), 2, 2);
    const auto& s2 = res2.spectrum.values();
    const auto& s10 = res10.spectrum.values();
    REQUIRE(s2.size() == s10.size());
    for (Eigen::Index i = 0; i < s2.size(); ++i)
        CHECK(s10(i) == doctest::Approx(s2(i)).epsilon(1e-8));

    CHECK(s10(0) == doctest::Approx(s10(1)).epsilon(1e-6));
    CHECK(s10(1) >= 3.0 * s10(2));

    // With every pairwise distance available the circle is genuinely planar.
    const auto full = isomap_embed(DataMatrix(lifted), n - 1, 2);
    const auto est = dimest::dim_gte(full.spectrum, 0.01);
    CHECK(est.p == 2);
}
