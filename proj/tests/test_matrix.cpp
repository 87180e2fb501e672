#include <doctest.h>

#include <cmath>
#include <limits>

#include "dimest/errors.hpp"
#include "dimest/matrix.hpp"
#include "testutil.hpp"

using dimest::ArgumentError;
using dimest::DataMatrix;
using testutil::make_matrix;

TEST_CASE("valid matrix passes through unchanged") {
    const Eigen::MatrixXd m = make_matrix({{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}});
    const DataMatrix dm(m);
    CHECK(dm.rows() == 3);
    CHECK(dm.cols() == 2);
    CHECK(dm.values() == m);
}

TEST_CASE("single cell is allowed") {
    const DataMatrix dm(make_matrix({{7.0}}));
    CHECK(dm.rows() == 1);
    CHECK(dm.cols() == 1);
}

TEST_CASE("empty matrices are rejected") {
    CHECK_THROWS_AS(DataMatrix(Eigen::MatrixXd(0, 0)), ArgumentError);
    CHECK_THROWS_AS(DataMatrix(Eigen::MatrixXd(0, 3)), ArgumentError);
    CHECK_THROWS_AS(DataMatrix(Eigen::MatrixXd(3, 0)), ArgumentError);
}

TEST_CASE("non-finite entries are rejected") {
    Eigen::MatrixXd m = make_matrix({{1.0, 2.0}, {3.0, 4.0}});
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(DataMatrix{m}, ArgumentError);
    m(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(DataMatrix{m}, ArgumentError);
    m(0, 1) = -std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(DataMatrix{m}, ArgumentError);
}
