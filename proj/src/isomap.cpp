#include "dimest/isomap.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dimest/errors.hpp"

namespace dimest {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NeighborGraph knn_graph(const DataMatrix& x, Eigen::Index k) {
  const Eigen::Index m = x.rows();
  if (m < 2) {
    throw ArgumentError("kNN graph needs at least 2 samples");
  }
  if (k < 1 || k >= m) {
    throw ArgumentError("neighbor count " + std::to_string(k) +
                        " outside [1, " + std::to_string(m - 1) + "]");
  }
  Eigen::MatrixXd dist(m, m);
  dist.setZero();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double d = (x.values().row(i) - x.values().row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  Eigen::MatrixXd graph = Eigen::MatrixXd::Constant(m, m, kInf);
  graph.diagonal().setZero();
  std::vector<Eigen::Index> order(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    // ties broken by lower sample index
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      if (dist(i, a) != dist(i, b)) return dist(i, a) < dist(i, b);
      return a < b;
    });
    Eigen::Index taken = 0;
    for (const Eigen::Index j : order) {
      if (j == i) continue;
      graph(i, j) = dist(i, j);
      graph(j, i) = dist(i, j);
      if (++taken == k) break;
    }
  }
  return NeighborGraph{std::move(graph)};
}

GeodesicMatrix geodesics(const NeighborGraph& graph) {
  Eigen::MatrixXd d = graph.distances;
  const Eigen::Index m = d.rows();
  if (m == 0 || d.cols() != m) {
    throw ArgumentError("neighbor graph matrix must be square and non-empty");
  }
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double dkj = d(k, j);
      if (dkj == kInf) continue;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double via = d(i, k) + dkj;
        if (via < d(i, j)) d(i, j) = via;
      }
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (d(i, j) == kInf) {
        throw DisconnectedGraphError(
            "no path between samples " + std::to_string(i) + " and " +
            std::to_string(j));
      }
    }
  }
  return GeodesicMatrix{std::move(d)};
}

DataMatrix double_center(const GeodesicMatrix& geo) {
  const Eigen::MatrixXd& d = geo.distances;
  const Eigen::Index m = d.rows();
  if (m == 0 || d.cols() != m) {
    throw ArgumentError("geodesic matrix must be square and non-empty");
  }
  const Eigen::MatrixXd sq = d.array().square();
  const Eigen::VectorXd row_mean = sq.rowwise().mean();
  const double grand_mean = sq.mean();
  Eigen::MatrixXd s(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const double v = -0.5 * (sq(i, j) - row_mean(i) - row_mean(j) + grand_mean);
      s(i, j) = v;
      s(j, i) = v;  // mirrored so the result is exactly symmetric
    }
  }
  return DataMatrix(std::move(s));
}

IsomapResult isomap_embed(const DataMatrix& x, Eigen::Index k_neighbors,
                          Eigen::Index dims) {
  const Eigen::Index m = x.rows();
  if (dims < 1 || dims > m) {
    throw ArgumentError("embedding dimension " + std::to_string(dims) +
                        " outside [1, " + std::to_string(m) + "]");
  }
  const DataMatrix gram =
      double_center(geodesics(knn_graph(x, k_neighbors)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram.values());
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed to converge");
  }
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();  // ascending
  std::vector<Eigen::Index> order(m);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return std::abs(eigenvalues[a]) > std::abs(eigenvalues[b]);
                   });
  Eigen::VectorXd spectrum_values(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    spectrum_values[r] = std::abs(eigenvalues[order[r]]);
  }
  Eigen::MatrixXd embedding(m, dims);
  for (Eigen::Index r = 0; r < dims; ++r) {
    Eigen::VectorXd v = solver.eigenvectors().col(order[r]);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    embedding.col(r) = std::sqrt(std::max(eigenvalues[order[r]], 0.0)) * v;
  }
  return IsomapResult{DataMatrix(std::move(embedding)),
                      Spectrum(std::move(spectrum_values), SpectrumSource::isomap)};
}

}  // namespace dimest
