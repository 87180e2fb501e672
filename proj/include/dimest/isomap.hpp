#pragma once

#include <Eigen/Core>

#include "dimest/matrix.hpp"
#include "dimest/spectrum.hpp"

namespace dimest {

/// Symmetric k-nearest-neighbor graph. distances(i, j) is the Euclidean
/// distance when i-j is an edge, +infinity otherwise, 0 on the diagonal.
/// Edges are the union of both directions (i in kNN(j) or j in kNN(i)).
struct NeighborGraph {
  Eigen::MatrixXd distances;
};

/// All-pairs shortest-path distances along the neighbor graph.
struct GeodesicMatrix {
  Eigen::MatrixXd distances;
};

struct IsomapResult {
  DataMatrix embedding;  // samples x dims
  Spectrum spectrum;     // |eigenvalues| of the centered Gram matrix, descending
};

/// Builds the kNN graph. Requires 1 <= k < samples. Distance ties are broken
/// by lower sample index.
NeighborGraph knn_graph(const DataMatrix& x, Eigen::Index k);

/// Floyd-Warshall shortest paths. Throws DisconnectedGraphError (naming an
/// unreachable pair) when the graph is not connected.
GeodesicMatrix geodesics(const NeighborGraph& graph);

/// Classical MDS double centering of squared geodesic distances:
/// S = -1/2 * J * D^2 * J with J = I - 11^T/n. The result is symmetric.
DataMatrix double_center(const GeodesicMatrix& geo);

/// Full pipeline: kNN graph, geodesics, double centering, eigendecomposition.
/// The spectrum holds |eigenvalues| sorted descending; embedding coordinate j
/// is sqrt(max(eigenvalue_j, 0)) times the j-th eigenvector.
/// Requires 1 <= dims <= samples.
IsomapResult isomap_embed(const DataMatrix& x, Eigen::Index k_neighbors,
                          Eigen::Index dims);

}  // namespace dimest
