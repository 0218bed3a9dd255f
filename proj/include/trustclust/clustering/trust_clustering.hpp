#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "trustclust/clustering/kmeans.hpp"
#include "trustclust/clustering/pca.hpp"
#include "trustclust/clustering/standardizer.hpp"

namespace trustclust {

struct TrustClusteringOptions {
  Eigen::Index n_components = 3;
  int k = 2;
  std::uint64_t seed = 0;
  int n_restarts = 10;
  int max_iters = 300;
};

/// Standardize -> PCA -> k-means on a trust feature matrix. Two-cluster models are named.
struct TrustClustering {
  StandardizationParams standardizer;
  PcaModel pca;
  ClusterModel model;
  Eigen::MatrixXd scores;  // PCA scores of the fitting rows
};

TrustClustering fit_trust_clustering(const Eigen::MatrixXd& features,
                                     const TrustClusteringOptions& options);

/// Maps raw feature rows into the fitted PCA space.
Eigen::MatrixXd embed(const TrustClustering& clustering, const Eigen::MatrixXd& features);

/// Nearest fitted centroid for each raw feature row.
std::vector<int> assign_clusters(const TrustClustering& clustering, const Eigen::MatrixXd& features);

}  // namespace trustclust
