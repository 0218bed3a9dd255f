#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "trustclust/data/types.hpp"

namespace trustclust {

struct KMeansOptions {
  int k = 2;
  std::uint64_t seed = 0;
  int n_restarts = 10;
  int max_iters = 300;
};

/// Result of clustering `n` points (rows). Labels follow the lexicographic order of the
/// centroids, so equal partitions always receive equal labels.
struct ClusterModel {
  int k = 0;
  Eigen::MatrixXd centroids;  // k x d
  std::vector<int> labels;    // one per point
  double wcss = 0.0;
  double silhouette = 0.0;
  std::vector<double> wcss_trace;  // per Lloyd iteration of the winning restart
  std::vector<Archetype> names;    // filled by name_clusters for k == 2

  std::vector<int> cluster_sizes() const;
};

/// k-means++ seeding, Lloyd iterations, best of `n_restarts` by WCSS.
/// Throws Error{TooFewPoints} if k exceeds the number of points, Error{InvalidArgument} if k < 1.
ClusterModel kmeans(const Eigen::MatrixXd& points, const KMeansOptions& options);

double within_cluster_sum_of_squares(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                                     int k);

/// Index of the nearest centroid (lowest index on ties).
int nearest_centroid(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& point);

/// Mean silhouette coefficient with Euclidean distances. Singleton clusters contribute 0, as does
/// a point whose intra- and nearest inter-cluster mean distances are both 0.
/// Throws Error{SingleCluster} when fewer than two clusters are populated.
double silhouette(const Eigen::MatrixXd& points, const std::vector<int>& labels);

struct SelectKResult {
  int k = 0;
  ClusterModel model;
  std::vector<std::pair<int, double>> scores;  // (k, silhouette)
};

/// Chooses k in [k_min, k_max] with the largest silhouette, smaller k on ties.
SelectKResult select_k(const Eigen::MatrixXd& points, int k_min, int k_max, std::uint64_t seed,
                       int n_restarts = 10, int max_iters = 300);

/// Names a two-cluster model: higher mean initial trust is Confident. Ties fall to the higher
/// mean trust-building average without pedestrians, then the lower index.
/// `features` holds raw feature rows aligned with model.labels. Throws Error{NotBinary}.
ClusterModel name_clusters(ClusterModel model, const Eigen::MatrixXd& features);

/// Chance-corrected agreement of two labelings of the same points.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace trustclust
