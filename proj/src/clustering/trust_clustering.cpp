#include "trustclust/clustering/trust_clustering.hpp"

namespace trustclust {

TrustClustering fit_trust_clustering(const Eigen::MatrixXd& features,
                                     const TrustClusteringOptions& options) {
  TrustClustering tc;
  tc.standardizer = fit_standardizer(features);
  const Eigen::MatrixXd z = apply_standardizer(tc.standardizer, features);
  tc.pca = fit_pca(z, options.n_components);
  tc.scores = project(tc.pca, z);
  tc.model = kmeans(tc.scores, KMeansOptions{options.k, options.seed, options.n_restarts, options.max_iters});
  if (tc.model.k == 2) tc.model = name_clusters(std::move(tc.model), features);
  return tc;
}

Eigen::MatrixXd embed(const TrustClustering& clustering, const Eigen::MatrixXd& features) {
  return project(clustering.pca, apply_standardizer(clustering.standardizer, features));
}

std::vector<int> assign_clusters(const TrustClustering& clustering, const Eigen::MatrixXd& features) {
  const Eigen::MatrixXd scores = embed(clustering, features);
  std::vector<int> labels(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i)
    labels[static_cast<std::size_t>(i)] = nearest_centroid(clustering.model.centroids, scores.row(i));
  return labels;
}

}  // namespace trustclust
