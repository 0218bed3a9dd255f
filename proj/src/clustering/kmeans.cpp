#include "trustclust/clustering/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "trustclust/features/features.hpp"
#include "trustclust/util/error.hpp"

namespace trustclust {

namespace {

using Eigen::Index;

struct RunResult {
  Eigen::MatrixXd centroids;
  std::vector<int> labels;
  double wcss = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
};

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

Eigen::MatrixXd plus_plus_seeds(const Eigen::MatrixXd& points, int k, std::mt19937_64& rng) {
  const Index n = points.rows();
  Eigen::MatrixXd centroids(k, points.cols());
  std::uniform_int_distribution<Index> pick(0, n - 1);
  centroids.row(0) = points.row(pick(rng));

  Eigen::VectorXd d2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index chosen = 0;
    if (total > 0.0) {
      double target = unit(rng) * total;
      chosen = n - 1;
      for (Index i = 0; i < n; ++i) {
        target -= d2(i);
        if (target < 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centroids.row(c) = points.row(chosen);
    d2 = d2.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

void update_centroids(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                      Eigen::MatrixXd& centroids) {
  const int k = static_cast<int>(centroids.rows());
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
  std::vector<int> counts(k, 0);
  for (Index i = 0; i < points.rows(); ++i) {
    sums.row(labels[i]) += points.row(i);
    ++counts[labels[i]];
  }
  for (int c = 0; c < k; ++c)
    if (counts[c] > 0) centroids.row(c) = sums.row(c) / counts[c];
}

/// Moves the point farthest from its centroid into each empty cluster.
void repair_empty_clusters(const Eigen::MatrixXd& points, std::vector<int>& labels,
                           Eigen::MatrixXd& centroids) {
  const int k = static_cast<int>(centroids.rows());
  while (true) {
    std::vector<int> counts(k, 0);
    for (int l : labels) ++counts[l];
    auto empty = std::find(counts.begin(), counts.end(), 0);
    if (empty == counts.end()) return;
    Index farthest = -1;
    double best = -1.0;
    for (Index i = 0; i < points.rows(); ++i) {
      if (counts[labels[i]] < 2) continue;
      const double d = (points.row(i) - centroids.row(labels[i])).squaredNorm();
      if (d > best) {
        best = d;
        farthest = i;
      }
    }
    if (farthest < 0) return;  // unreachable while k <= n
    const int target = static_cast<int>(empty - counts.begin());
    labels[farthest] = target;
    centroids.row(target) = points.row(farthest);
  }
}

RunResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids, int max_iters) {
  const Index n = points.rows();
  RunResult run;
  run.labels.assign(n, -1);
  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<int> next(n);
    for (Index i = 0; i < n; ++i) next[i] = nearest_centroid(centroids, points.row(i));
    repair_empty_clusters(points, next, centroids);
    const bool stable = next == run.labels;
    run.labels = std::move(next);
    update_centroids(points, run.labels, centroids);
    run.trace.push_back(within_cluster_sum_of_squares(points, run.labels, static_cast<int>(centroids.rows())));
    if (stable) break;
  }
  run.centroids = std::move(centroids);
  run.wcss = run.trace.back();
  return run;
}

/// Relabels clusters so centroids appear in lexicographic order.
void canonicalize(RunResult& run) {
  const int k = static_cast<int>(run.centroids.rows());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto ra = run.centroids.row(a);
    const auto rb = run.centroids.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  std::vector<int> new_label(k);
  Eigen::MatrixXd sorted(k, run.centroids.cols());
  for (int pos = 0; pos < k; ++pos) {
    new_label[order[pos]] = pos;
    sorted.row(pos) = run.centroids.row(order[pos]);
  }
  for (int& l : run.labels) l = new_label[l];
  run.centroids = std::move(sorted);
}

}  // namespace

std::vector<int> ClusterModel::cluster_sizes() const {
  std::vector<int> sizes(k, 0);
  for (int l : labels) ++sizes[l];
  return sizes;
}

int nearest_centroid(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& point) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - point).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

double within_cluster_sum_of_squares(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                                     int k) {
  Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(k, points.cols());
  update_centroids(points, labels, centroids);
  double total = 0.0;
  for (Index i = 0; i < points.rows(); ++i) total += (points.row(i) - centroids.row(labels[i])).squaredNorm();
  return total;
}

ClusterModel kmeans(const Eigen::MatrixXd& points, const KMeansOptions& options) {
  if (options.k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (options.k > points.rows())
    throw Error(ErrorCode::TooFewPoints, "k = " + std::to_string(options.k) + " exceeds " +
                                             std::to_string(points.rows()) + " points");
  RunResult best;
  for (int r = 0; r < std::max(1, options.n_restarts); ++r) {
    auto rng = restart_rng(options.seed, r);
    auto run = lloyd(points, plus_plus_seeds(points, options.k, rng), std::max(1, options.max_iters));
    if (run.wcss < best.wcss) best = std::move(run);
  }
  canonicalize(best);

  ClusterModel model;
  model.k = options.k;
  model.centroids = std::move(best.centroids);
  model.labels = std::move(best.labels);
  model.wcss = best.wcss;
  model.wcss_trace = std::move(best.trace);
  if (model.k >= 2) model.silhouette = silhouette(points, model.labels);
  return model;
}

double silhouette(const Eigen::MatrixXd& points, const std::vector<int>& labels) {
  const Index n = points.rows();
  if (static_cast<Index>(labels.size()) != n)
    throw Error(ErrorCode::LengthMismatch, "one label per point required");
  const int k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<int> sizes(std::max(k, 0), 0);
  for (int l : labels) ++sizes[l];
  if (std::count_if(sizes.begin(), sizes.end(), [](int s) { return s > 0; }) < 2)
    throw Error(ErrorCode::SingleCluster, "silhouette needs at least two populated clusters");

  double total = 0.0;
  std::vector<double> dist_sum(k);
  for (Index i = 0; i < n; ++i) {
    const int own = labels[i];
    if (sizes[own] == 1) continue;
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      dist_sum[labels[j]] += (points.row(i) - points.row(j)).norm();
    }
    const double a = dist_sum[own] / (sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c)
      if (c != own && sizes[c] > 0) b = std::min(b, dist_sum[c] / sizes[c]);
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

SelectKResult select_k(const Eigen::MatrixXd& points, int k_min, int k_max, std::uint64_t seed,
                       int n_restarts, int max_iters) {
  if (k_min < 2 || k_max < k_min) throw Error(ErrorCode::InvalidArgument, "k range must satisfy 2 <= k_min <= k_max");
  if (k_max > points.rows()) throw Error(ErrorCode::TooFewPoints, "k_max exceeds the number of points");
  SelectKResult result;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = k_min; k <= k_max; ++k) {
    auto model = kmeans(points, KMeansOptions{k, seed, n_restarts, max_iters});
    result.scores.emplace_back(k, model.silhouette);
    if (model.silhouette > best) {
      best = model.silhouette;
      result.k = k;
      result.model = std::move(model);
    }
  }
  return result;
}

ClusterModel name_clusters(ClusterModel model, const Eigen::MatrixXd& features) {
  if (model.k != 2) throw Error(ErrorCode::NotBinary, "naming requires exactly two clusters");
  if (features.rows() != static_cast<Index>(model.labels.size()) || features.cols() < kFeatureCount)
    throw Error(ErrorCode::LengthMismatch, "feature rows must align with cluster labels");
  std::array<double, 2> init{0, 0}, build{0, 0};
  std::array<int, 2> counts{0, 0};
  for (Index i = 0; i < features.rows(); ++i) {
    const int c = model.labels[i];
    init[c] += features(i, static_cast<int>(Feature::InitialTrust));
    build[c] += features(i, static_cast<int>(Feature::BuildAvgNoPedestrian));
    ++counts[c];
  }
  for (int c = 0; c < 2; ++c) {
    if (counts[c] == 0) throw Error(ErrorCode::SingleCluster, "cannot name an empty cluster");
    init[c] /= counts[c];
    build[c] /= counts[c];
  }
  int confident = 0;
  if (init[1] > init[0] || (init[1] == init[0] && build[1] > build[0])) confident = 1;
  model.names.assign(2, Archetype::Skeptical);
  model.names[confident] = Archetype::Confident;
  return model;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "labelings differ in length");
  const auto n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto pairs = [](double m) { return m * (m - 1.0) / 2.0; };
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [_, m] : table) index += pairs(m);
  for (const auto& [_, m] : rows) sum_rows += pairs(m);
  for (const auto& [_, m] : cols) sum_cols += pairs(m);
  const double expected = sum_rows * sum_cols / pairs(n);
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace trustclust
