// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "trustclust/trustclust.hpp"

using namespace trustclust;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_double(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

Dataset population(std::uint64_t seed) {
  PopulationSpec spec;
  spec.seed = seed;
  return generate_population(spec);
}

std::vector<int> truth_labels(const Dataset& d) {
  std::vector<int> out;
  for (const auto& r : d.participants) out.push_back(static_cast<int>(*r.ground_truth_cluster));
  return out;
}

Outcome improvement_arithmetic() {
  const auto t0 = Clock::now();
  const std::vector<std::pair<double, double>> lr{{102, 0.442}, {36, 0.384}};
  const std::vector<std::pair<double, double>> ss{{102, 0.381}, {36, 0.289}};
  const std::vector<std::pair<double, double>> f1{{102, 0.468}, {36, 0.650}};
  const double a = weighted_improvement(0.602, lr, Direction::LowerBetter);
  const double b = weighted_improvement(0.518, ss, Direction::LowerBetter);
  const double c = weighted_improvement(0.423, f1, Direction::HigherBetter);
  const double secs = seconds_since(t0);
  const bool ok = std::abs(a - 29.1) <= 0.05 && std::abs(b - 31.1) <= 0.05 && std::abs(c - 21.7) <= 0.3 && secs < 1.0;
  return {ok, "LR " + fmt_double(a, 2) + "%, SS MSE " + fmt_double(b, 2) + "%, SS F1 " + fmt_double(c, 2) + "%"};
}

Outcome segmentation() {
  using V = std::vector<int>;
  const auto g = segment_phases(builtin_catalog().at(DriveType::G));
  const auto d = segment_phases(builtin_catalog().at(DriveType::D));
  const bool ok = g.building == V{1, 2, 3, 4, 5} && g.error_events == V{6, 10} && g.repair == V{7, 8, 9} &&
                  d.building == V{1, 2} && d.error_events == V{3, 4, 5, 10} && d.repair == V{6, 7, 8, 9};
  return {ok, "drives G and D"};
}

Outcome cluster_recovery() {
  const auto t0 = Clock::now();
  int ari_hits = 0, k_hits = 0;
  std::string aris;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = population(seed);
    const auto fm = feature_matrix(d);
    TrustClusteringOptions o;
    o.seed = seed;
    const auto tc = fit_trust_clustering(fm.values, o);
    const double ari = adjusted_rand_index(truth_labels(d), tc.model.labels);
    ari_hits += ari >= 0.8;
    k_hits += select_k(tc.scores, 2, 6, seed).k == 2;
    aris += (aris.empty() ? "" : " ") + fmt_double(ari, 3);
  }
  const double secs = seconds_since(t0);
  return {ari_hits >= 9 && k_hits >= 8 && secs < 30.0,
          "ARI>=0.8 on " + std::to_string(ari_hits) + "/10 [" + aris + "], k=2 on " + std::to_string(k_hits) +
              "/10, " + fmt_double(secs, 2) + " s"};
}

Outcome customization_benefit() {
  const auto t0 = Clock::now();
  bool ok = true;
  double td_min = std::numeric_limits<double>::infinity(), demo_max = -std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EvalOptions o;
    o.seed = seed;
    o.fit_lr = false;
    const auto report = evaluate_report(population(seed), {std::begin(kAllCriteria), std::end(kAllCriteria)}, o);
    for (const auto& [c, imp] : report.improvements) {
      if (!imp.ss_mse_gain_pct) {
        ok = false;
        continue;
      }
      if (c == Criterion::TrustDynamics) {
        td_min = std::min(td_min, *imp.ss_mse_gain_pct);
        ok = ok && *imp.ss_mse_gain_pct >= 10.0;
      } else {
        demo_max = std::max(demo_max, *imp.ss_mse_gain_pct);
        ok = ok && *imp.ss_mse_gain_pct < 5.0;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 120.0, "SS MSE gain: trust-dynamics min " + fmt_double(td_min, 1) + "%, demographic max " +
                                  fmt_double(demo_max, 1) + "%, " + fmt_double(secs, 2) + " s"};
}

Outcome kmeans_oracle() {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> size(3, 8);
  std::normal_distribution<double> n(0.0, 3.0);
  int hits = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const int pts_n = size(rng);
    Eigen::MatrixXd pts(pts_n, 2);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) pts.row(i) << n(rng), n(rng);
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << (pts_n - 1)); ++mask) {
      std::vector<int> labels(pts_n, 0);
      for (int i = 1; i < pts_n; ++i) labels[i] = (mask >> (i - 1)) & 1u;
      best = std::min(best, within_cluster_sum_of_squares(pts, labels, 2));
    }
    const auto m = kmeans(pts, {2, static_cast<std::uint64_t>(inst), 10, 300});
    hits += std::abs(m.wcss - best) <= 1e-9 * std::max(1.0, best);
  }
  return {hits >= 49, std::to_string(hits) + "/50 optimal"};
}

Outcome pca_correctness() {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n;
  Eigen::MatrixXd x(200, 12);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = n(rng) * (1.0 + 0.5 * j) + (j > 0 ? 0.3 * x(i, j - 1) : 0.0);
  const auto m = fit_pca(x, 12);
  const double err = (reconstruct(m, project(m, x)) - x).cwiseAbs().maxCoeff();
  bool descending = true;
  for (Eigen::Index i = 1; i < m.explained_variance_ratio.size(); ++i)
    descending = descending && m.explained_variance_ratio(i) <= m.explained_variance_ratio(i - 1);
  const double sum_dev = std::abs(m.explained_variance_ratio.sum() - 1.0);

  Eigen::MatrixXd r1(50, 4);
  const Eigen::RowVector4d dir(1.0, -2.0, 0.5, 3.0);
  for (Eigen::Index i = 0; i < r1.rows(); ++i) r1.row(i) = n(rng) * dir;
  const double first = fit_pca(r1, 1).explained_variance_ratio(0);

  const bool ok = err < 1e-8 && descending && sum_dev <= 1e-10 && std::abs(first - 1.0) <= 1e-10;
  std::ostringstream d;
  d << "reconstruction " << err << ", |sum-1| " << sum_dev << ", rank-1 first ratio deviation " << std::abs(first - 1.0);
  return {ok, d.str()};
}

Outcome ekf_numerics() {
  double worst_grad = 0.0;
  const double h = 1e-5;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -10.0 + 0.01 * i;
    const double fd = (sigmoid(x + h) - sigmoid(x - h)) / (2 * h);
    worst_grad = std::max(worst_grad, std::abs(sigmoid_grad(x) - fd));
  }
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> A(-1.2, 1.2), B(-2, 2), C(-10, 10), Q(0, 2), V(1e-6, 5);
  std::bernoulli_distribution coin(0.5);
  double min_var = std::numeric_limits<double>::infinity();
  for (int draw = 0; draw < 10000; ++draw) {
    SsModelParams p;
    p.A = A(rng);
    for (auto& b : p.B) b = B(rng);
    p.C = C(rng);
    p.C_b = C(rng);
    p.Q = Q(rng);
    p.x0_mean = B(rng);
    p.x0_var = V(rng);
    std::vector<IntersectionInputs> u(kIntersections);
    std::vector<double> obs(kIntersections);
    for (int k = 0; k < kIntersections; ++k) {
      u[k] = {double(coin(rng)), double(coin(rng)), double(coin(rng)), double(coin(rng))};
      obs[k] = coin(rng);
    }
    for (const auto& s : ekf_run(p, u, obs)) min_var = std::min(min_var, s.variance_posterior);
  }
  const bool ok = worst_grad < 1e-8 && min_var >= 0.0 && sigmoid(0.0) == 0.5;
  std::ostringstream d;
  d << "max |grad - fd| " << worst_grad << ", min posterior variance " << min_var << ", Sig(0) " << sigmoid(0.0);
  return {ok, d.str()};
}

Outcome ss_recovery() {
  bool ok = true;
  double worst = 0.0;
  for (std::uint64_t seed : {101u, 202u, 303u}) {
    StateSpacePopulationSpec spec;
    spec.n_participants = 500;
    spec.seed = seed;
    const auto fit = fit_ss(generate_state_space_population(spec).participants);
    const auto& p = fit.params;
    const auto& t = spec.truth;
    // estimates mapped from standardized report units back to the generator's latent units
    const double alpha = p.scale.sd / spec.trust_scale;
    const double beta = (p.scale.mean - spec.trust_center) / spec.trust_scale;
    const double C = p.C / alpha;
    std::vector<std::pair<double, double>> pairs{{p.A, t.A}, {C, t.C}, {p.C_b - C * beta, t.C_b}};
    for (int j = 0; j < 4; ++j) pairs.emplace_back(alpha * p.B[j], t.B[j]);
    pairs.emplace_back(alpha * p.B[4] + beta * (1.0 - p.A), t.B[4]);
    for (auto [est, truth] : pairs) {
      if (std::abs(truth) <= 0.1) continue;
      const double rel = std::abs(est - truth) / std::abs(truth);
      worst = std::max(worst, rel);
      ok = ok && rel <= 0.10;
    }
  }
  return {ok, "worst relative error " + fmt_double(100.0 * worst, 2) + "% over 3 seeds"};
}

Outcome welch() {
  const std::vector<double> a{1, 2, 3, 4, 5}, b{2, 3, 4, 5, 6};
  const auto same = welch_ttest(a, a);
  const auto r = welch_ttest(a, b);
  // t = -1 on 8 degrees of freedom: p = 2 (1 - F_8(1)) = 0.3466
  const double hand = 0.3466;
  const bool ok = same.t_statistic == 0.0 && same.p_value == 1.0 && std::abs(r.t_statistic + 1.0) < 1e-12 &&
                  std::abs(r.p_value - hand) <= 1e-4;
  return {ok, "t " + fmt_double(r.t_statistic, 6) + ", dof " + fmt_double(r.degrees_of_freedom, 6) + ", p " +
                  fmt_double(r.p_value, 6)};
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"trustclust"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome determinism() {
  const auto root = fs::temp_directory_path() / "trustclust_acceptance_determinism";
  fs::remove_all(root);
  const auto data = root / "data", a = root / "a", b = root / "b";
  if (run_cli({"generate", "--out", data.string(), "--seed", "0"}) != 0) return {false, "generate failed"};
  if (run_cli({"pipeline", "--data", data.string(), "--out", a.string(), "--seed", "0"}) != 0 ||
      run_cli({"pipeline", "--data", data.string(), "--out", b.string(), "--seed", "0"}) != 0)
    return {false, "pipeline failed"};
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    if (!fs::exists(b / name) || read_file(a / name) != read_file(b / name))
      return {false, name.string() + " differs"};
    ++files;
  }
  fs::remove_all(root);
  return {files > 0, std::to_string(files) + " report files identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"weighted improvement arithmetic", improvement_arithmetic},
      {"phase segmentation", segmentation},
      {"cluster recovery", cluster_recovery},
      {"customization benefit", customization_benefit},
      {"k-means optimality", kmeans_oracle},
      {"PCA correctness", pca_correctness},
      {"EKF and sigmoid numerics", ekf_numerics},
      {"state-space parameter recovery", ss_recovery},
      {"Welch t-test", welch},
      {"pipeline determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %2zu %-32s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
