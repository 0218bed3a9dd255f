#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "trustclust/models/least_squares.hpp"
#include "trustclust/models/sigmoid.hpp"
#include "trustclust/models/trust_models.hpp"
#include "trustclust/util/error.hpp"

namespace trustclust {

namespace {

constexpr double kMinMeasurementVariance = 1e-6;

double log_likelihood(std::span<const double> x, std::span<const double> y, double slope, double intercept) {
  double ll = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double eta = slope * x[i] + intercept;
    // log Sig(eta) = -log(1 + e^-eta), written to stay finite for large |eta|.
    const double log_p = -std::log1p(std::exp(-std::fabs(eta))) + std::min(eta, 0.0);
    const double log_q = log_p - eta;
    ll += y[i] * log_p + (1.0 - y[i]) * log_q;
  }
  return ll;
}

bool finite(const SsModelParams& p) {
  if (!std::isfinite(p.A) || !std::isfinite(p.C) || !std::isfinite(p.C_b) || !std::isfinite(p.Q) ||
      !std::isfinite(p.x0_mean) || !std::isfinite(p.x0_var))
    return false;
  return std::all_of(p.B.begin(), p.B.end(), [](double b) { return std::isfinite(b); });
}

}  // namespace

void validate_ss_params(const SsModelParams& params) {
  if (!finite(params)) throw Error(ErrorCode::InvalidArgument, "state-space parameters must be finite");
  if (params.Q < 0.0) throw Error(ErrorCode::InvalidArgument, "Q must be non-negative");
  if (!(params.x0_var > 0.0)) throw Error(ErrorCode::InvalidArgument, "x0_var must be positive");
  if (!(params.scale.sd > 0.0)) throw Error(ErrorCode::InvalidArgument, "trust scale sd must be positive");
}

namespace {

// With one covariate the likelihood has no maximizer exactly when the class ranges overlap in at
// most one point (or one class is absent).
bool separated(std::span<const double> x, std::span<const double> y) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo[2] = {inf, inf}, hi[2] = {-inf, -inf};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int c = y[i] > 0.5;
    lo[c] = std::min(lo[c], x[i]);
    hi[c] = std::max(hi[c], x[i]);
  }
  if (lo[0] > hi[0] || lo[1] > hi[1]) return true;
  return hi[0] <= lo[1] || hi[1] <= lo[0];
}

}  // namespace

LogisticFit fit_logistic(std::span<const double> x, std::span<const double> y, int max_iterations,
                         double tolerance, double coefficient_cap) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "covariate and label counts differ");
  LogisticFit fit;
  const bool diverges = separated(x, y);
  Eigen::Vector2d beta = Eigen::Vector2d::Zero();  // slope, intercept
  double ll = log_likelihood(x, y, 0.0, 0.0);
  fit.loglik_trace.push_back(ll);

  for (int iter = 0; iter < max_iterations; ++iter) {
    Eigen::Matrix2d info = Eigen::Matrix2d::Zero();
    Eigen::Vector2d score = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p = sigmoid(beta(0) * x[i] + beta(1));
      const double w = p * (1.0 - p);
      const Eigen::Vector2d xi(x[i], 1.0);
      info += w * xi * xi.transpose();
      score += (y[i] - p) * xi;
    }
    Eigen::Vector2d step;
    Eigen::LDLT<Eigen::Matrix2d> ldlt(info);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() && info.determinant() > 1e-12 * (1.0 + info.squaredNorm()))
      step = ldlt.solve(score);
    else
      step = score / static_cast<double>(std::max<std::size_t>(x.size(), 1));  // gradient fallback
    if (!step.allFinite()) throw Error(ErrorCode::IrlsDiverged, "non-finite IRLS step");

    // Halve until the likelihood does not decrease.
    double scale = 1.0;
    Eigen::Vector2d candidate = beta + step;
    double candidate_ll = log_likelihood(x, y, candidate(0), candidate(1));
    int halvings = 0;
    while (!(candidate_ll >= ll) && halvings < 40) {
      scale *= 0.5;
      candidate = beta + scale * step;
      candidate_ll = log_likelihood(x, y, candidate(0), candidate(1));
      ++halvings;
    }
    if (!(candidate_ll >= ll)) {
      if (!std::isfinite(ll)) throw Error(ErrorCode::IrlsDiverged, "log-likelihood is not finite");
      break;  // no ascent direction left: converged to working precision
    }

    fit.iterations = iter + 1;
    if (candidate.cwiseAbs().maxCoeff() > coefficient_cap) {
      beta = candidate.cwiseMax(-coefficient_cap).cwiseMin(coefficient_cap);
      fit.separable = true;
      fit.loglik_trace.push_back(std::max(ll, log_likelihood(x, y, beta(0), beta(1))));
      break;
    }
    const double change = candidate_ll - ll;
    beta = candidate;
    ll = candidate_ll;
    fit.loglik_trace.push_back(ll);
    if (!diverges && change < tolerance * (1.0 + std::fabs(ll))) break;
  }
  fit.separable = fit.separable || diverges;
  fit.slope = beta(0);
  fit.intercept = beta(1);
  return fit;
}

SsFit fit_ss(std::span<const ParticipantRecord> records, const Catalog& catalog, const SsFitOptions& options) {
  constexpr int transitions_per_record = kIntersections - 1;
  const auto n_records = static_cast<Eigen::Index>(records.size());
  const Eigen::Index n = n_records * transitions_per_record;
  if (n_records < 2 || n < 20)
    throw Error(ErrorCode::InsufficientData, "state-space fit needs at least 2 participants and 20 transitions");

  SsFit out;
  auto& params = out.params;
  params.constant_input = options.constant_input;
  params.scale = fit_trust_scale(records);

  // Stage 1: state equation.
  Eigen::MatrixXd within(n, 5);  // demeaned [T_k, v, t, p, f]
  Eigen::VectorXd within_y(n);
  Eigen::VectorXd lagged(n), next(n);
  Eigen::MatrixXd exogenous(n, options.constant_input ? 5 : 4);
  Eigen::Index row = 0;
  for (const auto& r : records) {
    const auto& config = drive_config(catalog, r.drive_type);
    const Eigen::Index start = row;
    for (int k = 1; k < kIntersections; ++k, ++row) {
      const auto u = inputs_at(config, k + 1);
      lagged(row) = params.scale.standardize(r.trust(k));
      next(row) = params.scale.standardize(r.trust(k + 1));
      exogenous.row(row).head(4) << u.visibility, u.transparency, u.pedestrian, u.reliability;
      if (options.constant_input) exogenous(row, 4) = 1.0;
    }
    const auto block = Eigen::seqN(start, transitions_per_record);
    within.col(0)(block) = lagged(block).array() - lagged(block).mean();
    for (int j = 0; j < 4; ++j)
      within.col(j + 1)(block) = exogenous.col(j)(block).array() - exogenous.col(j)(block).mean();
    within_y(block) = next(block).array() - next(block).mean();
  }

  // Time-invariant inputs vanish after demeaning; the ridge path leaves them at zero.
  params.A = least_squares(within, within_y, RidgePolicy::IfSingular, 1e-6, -1).coefficients(0);
  const Eigen::VectorXd residual_target = next - params.A * lagged;
  const auto pooled = least_squares(exogenous, residual_target, RidgePolicy::IfSingular, 1e-6,
                                    options.constant_input ? 4 : -1);
  params.B.fill(0.0);
  for (Eigen::Index j = 0; j < pooled.coefficients.size(); ++j) params.B[j] = pooled.coefficients(j);
  const Eigen::VectorXd resid = residual_target - exogenous * pooled.coefficients;
  const double dof = static_cast<double>(std::max<Eigen::Index>(n - exogenous.cols() - 1, 1));
  params.Q = resid.squaredNorm() / dof;

  // Initial state from intersection-1 reports.
  Eigen::VectorXd first(n_records);
  for (Eigen::Index i = 0; i < n_records; ++i) first(i) = params.scale.standardize(records[i].trust(1));
  params.x0_mean = first.mean();
  params.x0_var = std::max((first.array() - params.x0_mean).square().sum() / static_cast<double>(n_records - 1),
                           kMinMeasurementVariance);

  // Stage 2: output equation.
  std::vector<double> xs, ys;
  xs.reserve(records.size() * kIntersections);
  ys.reserve(records.size() * kIntersections);
  for (const auto& r : records)
    for (const auto& ev : r.events) {
      xs.push_back(params.scale.standardize(ev.trust));
      ys.push_back(ev.takeover ? 1.0 : 0.0);
    }
  const auto logistic = fit_logistic(xs, ys, options.max_irls_iterations, options.irls_tolerance,
                                     options.coefficient_cap);
  params.C = logistic.slope;
  params.C_b = logistic.intercept;
  out.separable = logistic.separable;
  out.irls_iterations = logistic.iterations;
  out.loglik_trace = logistic.loglik_trace;
  if (logistic.separable)
    out.warnings.push_back("SeparableData: take-over labels are separable; output coefficients capped at " +
                           std::to_string(options.coefficient_cap));
  if (pooled.ridge_applied)
    out.warnings.push_back("input map is rank deficient on this training set; ridge applied");
  return out;
}

TrustEkf::TrustEkf(const SsModelParams& params) : params_(params), state_{params.x0_mean, params.x0_var} {
  validate_ss_params(params_);
}

void TrustEkf::predict(const IntersectionInputs& u) {
  const auto& B = params_.B;
  double drive = B[0] * u.visibility + B[1] * u.transparency + B[2] * u.pedestrian + B[3] * u.reliability;
  if (params_.constant_input) drive += B[4];
  state_.trust = params_.A * state_.trust + drive;
  state_.variance = params_.A * params_.A * state_.variance + params_.Q;
}

double TrustEkf::takeover_probability() const { return sigmoid(params_.C * state_.trust + params_.C_b); }

void TrustEkf::update(double observation) {
  const double p = takeover_probability();
  const double H = params_.C * p * (1.0 - p);
  const double R = std::max(p * (1.0 - p), kMinMeasurementVariance);
  const double S = H * H * state_.variance + R;
  const double K = state_.variance * H / S;
  state_.trust += K * (observation - p);
  state_.variance = (1.0 - K * H) * state_.variance;
}

std::vector<EkfStep> ekf_run(const SsModelParams& params, std::span<const IntersectionInputs> inputs,
                             std::span<const double> observations) {
  if (inputs.size() != observations.size())
    throw Error(ErrorCode::LengthMismatch, "one observation per intersection required");
  TrustEkf ekf(params);
  std::vector<EkfStep> steps;
  steps.reserve(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (k > 0) ekf.predict(inputs[k]);
    EkfStep step;
    step.intersection = static_cast<int>(k) + 1;
    step.trust_prior = ekf.state().trust;
    step.variance_prior = ekf.state().variance;
    step.takeover_probability = ekf.takeover_probability();
    step.takeover_predicted = step.takeover_probability >= kTakeoverThreshold;
    ekf.update(observations[k]);
    step.trust_posterior = ekf.state().trust;
    step.variance_posterior = ekf.state().variance;
    if (!std::isfinite(step.trust_posterior) || !std::isfinite(step.variance_posterior))
      throw Error(ErrorCode::NonFiniteState, "filter state became non-finite at step " + std::to_string(k + 1));
    steps.push_back(step);
  }
  return steps;
}

std::vector<EkfStep> ekf_run(const SsModelParams& params, const ParticipantRecord& record, const Catalog& catalog) {
  const auto& config = drive_config(catalog, record.drive_type);
  std::vector<IntersectionInputs> inputs;
  std::vector<double> observations;
  for (int k = 1; k <= kIntersections; ++k) {
    inputs.push_back(inputs_at(config, k));
    observations.push_back(record.event(k).takeover ? 1.0 : 0.0);
  }
  return ekf_run(params, inputs, observations);
}

}  // namespace trustclust
