#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trustclust/data/catalog.hpp"
#include "trustclust/data/types.hpp"

namespace trustclust {

/// Affine map between the 0..100 report scale and z-units.
struct TrustScale {
  double mean = 0.0;
  double sd = 1.0;

  double standardize(double raw) const { return (raw - mean) / sd; }
  double destandardize(double z) const { return mean + sd * z; }
};

/// Mean and sample sd of every trust report in `records`; sd falls back to 1 for constant data.
TrustScale fit_trust_scale(std::span<const ParticipantRecord> records);

/// Binary encoding of one intersection's exogenous inputs (High / present = 1).
struct IntersectionInputs {
  double visibility = 0.0;
  double transparency = 0.0;
  double pedestrian = 0.0;
  double reliability = 0.0;
};

IntersectionInputs inputs_at(const DriveConfig& config, int intersection);

// ---------------------------------------------------------------------------------------------
// Two-lag linear regression

/// Regressor layout: intercept, then for lag 1 and lag 2 in turn
/// visibility, transparency, pedestrian, reliability, standardized trust, take-over.
inline constexpr int kLrCoefficients = 13;
inline constexpr int kFirstPredicted = 3;

struct LrModel {
  Eigen::VectorXd coefficients = Eigen::VectorXd::Zero(kLrCoefficients);
  TrustScale scale;
  bool ridge_applied = false;
};

Eigen::RowVectorXd lr_regressors(const ParticipantRecord& record, const DriveConfig& config,
                                 const TrustScale& scale, int intersection);

/// Throws Error{InsufficientData} with fewer than 14 samples.
LrModel fit_lr(std::span<const ParticipantRecord> records, const Catalog& catalog = builtin_catalog());

struct TrustPrediction {
  std::vector<int> intersections;
  std::vector<double> z;  // model z-units
  std::vector<double> raw;
};

/// One-step-ahead predictions for intersections 3..10 using reported lagged trust.
TrustPrediction predict_lr(const LrModel& model, const ParticipantRecord& record,
                           const Catalog& catalog = builtin_catalog());

// ---------------------------------------------------------------------------------------------
// State-space model with logistic take-over output
//
//   T[k] = A T[k-1] + B [v t p f 1]'      (inputs of intersection k)
//   P(take-over at k) = Sig(C T[k] + C_b)
//
// The state at intersection 1 is distributed N(x0_mean, x0_var).

struct SsModelParams {
  double A = 1.0;
  std::array<double, 5> B{};  // v, t, p, f, constant
  double C = 0.0;
  double C_b = 0.0;
  double Q = 0.0;
  double x0_mean = 0.0;
  double x0_var = 1.0;
  bool constant_input = true;
  TrustScale scale;
};

/// Throws Error{InvalidArgument} when Q < 0, x0_var <= 0 or any field is non-finite.
void validate_ss_params(const SsModelParams& params);

struct SsFitOptions {
  bool constant_input = true;
  int max_irls_iterations = 100;
  double irls_tolerance = 1e-8;
  double coefficient_cap = 20.0;
};

struct SsFit {
  SsModelParams params;
  bool separable = false;
  int irls_iterations = 0;
  std::vector<double> loglik_trace;  // accepted IRLS iterates, starting from the zero model
  std::vector<std::string> warnings;
};

/// Two-stage estimate: state equation by within-participant demeaning (A) and a pooled residual
/// fit (B, Q); output equation by logistic IRLS on reported trust (C, C_b).
/// Throws Error{InsufficientData} or Error{IrlsDiverged}.
SsFit fit_ss(std::span<const ParticipantRecord> records, const Catalog& catalog = builtin_catalog(),
             const SsFitOptions& options = {});

struct LogisticFit {
  double slope = 0.0;
  double intercept = 0.0;
  bool separable = false;
  int iterations = 0;
  std::vector<double> loglik_trace;
};

/// Logistic regression of binary labels on one covariate by IRLS with step halving.
LogisticFit fit_logistic(std::span<const double> x, std::span<const double> y, int max_iterations = 100,
                         double tolerance = 1e-8, double coefficient_cap = 20.0);

struct EkfState {
  double trust = 0.0;
  double variance = 1.0;
};

/// Scalar extended Kalman filter over trust, observing take-over through the sigmoid.
class TrustEkf {
public:
  explicit TrustEkf(const SsModelParams& params);

  /// Time update with the inputs of the next intersection.
  void predict(const IntersectionInputs& u);
  double takeover_probability() const;
  /// Measurement update with an observed take-over (1) or not (0).
  void update(double observation);

  const EkfState& state() const { return state_; }

private:
  SsModelParams params_;
  EkfState state_;
};

struct EkfStep {
  int intersection = 0;
  double trust_prior = 0.0;
  double variance_prior = 0.0;
  double takeover_probability = 0.0;
  bool takeover_predicted = false;
  double trust_posterior = 0.0;
  double variance_posterior = 0.0;
};

inline constexpr double kTakeoverThreshold = 0.5;

/// Runs the filter over a sequence of inputs and observed take-overs. Reported trust is never read.
/// Throws Error{NonFiniteState}.
std::vector<EkfStep> ekf_run(const SsModelParams& params, std::span<const IntersectionInputs> inputs,
                             std::span<const double> observations);

std::vector<EkfStep> ekf_run(const SsModelParams& params, const ParticipantRecord& record,
                             const Catalog& catalog = builtin_catalog());

}  // namespace trustclust
