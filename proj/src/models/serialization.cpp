#include "trustclust/models/serialization.hpp"

#include <json.hpp>

#include "trustclust/util/error.hpp"

namespace trustclust {

namespace {

using nlohmann::json;

json scale_json(const TrustScale& s) { return json{{"mean", s.mean}, {"sd", s.sd}}; }

TrustScale scale_from(const json& j) { return TrustScale{j.at("mean").get<double>(), j.at("sd").get<double>()}; }

template <typename F>
auto parse_or_throw(std::string_view text, F&& build) {
  try {
    return build(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("model file: ") + e.what());
  }
}

}  // namespace

std::string to_json(const LrModel& model) {
  json j;
  j["model"] = "linear_regression";
  j["regressors"] = {"intercept",        "visibility_lag1", "transparency_lag1", "pedestrian_lag1",
                     "reliability_lag1", "trust_lag1",      "takeover_lag1",     "visibility_lag2",
                     "transparency_lag2", "pedestrian_lag2", "reliability_lag2",  "trust_lag2",
                     "takeover_lag2"};
  j["coefficients"] = std::vector<double>(model.coefficients.data(),
                                          model.coefficients.data() + model.coefficients.size());
  j["trust_scale"] = scale_json(model.scale);
  j["ridge_applied"] = model.ridge_applied;
  return j.dump(2) + "\n";
}

std::string to_json(const SsModelParams& p) {
  json j;
  j["model"] = "state_space";
  j["A"] = p.A;
  j["B"] = p.B;
  j["B_inputs"] = {"visibility", "transparency", "pedestrian", "reliability", "constant"};
  j["C"] = p.C;
  j["C_b"] = p.C_b;
  j["Q"] = p.Q;
  j["x0_mean"] = p.x0_mean;
  j["x0_var"] = p.x0_var;
  j["constant_input"] = p.constant_input;
  j["trust_scale"] = scale_json(p.scale);
  return j.dump(2) + "\n";
}

LrModel lr_model_from_json(std::string_view text) {
  return parse_or_throw(text, [](const json& j) {
    LrModel m;
    const auto coef = j.at("coefficients").get<std::vector<double>>();
    if (coef.size() != kLrCoefficients) throw Error(ErrorCode::InvalidSpec, "LR model needs 13 coefficients");
    m.coefficients = Eigen::Map<const Eigen::VectorXd>(coef.data(), static_cast<Eigen::Index>(coef.size()));
    m.scale = scale_from(j.at("trust_scale"));
    m.ridge_applied = j.value("ridge_applied", false);
    return m;
  });
}

SsModelParams ss_params_from_json(std::string_view text) {
  return parse_or_throw(text, [](const json& j) {
    SsModelParams p;
    p.A = j.at("A").get<double>();
    p.B = j.at("B").get<std::array<double, 5>>();
    p.C = j.at("C").get<double>();
    p.C_b = j.at("C_b").get<double>();
    p.Q = j.at("Q").get<double>();
    p.x0_mean = j.at("x0_mean").get<double>();
    p.x0_var = j.at("x0_var").get<double>();
    p.constant_input = j.value("constant_input", true);
    p.scale = scale_from(j.at("trust_scale"));
    try {
      validate_ss_params(p);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidSpec, e.what());
    }
    return p;
  });
}

}  // namespace trustclust
