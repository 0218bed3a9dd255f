#pragma once

#include <string>
#include <string_view>

#include "trustclust/models/trust_models.hpp"

namespace trustclust {

/// JSON with every scalar written at round-trip precision.
std::string to_json(const LrModel& model);
std::string to_json(const SsModelParams& params);

/// Throws Error{InvalidSpec} on missing or mistyped fields.
LrModel lr_model_from_json(std::string_view text);
SsModelParams ss_params_from_json(std::string_view text);

}  // namespace trustclust
