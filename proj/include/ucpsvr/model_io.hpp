#pragma once

#include <optional>
#include <string>

#include "ucpsvr/scaling.hpp"
#include "ucpsvr/svr.hpp"

namespace ucpsvr {

struct StoredModel {
    SvrModel model;
    std::optional<ScalingParams> feature_scaling;
    std::optional<ScalingParams> target_scaling;
};

// Versioned plain-text format; doubles are rendered with full round-trip
// precision so save/load preserves every bit.
std::string serialize_model(const StoredModel& stored);
StoredModel deserialize_model(const std::string& text);

void save_model(const std::string& path, const StoredModel& stored);
StoredModel load_model(const std::string& path);

}  // namespace ucpsvr
