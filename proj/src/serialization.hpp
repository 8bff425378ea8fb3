#pragma once

#include <json.hpp>

#include "graphs.hpp"
#include "scores.hpp"

namespace rarenet {

using ordered_json = nlohmann::ordered_json;

ordered_json model_to_json(const GraphModel& model);
GraphModel model_from_json(const ordered_json& j);

ordered_json variant_to_json(const ScoreVariant& variant);
ScoreVariant variant_from_json(const ordered_json& j);

ordered_json seed_to_json(Seed seed);
Seed seed_from_json(const ordered_json& j);

ordered_json box_to_json(const Box& box);
Box box_from_json(const ordered_json& j);

ordered_json points_to_json(const PointConfig& config);
PointConfig points_from_json(const ordered_json& j, int expect_dim = 0);

ordered_json volume_to_json(const VolumeEstimate& est);

}  // namespace rarenet
