#pragma once

#include <string>

#include <json.hpp>

#include "rfnn/model.hpp"

namespace rfnn {

/// JSON document for a trained network:
///
///   { "format": "rfnn-network", "version": 1, "n": .., "m": ..,
///     "A": [row-major n*m], "b": [m], "beta": [m],
///     "normalization": { "inputs": [{source_min, source_max, target_lo,
///                                    target_hi}], "output": {...} } }
///
/// Reals are written in shortest round-trip decimal form, so parsing the
/// text back reproduces every bit.
nlohmann::json network_to_json(const TrainedNetwork& net);
TrainedNetwork network_from_json(const nlohmann::json& doc);

std::string serialize_network(const TrainedNetwork& net);
TrainedNetwork deserialize_network(const std::string& text);

nlohmann::json normalization_to_json(const NormalizationSpec& spec);
NormalizationSpec normalization_from_json(const nlohmann::json& doc);

}  // namespace rfnn
