#include "rfnn/serialize.hpp"

#include "rfnn/error.hpp"

namespace rfnn {
namespace {

using nlohmann::json;

json map_to_json(const AffineMap& map) {
  return {{"source_min", map.source_min},
          {"source_max", map.source_max},
          {"target_lo", map.target.lo},
          {"target_hi", map.target.hi}};
}

AffineMap map_from_json(const json& j) {
  AffineMap map;
  map.source_min = j.at("source_min").get<double>();
  map.source_max = j.at("source_max").get<double>();
  map.target.lo = j.at("target_lo").get<double>();
  map.target.hi = j.at("target_hi").get<double>();
  return map;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& arr, std::size_t expected, const char* key) {
  if (!arr.is_array() || arr.size() != expected) {
    throw InvalidInputError(std::string("network JSON: field '") + key +
                            "' has wrong length");
  }
  Vector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

}  // namespace

json normalization_to_json(const NormalizationSpec& spec) {
  json inputs = json::array();
  for (const auto& map : spec.inputs) inputs.push_back(map_to_json(map));
  return {{"inputs", inputs}, {"output", map_to_json(spec.output)}};
}

NormalizationSpec normalization_from_json(const json& doc) {
  NormalizationSpec spec;
  for (const auto& j : doc.at("inputs")) spec.inputs.push_back(map_from_json(j));
  spec.output = map_from_json(doc.at("output"));
  return spec;
}

json network_to_json(const TrainedNetwork& net) {
  net.validate();
  const auto n = net.hidden.weights.rows();
  const auto m = net.hidden.weights.cols();
  json a = json::array();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) a.push_back(net.hidden.weights(j, i));
  }
  return {{"format", "rfnn-network"},
          {"version", 1},
          {"n", n},
          {"m", m},
          {"A", a},
          {"b", vector_to_json(net.hidden.biases)},
          {"beta", vector_to_json(net.readout.beta)},
          {"normalization", normalization_to_json(net.normalization)}};
}

TrainedNetwork network_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "rfnn-network") {
      throw InvalidInputError("network JSON: unknown format tag");
    }
    const auto n = doc.at("n").get<std::size_t>();
    const auto m = doc.at("m").get<std::size_t>();
    const Vector flat = vector_from_json(doc.at("A"), n * m, "A");
    TrainedNetwork net;
    net.hidden.weights.resize(static_cast<Eigen::Index>(n),
                              static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        net.hidden.weights(static_cast<Eigen::Index>(j),
                           static_cast<Eigen::Index>(i)) =
            flat[static_cast<Eigen::Index>(j * m + i)];
      }
    }
    net.hidden.biases = vector_from_json(doc.at("b"), m, "b");
    net.readout.beta = vector_from_json(doc.at("beta"), m, "beta");
    net.normalization = normalization_from_json(doc.at("normalization"));
    net.validate();
    return net;
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("network JSON: ") + e.what());
  }
}

std::string serialize_network(const TrainedNetwork& net) {
  return network_to_json(net).dump(2);
}

TrainedNetwork deserialize_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("network JSON: ") + e.what());
  }
  return network_from_json(doc);
}

}  // namespace rfnn
