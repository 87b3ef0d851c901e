#pragma once

#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric/errors.hpp"
#include "toric/fan.hpp"

namespace toric {

using json = nlohmann::ordered_json;

/// External fan description: a ray list and the maximal cones as ray-index
/// lists.  The on-disk format is JSON with keys dim, rays, cones and the
/// optional name and labels.
struct FanFile {
  std::size_t dim = 0;
  std::vector<IntVec> rays;
  std::vector<std::vector<int>> cones;
  std::string name;
  std::map<std::string, std::string> labels;
};

inline FanFile parse_fan_json(const json& j, const std::string& context) {
  auto fail = [&context](const std::string& message) -> ParseError {
    return ParseError(context + ": " + message);
  };
  if (!j.is_object()) throw fail("fan description must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw fail("missing integer field 'dim'");
  if (!j.contains("rays") || !j["rays"].is_array())
    throw fail("missing array field 'rays'");
  if (!j.contains("cones") || !j["cones"].is_array())
    throw fail("missing array field 'cones'");

  FanFile file;
  long long dim = j["dim"].get<long long>();
  if (dim < 0) throw fail("'dim' must be non-negative");
  file.dim = static_cast<std::size_t>(dim);

  std::size_t ray_index = 0;
  for (const json& ray : j["rays"]) {
    if (!ray.is_array() || ray.size() != file.dim)
      throw fail("ray " + std::to_string(ray_index) + " must be a vector of length " +
                 std::to_string(file.dim));
    IntVec v;
    for (const json& entry : ray) {
      if (!entry.is_number_integer())
        throw fail("ray " + std::to_string(ray_index) + " has a non-integer entry");
      v.emplace_back(entry.get<long long>());
    }
    file.rays.push_back(std::move(v));
    ++ray_index;
  }

  std::size_t cone_index = 0;
  for (const json& cone : j["cones"]) {
    if (!cone.is_array())
      throw fail("cone " + std::to_string(cone_index) + " must be an index list");
    std::vector<int> indices;
    for (const json& entry : cone) {
      if (!entry.is_number_integer())
        throw fail("cone " + std::to_string(cone_index) + " has a non-integer index");
      long long v = entry.get<long long>();
      if (v < 0 || v >= static_cast<long long>(file.rays.size()))
        throw fail("cone " + std::to_string(cone_index) + " references ray " +
                   std::to_string(v) + " but only " + std::to_string(file.rays.size()) +
                   " rays are defined");
      indices.push_back(static_cast<int>(v));
    }
    file.cones.push_back(std::move(indices));
    ++cone_index;
  }

  if (j.contains("name")) {
    if (!j["name"].is_string()) throw fail("'name' must be a string");
    file.name = j["name"].get<std::string>();
  }
  if (j.contains("labels")) {
    if (!j["labels"].is_object()) throw fail("'labels' must be an object");
    for (const auto& [key, value] : j["labels"].items()) {
      if (!value.is_string()) throw fail("label '" + key + "' must be a string");
      file.labels[key] = value.get<std::string>();
    }
  }
  return file;
}

inline FanFile read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON (" + e.what() + ")");
  }
  return parse_fan_json(j, path);
}

inline Fan build_fan(const FanFile& file) {
  return Fan::from_ray_indices(file.dim, file.rays, file.cones);
}

/// Parses and validates a fan file in one step.
inline Fan load_fan(const std::string& path) { return build_fan(read_fan_file(path)); }

inline json fan_file_to_json(const FanFile& file) {
  json j;
  j["dim"] = file.dim;
  json rays = json::array();
  for (const IntVec& r : file.rays) {
    json ray = json::array();
    for (const Int& x : r) {
      if (x > std::numeric_limits<long long>::max() ||
          x < std::numeric_limits<long long>::min())
        throw ParseError("ray coordinate out of the serializable integer range");
      ray.push_back(x.convert_to<long long>());
    }
    rays.push_back(std::move(ray));
  }
  j["rays"] = std::move(rays);
  json cones = json::array();
  for (const auto& c : file.cones) cones.push_back(c);
  j["cones"] = std::move(cones);
  if (!file.name.empty()) j["name"] = file.name;
  if (!file.labels.empty()) {
    json labels = json::object();
    for (const auto& [k, v] : file.labels) labels[k] = v;
    j["labels"] = std::move(labels);
  }
  return j;
}

/// Canonical external form of a fan: the sorted global ray list and the
/// maximal cones as sorted index lists.
inline FanFile fan_to_file(const Fan& fan, const std::string& name) {
  FanFile file;
  file.dim = fan.ambient_rank();
  file.name = name;
  std::map<IntVec, int> index;
  for (int id : fan.maximal())
    for (const IntVec& r : fan.cone(id).rays()) index.emplace(r, 0);
  int next = 0;
  for (auto& [ray, idx] : index) {
    idx = next++;
    file.rays.push_back(ray);
  }
  for (int id : fan.maximal()) {
    std::vector<int> cone;
    for (const IntVec& r : fan.cone(id).rays()) cone.push_back(index.at(r));
    std::sort(cone.begin(), cone.end());
    file.cones.push_back(std::move(cone));
  }
  return file;
}

inline void write_fan_file(const std::string& path, const FanFile& file) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << fan_file_to_json(file).dump(2) << "\n";
}

}  // namespace toric
