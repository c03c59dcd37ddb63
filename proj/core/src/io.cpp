// Copyright 2026 The bilq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bilq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bilq/errors.hpp"

namespace bilq {
namespace {

using nlohmann::json;

std::string role_name(AxisRole role) {
  return role == AxisRole::kFrequency ? "frequency" : "space";
}

AxisRole role_from_name(const std::string& name, const std::string& path) {
  if (name == "space") return AxisRole::kSpace;
  if (name == "frequency") return AxisRole::kFrequency;
  throw UsageError("read_field: unknown axis role '" + name + "' in " + path);
}

// Writes bytes to `path` via a temporary sibling and rename.
void write_binary_file(const std::string& path, const char* data,
                       std::size_t bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out.write(data, static_cast<std::streamsize>(bytes));
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + tmp + " -> " + path);
}

json parse_json(const std::string& text, const std::string& path) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw UsageError("malformed JSON in " + path);
  }
  return doc;
}

std::string format_csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json field_sidecar(const SampledField& field, const std::string& data_path) {
  json sidecar;
  sidecar["format_version"] = kFieldFormatVersion;
  sidecar["data_file"] =
      std::filesystem::path(data_path).filename().string();
  sidecar["axes"] = json::array();
  for (int axis = 0; axis < field.grid().rank(); ++axis) {
    const AxisSpec& spec = field.grid().axis(axis);
    sidecar["axes"].push_back(
        {{"half_width", spec.half_width}, {"points", spec.points}});
  }
  sidecar["axis_roles"] = json::array();
  for (AxisRole role : field.roles()) {
    sidecar["axis_roles"].push_back(role_name(role));
  }
  return sidecar;
}

void write_field_files(const SampledField& field, const json& sidecar,
                       const std::string& stem) {
  // Raw samples: interleaved (re, im) float64 pairs in row-major axis order.
  // Complex<double> has exactly that layout, so the value array can be
  // written directly on a little-endian host.
  static_assert(sizeof(Complex) == 2 * sizeof(double));
  write_binary_file(
      stem + ".f64", reinterpret_cast<const char*>(field.values().data()),
      field.size() * sizeof(Complex));
  write_text_file(stem + ".json", sidecar.dump(2) + "\n");
}

}  // namespace

void write_field(const SampledField& field, const std::string& stem) {
  write_field_files(field, field_sidecar(field, stem + ".f64"), stem);
}

void write_field(const PhaseSpaceField& field, const std::string& stem) {
  json sidecar = field_sidecar(field.base(), stem + ".f64");
  char hex[20];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(field.window_id()));
  sidecar["window_id"] = std::string(hex);
  write_field_files(field.base(), sidecar, stem);
}

SampledField read_field(const std::string& stem) {
  std::string sidecar_path = stem;
  if (sidecar_path.size() < 5 ||
      sidecar_path.substr(sidecar_path.size() - 5) != ".json") {
    sidecar_path += ".json";
  }
  const json sidecar =
      parse_json(read_text_file(sidecar_path), sidecar_path);

  if (!sidecar.contains("format_version") ||
      !sidecar["format_version"].is_number_integer() ||
      sidecar["format_version"].get<int>() != kFieldFormatVersion) {
    throw UsageError("read_field: unsupported format_version in " +
                     sidecar_path);
  }
  if (!sidecar.contains("axes") || !sidecar["axes"].is_array() ||
      sidecar["axes"].empty()) {
    throw UsageError("read_field: missing axes in " + sidecar_path);
  }
  std::vector<AxisSpec> axes;
  for (const json& entry : sidecar["axes"]) {
    if (!entry.contains("half_width") || !entry.contains("points")) {
      throw UsageError("read_field: malformed axis entry in " + sidecar_path);
    }
    axes.emplace_back(entry["half_width"].get<double>(),
                      entry["points"].get<int>());
  }
  GridSpec grid(axes);

  std::vector<AxisRole> roles;
  if (sidecar.contains("axis_roles")) {
    if (!sidecar["axis_roles"].is_array() ||
        static_cast<int>(sidecar["axis_roles"].size()) != grid.rank()) {
      throw UsageError("read_field: axis_roles must list one role per axis in " +
                       sidecar_path);
    }
    for (const json& entry : sidecar["axis_roles"]) {
      roles.push_back(role_from_name(entry.get<std::string>(), sidecar_path));
    }
  } else {
    roles.assign(static_cast<std::size_t>(grid.rank()), AxisRole::kSpace);
  }

  if (!sidecar.contains("data_file") || !sidecar["data_file"].is_string()) {
    throw UsageError("read_field: missing data_file in " + sidecar_path);
  }
  const std::filesystem::path data_path =
      std::filesystem::path(sidecar_path).parent_path() /
      sidecar["data_file"].get<std::string>();

  std::ifstream in(data_path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open: " + data_path.string());
  const std::streamsize bytes = in.tellg();
  const std::size_t expected = grid.size() * sizeof(Complex);
  if (static_cast<std::size_t>(bytes) != expected) {
    throw UsageError("read_field: " + data_path.string() + " holds " +
                     std::to_string(bytes) + " bytes, expected " +
                     std::to_string(expected));
  }
  std::vector<Complex> values(grid.size());
  in.seekg(0);
  in.read(reinterpret_cast<char*>(values.data()), bytes);
  if (!in) throw IoError("read failed: " + data_path.string());

  return SampledField(std::move(grid), std::move(values), std::move(roles));
}

void write_csv_slice(const SampledField& field, int axis,
                     const std::string& path) {
  if (axis < 0 || axis >= field.grid().rank()) {
    throw UsageError("write_csv_slice: axis " + std::to_string(axis) +
                     " out of range for rank " +
                     std::to_string(field.grid().rank()));
  }
  std::vector<int> index(static_cast<std::size_t>(field.grid().rank()));
  for (int j = 0; j < field.grid().rank(); ++j) {
    index[static_cast<std::size_t>(j)] = field.grid().axis(j).points / 2;
  }
  std::string body = "axis,value,modulus\n";
  const AxisSpec& spec = field.grid().axis(axis);
  for (int j = 0; j < spec.points; ++j) {
    index[static_cast<std::size_t>(axis)] = j;
    body += std::to_string(j);
    body += ",";
    body += format_csv_double(spec.coordinate(j));
    body += ",";
    body += format_csv_double(std::abs(field.at(index)));
    body += "\n";
  }
  write_text_file(path, body);
}

std::string weight_model_to_json(const WeightModel& model) {
  json doc;
  doc["groups"] = json::array();
  for (const WeightGroup& group : model.groups()) {
    doc["groups"].push_back({{"axes", group.axes},
                             {"exp_rate", group.exp_rate},
                             {"inv_exp_power", group.inv_exp_power},
                             {"poly_degree", group.poly_degree}});
  }
  return doc.dump(2) + "\n";
}

WeightModel weight_model_from_json(const std::string& text) {
  const json doc = parse_json(text, "<weight model>");
  if (!doc.contains("groups") || !doc["groups"].is_array()) {
    throw UsageError("weight model JSON must hold a 'groups' array");
  }
  std::vector<WeightGroup> groups;
  for (const json& entry : doc["groups"]) {
    WeightGroup group;
    if (!entry.contains("axes") || !entry["axes"].is_array()) {
      throw UsageError("weight model group must list 'axes'");
    }
    group.axes = entry["axes"].get<std::vector<int>>();
    group.exp_rate = entry.value("exp_rate", 0.0);
    group.inv_exp_power = entry.value("inv_exp_power", 1.0);
    group.poly_degree = entry.value("poly_degree", 0.0);
    groups.push_back(std::move(group));
  }
  return WeightModel(std::move(groups));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open: " + path);
  const std::streamsize bytes = in.tellg();
  std::string content(static_cast<std::size_t>(bytes), '\0');
  in.seekg(0);
  in.read(content.data(), bytes);
  if (!in) throw IoError("read failed: " + path);
  return content;
}

void write_text_file(const std::string& path, const std::string& content) {
  write_binary_file(path, content.data(), content.size());
}

}  // namespace bilq
