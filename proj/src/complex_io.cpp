#include "curvcx/complex_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "curvcx/errors.hpp"

namespace curvcx {

using nlohmann::json;

namespace {

json degrees_to_json(const std::map<std::int32_t, Degree>& m) {
  json out = json::array();
  for (auto [id, d] : m) out.push_back(json::array({id, d == kInfiniteDegree ? json("inf") : json(d)}));
  return out;
}

std::map<std::int32_t, Degree> degrees_from_json(const json& j, const char* what) {
  std::map<std::int32_t, Degree> m;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 2) throw ParseError(std::string("true_degrees.") + what + " rows must be [id, degree]");
    auto id = row[0].get<std::int32_t>();
    Degree d;
    if (row[1].is_string()) {
      if (row[1].get<std::string>() != "inf") throw ParseError("degree strings must be \"inf\"");
      d = kInfiniteDegree;
    } else {
      d = row[1].get<Degree>();
    }
    if (!m.emplace(id, d).second) throw ParseError(std::string("repeated ") + what + " id " + std::to_string(id));
  }
  return m;
}

}  // namespace

RawComplex parse_complex(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("not JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError("top level must be an object");
    for (const char* key : {"version", "vertices", "edges", "faces"}) {
      if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    }
    RawComplex raw;
    raw.version = j.at("version").get<int>();
    if (raw.version != 1) throw ParseError("unsupported version " + std::to_string(raw.version));
    raw.vertex_count = j.at("vertices").get<std::int64_t>();
    raw.edges = j.at("edges").get<std::vector<std::array<VertexId, 2>>>();
    raw.faces = j.at("faces").get<std::vector<std::vector<VertexId>>>();
    if (j.contains("apartments")) raw.apartments = j.at("apartments").get<std::vector<std::vector<FaceId>>>();
    if (j.contains("truncation")) {
      const json& t = j.at("truncation");
      Truncation tr;
      tr.trusted_faces = t.at("trusted_faces").get<std::vector<FaceId>>();
      if (t.contains("true_degrees")) {
        const json& d = t.at("true_degrees");
        if (d.contains("vertex")) tr.true_degrees.vertex = degrees_from_json(d.at("vertex"), "vertex");
        if (d.contains("edge")) tr.true_degrees.edge = degrees_from_json(d.at("edge"), "edge");
        if (d.contains("face")) tr.true_degrees.face = degrees_from_json(d.at("face"), "face");
      }
      raw.truncation = std::move(tr);
    }
    if (j.contains("center")) raw.center = j.at("center").get<FaceId>();
    if (j.contains("trusted_radius")) raw.trusted_radius = j.at("trusted_radius").get<int>();
    if (j.contains("family")) raw.family = j.at("family").get<std::string>();
    return raw;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field: ") + e.what());
  }
}

std::string emit_complex(const RawComplex& raw) {
  json j;
  j["version"] = raw.version;
  j["vertices"] = raw.vertex_count;
  j["edges"] = raw.edges;
  j["faces"] = raw.faces;
  j["apartments"] = raw.apartments;
  if (raw.truncation) {
    json t;
    t["trusted_faces"] = raw.truncation->trusted_faces;
    t["true_degrees"] = {{"vertex", degrees_to_json(raw.truncation->true_degrees.vertex)},
                         {"edge", degrees_to_json(raw.truncation->true_degrees.edge)},
                         {"face", degrees_to_json(raw.truncation->true_degrees.face)}};
    j["truncation"] = std::move(t);
  }
  if (raw.center) j["center"] = *raw.center;
  if (raw.trusted_radius) j["trusted_radius"] = *raw.trusted_radius;
  if (!raw.family.empty()) j["family"] = raw.family;
  return j.dump() + "\n";
}

RawComplex read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_complex(ss.str());
}

void write_complex_file(const std::string& path, const RawComplex& raw) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << emit_complex(raw);
  if (!out) throw Error("write failed for " + path);
}

}  // namespace curvcx
