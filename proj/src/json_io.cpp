#include "cgeo/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cgeo {

namespace {

GraphDesc parse_graph(const json& j) {
  GraphDesc g;
  if (!j.contains("vertices") || !j.contains("edges"))
    throw ValidationError("graph description needs vertices and edges");
  g.n = static_cast<Index>(j.at("vertices").size());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() < 2)
      throw ValidationError("graph edge must be [i, j] or [i, j, w]");
    g.edges.push_back({e.at(0).get<Index>(), e.at(1).get<Index>()});
    g.weights.push_back(e.size() > 2 ? e.at(2).get<Scalar>() : 1.0);
  }
  if (j.contains("rays"))
    for (const auto& r : j.at("rays"))
      g.rays.push_back(r.get<std::vector<Index>>());
  if (j.contains("ray_labels"))
    g.ray_labels = j.at("ray_labels").get<std::vector<std::string>>();
  return g;
}

PlaneDesc parse_plane(const json& j) {
  PlaneDesc p;
  std::string preset = j.value("preset", "A");
  if (preset != "A" && preset != "B")
    throw ValidationError("plane_with_rays preset must be A or B");
  p.preset = preset[0];
  p.epsilon = j.value("epsilon", 0.25);
  p.truncation = j.value("truncation_radius", 40.0);
  p.pitch = j.value("pitch", 0.25);
  p.m_max = j.value("m_max", -1);
  return p;
}

CayleyDesc parse_cayley(const json& j) {
  CayleyDesc c;
  std::string preset = j.value("preset", "F2");
  if (preset == "F2")
    c.preset = CayleyDesc::Preset::F2;
  else if (preset == "Z2")
    c.preset = CayleyDesc::Preset::Z2;
  else if (preset == "Z2_star_Z")
    c.preset = CayleyDesc::Preset::Z2starZ;
  else
    throw ValidationError("cayley preset must be F2, Z2 or Z2_star_Z");
  c.radius = j.value("radius", 4);
  return c;
}

}  // namespace

SpaceDescription parse_space_description(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw ValidationError("space description needs a type field");
  SpaceDescription sd;
  sd.name = j.value("name", "");
  const std::string type = j.at("type").get<std::string>();
  if (type == "graph")
    sd.desc = parse_graph(j);
  else if (type == "plane_with_rays")
    sd.desc = parse_plane(j);
  else if (type == "cayley")
    sd.desc = parse_cayley(j);
  else
    throw ValidationError("unknown space type: " + type);
  if (sd.name.empty()) sd.name = type;
  return sd;
}

SpaceDescription load_space_description(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open space file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("bad JSON in " + path + ": " + e.what());
  }
  return parse_space_description(j);
}

std::vector<std::pair<std::string, std::string>> parse_map_pairs(const json& j) {
  if (!j.is_object() || !j.contains("pairs"))
    throw ValidationError("boundary map JSON needs a pairs field");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2)
      throw ValidationError("each map pair must be [from, to]");
    out.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  }
  return out;
}

json to_json(const GaugeTable& t) {
  json cells = json::array();
  for (size_t i = 0; i < t.grid.cells.size(); ++i) {
    json c;
    c["K"] = t.grid.cells[i].first;
    c["C"] = t.grid.cells[i].second;
    c["lower"] = t.lower[static_cast<Index>(i)];
    if (t.has_upper()) c["upper"] = t.upper[static_cast<Index>(i)];
    c["no_witness"] = static_cast<bool>(t.no_witness[i]);
    cells.push_back(c);
  }
  json out;
  out["cells"] = cells;
  out["certified"] = t.certified;
  return out;
}

json to_json(const ContractionReport& r) {
  json out;
  out["constant"] = r.constant;
  out["tested_balls"] = r.tested_balls;
  out["empty"] = r.empty;
  if (!r.empty) {
    out["witness_center"] = r.witness_center;
    out["witness_radius"] = r.witness_radius;
  }
  return out;
}

json to_json(const DeltaResult& r, Scalar epsilon) {
  json out;
  out["delta"] = r.delta;
  out["degenerate"] = r.degenerate;
  out["epsilon"] = epsilon;
  out["witness"] = r.witness;
  return out;
}

json to_json(const BoundaryStratum& st, const Space& s) {
  json out;
  out["basepoint"] = st.basepoint;
  out["gauge_label"] = st.gauge_label;
  out["epsilon"] = st.epsilon;
  out["delta"] = st.delta;
  out["inner_radius"] = st.inner_radius;
  json members = json::array();
  for (int r : st.members) members.push_back(s.rays[r].label);
  out["members"] = members;
  return out;
}

namespace {
const char* kind_name(ModulusKind k) {
  switch (k) {
    case ModulusKind::TwoStable: return "two_stable";
    case ModulusKind::BasetriangleStable: return "basetriangle_stable";
    case ModulusKind::Biholder: return "biholder";
    case ModulusKind::PowerQS: return "power_qs";
    case ModulusKind::StronglyQC: return "strongly_qc";
  }
  return "?";
}
}  // namespace

json to_json(const ModulusReport& r) {
  json out;
  out["kind"] = kind_name(r.kind);
  out["constants"] = r.constants;
  out["sample_count"] = r.sample_count;
  out["worst_witness"] = r.worst_witness;
  out["flagged_empty"] = r.flagged_empty;
  out["infeasible"] = r.infeasible;
  json rows = json::array();
  for (const auto& row : r.table) rows.push_back(row);
  out["table"] = rows;
  return out;
}

json to_json(const ExtensionMap& e, const Space& src, const Space& dst) {
  json out;
  out["R"] = e.R;
  out["center_diameter"] = e.center_diameter;
  out["n0_label"] = e.n0_label;
  out["n1_label"] = e.n1_label;
  json triples = json::array();
  for (size_t i = 0; i < e.triples.size(); ++i) {
    json t;
    json labels = json::array();
    for (int r : e.triples[i].triple) labels.push_back(src.rays[r].label);
    t["triple"] = labels;
    t["center"] = e.triples[i].center;
    t["K_value"] = e.triples[i].k_value;
    t["image_center"] = e.image_triples[i].center;
    triples.push_back(t);
  }
  out["triples"] = triples;
  json values = json::array();
  for (size_t i = 0; i < e.sample.size(); ++i)
    values.push_back(json::array({e.sample[i], e.values[i]}));
  out["values"] = values;
  (void)dst;
  return out;
}

json to_json(const CenterSet& cs, const Space& s) {
  json out;
  json labels = json::array();
  for (int r : cs.triple) labels.push_back(r >= 0 ? s.rays[r].label : "?");
  out["triple"] = labels;
  out["k"] = cs.k;
  out["K_value"] = cs.k_value;
  out["diameter"] = cs.diameter;
  out["points"] = cs.points;
  return out;
}

std::string witness_csv(const GaugeTable& t) {
  std::ostringstream csv;
  csv << "K,C,point,ray,height,x,y,vertex\n";
  for (size_t cell = 0; cell < t.witnesses.size(); ++cell) {
    const auto& path = t.witnesses[cell];
    for (size_t p = 0; p < path.size(); ++p) {
      const SpacePoint& q = path[p];
      csv << format_csv_value(t.grid.cells[cell].first) << ','
          << format_csv_value(t.grid.cells[cell].second) << ',' << p << ','
          << q.ray << ',' << format_csv_value(q.height) << ','
          << format_csv_value(q.pos.x()) << ',' << format_csv_value(q.pos.y())
          << ',' << q.id << '\n';
    }
  }
  return csv.str();
}

std::string config_hash(const json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json report_envelope(const json& config, json body) {
  json out;
  out["toolkit_version"] = kToolkitVersion;
  out["config_hash"] = config_hash(config);
  out["config"] = config;
  out["report"] = std::move(body);
  return out;
}

std::string format_csv_value(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << contents;
}

}  // namespace cgeo
