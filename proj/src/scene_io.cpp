#include "plg/scene_io.hpp"

#include <fstream>
#include <sstream>

namespace plg {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const char* kind_name(ComplexKind k) {
  switch (k) {
    case ComplexKind::ClosedPseudomanifold: return "closed";
    case ComplexKind::PseudomanifoldWithBoundary: return "with-boundary";
    case ComplexKind::General: return "general";
  }
  return "general";
}

ComplexKind parse_kind(const std::string& s) {
  if (s == "closed") return ComplexKind::ClosedPseudomanifold;
  if (s == "with-boundary") return ComplexKind::PseudomanifoldWithBoundary;
  if (s == "general") return ComplexKind::General;
  throw ParseError("unknown complex kind '" + s + "'");
}

ordered_json point_json(const Point& p) {
  ordered_json a = ordered_json::array();
  for (const auto& x : p) a.push_back(to_string(x));
  return a;
}

ordered_json scalars_json(const std::vector<Scalar>& v) { return point_json(v); }

Scalar scalar_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.dump());
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_float()) throw ParseError(where + ": floating-point value " + j.dump() + " (use \"p/q\")");
  throw ParseError(where + ": expected a rational, got " + j.dump());
}

Point point_from(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim)
    throw ParseError(where + ": expected " + std::to_string(dim) + " coordinates");
  Point p;
  for (std::size_t k = 0; k < dim; ++k) p.push_back(scalar_from(j[k], where));
  return p;
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

int int_from(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer, got " + j.dump());
  return j.get<int>();
}

ordered_json map_json(const PLMap& m, bool with_ambient) {
  ordered_json o;
  o["dim"] = m.domain.dim;
  o["kind"] = kind_name(m.domain.kind);
  if (with_ambient) o["ambient_dim"] = m.ambient_dim;
  ordered_json verts = ordered_json::array();
  for (const auto& p : m.images) verts.push_back(point_json(p));
  o["vertices"] = std::move(verts);
  o["cells"] = m.domain.cells;
  return o;
}

PLMap map_from(const json& j, int ambient, const std::string& where) {
  Complex c;
  c.dim = int_from(field(j, "dim", where), where + ".dim");
  c.kind = j.contains("kind") ? parse_kind(j.at("kind").get<std::string>()) : ComplexKind::General;
  const json& verts = field(j, "vertices", where);
  if (!verts.is_array()) throw ParseError(where + ".vertices: expected an array");
  std::vector<Point> images;
  for (std::size_t v = 0; v < verts.size(); ++v)
    images.push_back(point_from(verts[v], static_cast<std::size_t>(ambient),
                                where + ".vertices[" + std::to_string(v) + "]"));
  c.vertex_count = static_cast<int>(images.size());
  const json& cells = field(j, "cells", where);
  if (!cells.is_array()) throw ParseError(where + ".cells: expected an array");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const std::string w = where + ".cells[" + std::to_string(k) + "]";
    if (!cells[k].is_array()) throw ParseError(w + ": expected an index list");
    Cell cell;
    for (const auto& x : cells[k]) {
      const int v = int_from(x, w);
      if (v < 0 || v >= c.vertex_count) throw ParseError(w + ": vertex index " + std::to_string(v) + " out of range");
      cell.push_back(v);
    }
    c.cells.push_back(std::move(cell));
  }
  try {
    return make_map(std::move(c), std::move(images));
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

bool same_map(const MapRef& a, const MapRef& b) { return a && b && *a == *b; }

}  // namespace

ordered_json scene_to_json(const SceneFile& f) {
  const Scene& s = f.scene;
  ordered_json o;
  o["format"] = "plgauss-scene";
  o["version"] = 1;
  o["ambient_dim"] = s.ambient_dim;
  ordered_json comps = ordered_json::array();
  for (const auto& c : s.components) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["role"] = to_string(c.role);
    const ordered_json mj = map_json(*c.map, false);
    for (const auto& [k, v] : mj.items()) cj[k] = v;
    comps.push_back(std::move(cj));
  }
  o["components"] = std::move(comps);
  if (s.hex) {
    ordered_json faces = ordered_json::array();
    for (const auto& face : s.hex->faces) {
      ordered_json fj;
      fj["k"] = face.k;
      fj["value"] = face.value;
      fj["sign"] = face.sign;
      ordered_json maps = ordered_json::array();
      for (const auto& m : face.maps) maps.push_back(map_json(*m, true));
      fj["maps"] = std::move(maps);
      faces.push_back(std::move(fj));
    }
    o["hex_family"] = {{"faces", std::move(faces)}};
  }
  o["metadata"] = f.metadata;
  return o;
}

SceneFile scene_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scene: expected a JSON object");
  SceneFile f;
  Scene& s = f.scene;
  s.ambient_dim = int_from(field(j, "ambient_dim", "scene"), "scene.ambient_dim");
  if (s.ambient_dim < 1) throw ParseError("scene.ambient_dim must be positive");

  auto read_components = [&](const char* key, Role default_role) {
    if (!j.contains(key)) return;
    const json& arr = j.at(key);
    if (!arr.is_array()) throw ParseError(std::string("scene.") + key + ": expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string where = std::string(key) + "[" + std::to_string(k) + "]";
      Component c;
      c.name = arr[k].value("name", std::string(key) + std::to_string(k));
      try {
        c.role = arr[k].contains("role") ? parse_role(arr[k].at("role").get<std::string>()) : default_role;
      } catch (const std::exception& e) {
        throw ParseError(where + ": " + e.what());
      }
      c.map = share(map_from(arr[k], s.ambient_dim, where));
      s.components.push_back(std::move(c));
    }
  };
  read_components("components", Role::LinkComponent);
  read_components("spanning_surfaces", Role::SpanningSurface);

  // null_homotopies: [{"of": name, "apex": point}] -> cone of the named map
  if (j.contains("null_homotopies")) {
    const json& arr = j.at("null_homotopies");
    if (!arr.is_array()) throw ParseError("scene.null_homotopies: expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string where = "null_homotopies[" + std::to_string(k) + "]";
      const std::string of = field(arr[k], "of", where).get<std::string>();
      const Component* base = s.find(of);
      if (!base) throw ParseError(where + ": unknown component '" + of + "'");
      Point apex = point_from(field(arr[k], "apex", where), static_cast<std::size_t>(s.ambient_dim), where + ".apex");
      try {
        s.components.push_back({of + ".cone", Role::NullHomotopy, share(cone(*base->map, apex))});
      } catch (const std::exception& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
  }

  if (j.contains("hex_family")) {
    const json& faces = field(j.at("hex_family"), "faces", "hex_family");
    if (!faces.is_array() || faces.size() != 6) throw ParseError("hex_family.faces: expected six faces");
    HexFamily h;
    for (std::size_t k = 0; k < faces.size(); ++k) {
      const std::string where = "hex_family.faces[" + std::to_string(k) + "]";
      HexFace face;
      face.k = int_from(field(faces[k], "k", where), where);
      face.value = int_from(field(faces[k], "value", where), where);
      face.sign = int_from(field(faces[k], "sign", where), where);
      if (face.k < 0 || face.k > 2 || (face.value != 0 && face.value != 1) || (face.sign != 1 && face.sign != -1))
        throw ParseError(where + ": k must be 0..2, value 0 or 1, sign +-1");
      const json& maps = field(faces[k], "maps", where);
      if (!maps.is_array() || maps.size() != 3) throw ParseError(where + ".maps: expected three maps");
      for (int i = 0; i < 3; ++i) {
        const std::string mw = where + ".maps[" + std::to_string(i) + "]";
        int amb = int_from(field(maps[i], "ambient_dim", mw), mw);
        face.maps[i] = share(map_from(maps[i], amb, mw));
      }
      h.faces.push_back(std::move(face));
    }
    s.hex = std::move(h);
  }
  if (j.contains("metadata")) f.metadata = j.at("metadata");
  return f;
}

std::string serialize_scene(const SceneFile& f) { return scene_to_json(f).dump(2) + "\n"; }

SceneFile parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return scene_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scene: ") + e.what());
  }
}

SceneFile read_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

bool scenes_equal(const Scene& a, const Scene& b) {
  if (a.ambient_dim != b.ambient_dim || a.components.size() != b.components.size()) return false;
  for (std::size_t k = 0; k < a.components.size(); ++k) {
    const auto &x = a.components[k], &y = b.components[k];
    if (x.name != y.name || x.role != y.role || !same_map(x.map, y.map)) return false;
  }
  if (a.hex.has_value() != b.hex.has_value()) return false;
  if (!a.hex) return true;
  if (a.hex->faces.size() != b.hex->faces.size()) return false;
  for (std::size_t k = 0; k < a.hex->faces.size(); ++k) {
    const auto &x = a.hex->faces[k], &y = b.hex->faces[k];
    if (x.k != y.k || x.value != y.value || x.sign != y.sign) return false;
    for (int i = 0; i < 3; ++i)
      if (!same_map(x.maps[i], y.maps[i])) return false;
  }
  return true;
}

ordered_json report_to_json(const InvariantReport& r) {
  ordered_json o;
  o["invariant"] = r.invariant;
  o["value"] = r.value;
  o["parity"] = r.is_parity;
  ordered_json ws = ordered_json::array();
  for (const auto& w : r.witnesses) {
    ordered_json wj;
    wj["cells"] = w.cells;
    ordered_json bary = ordered_json::array();
    for (const auto& b : w.bary) bary.push_back(scalars_json(b));
    wj["bary"] = std::move(bary);
    wj["aux"] = scalars_json(w.aux);
    wj["sign"] = w.sign;
    ws.push_back(std::move(wj));
  }
  o["witnesses"] = std::move(ws);
  o["certificates"] = r.certificates;
  ordered_json dirs = ordered_json::array();
  for (const auto& d : r.directions) dirs.push_back(point_json(d));
  o["directions"] = std::move(dirs);
  ordered_json apexes = ordered_json::array();
  for (const auto& a : r.apexes) apexes.push_back(point_json(a));
  o["apexes"] = std::move(apexes);
  o["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
  o["tuples_examined"] = r.tuples_examined;
  o["timing_ms"] = r.timing_ms;
  return o;
}

ordered_json validation_to_json(const Validation& v) {
  ordered_json o;
  o["check"] = v.check;
  o["ok"] = v.ok;
  o["where"] = v.where;
  ordered_json pts = ordered_json::array();
  for (const auto& p : v.points) pts.push_back(point_json(p));
  o["points"] = std::move(pts);
  o["tuples_examined"] = v.tuples_examined;
  return o;
}

ordered_json degeneracy_to_json(const DegeneracyReport& r) {
  ordered_json o;
  o["kind"] = to_string(r.kind);
  o["cells"] = r.cells;
  o["describe"] = r.describe();
  return o;
}

}  // namespace plg
