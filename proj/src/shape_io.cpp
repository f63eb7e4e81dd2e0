#include "iso/shape_io.hpp"

#include "iso/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace iso {

namespace {

using nlohmann::json;

Point2 point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point(const Point2& p) { return json::array({p.x(), p.y()}); }

Eigen::VectorXd vector(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

json vector(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Shape parse(const json& j) {
  const auto type = field(j, "type").get<std::string>();
  if (type == "polygon") {
    std::vector<Point2> v;
    for (const auto& p : field(j, "vertices")) v.push_back(point(p));
    return Polygon(std::move(v));
  }
  if (type == "radial") {
    const Point2 c = j.contains("center") ? point(j["center"]) : Point2::Zero();
    const double scale = j.value("scale", 1.0);
    if (j.contains("fourier")) {
      const auto& f = j["fourier"];
      return RadialShape::from_fourier(vector(field(f, "cos")), vector(field(f, "sin")),
                                       field(f, "samples").get<int>(), c, scale);
    }
    return RadialShape(vector(field(j, "samples")), c, scale);
  }
  if (type == "stadium") return Stadium(field(j, "theta").get<double>());
  if (type == "composite") {
    std::vector<Disk> disks;
    for (const auto& d : field(j, "disks")) {
      disks.push_back({point(field(d, "center")), field(d, "radius").get<double>()});
    }
    std::vector<Segment> segments;
    if (j.contains("segments")) {
      for (const auto& s : j["segments"]) segments.push_back({point(field(s, "a")), point(field(s, "b"))});
    }
    return DiskSegmentComposite(std::move(disks), std::move(segments));
  }
  throw ValidationError("unknown shape type \"" + type + "\"");
}

struct Emit {
  json operator()(const Polygon& p) const {
    json v = json::array();
    for (const auto& q : p.vertices()) v.push_back(point(q));
    return {{"type", "polygon"}, {"vertices", v}};
  }
  json operator()(const RadialShape& r) const {
    json j = {{"type", "radial"}, {"center", point(r.center())}, {"scale", r.scale()}};
    if (r.has_fourier()) {
      j["fourier"] = {{"cos", vector(r.cos_coeffs())}, {"sin", vector(r.sin_coeffs())},
                      {"samples", r.size()}};
    } else {
      j["samples"] = vector(r.samples());
    }
    return j;
  }
  json operator()(const Stadium& s) const { return {{"type", "stadium"}, {"theta", s.theta()}}; }
  json operator()(const DiskSegmentComposite& c) const {
    json disks = json::array();
    for (const auto& d : c.disks()) disks.push_back({{"center", point(d.center)}, {"radius", d.radius}});
    json segs = json::array();
    for (const auto& s : c.segments()) segs.push_back({{"a", point(s.a)}, {"b", point(s.b)}});
    return {{"type", "composite"}, {"disks", disks}, {"segments", segs}};
  }
};

}  // namespace

Shape shape_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    return parse(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad shape file: ") + e.what());
  }
}

std::string shape_to_json(const Shape& s) { return std::visit(Emit{}, s).dump(2) + "\n"; }

Shape load_shape(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return shape_from_json(buf.str());
}

void save_shape(const Shape& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << shape_to_json(s);
}

}  // namespace iso
