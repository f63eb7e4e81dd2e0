#pragma once

// Shape files. One JSON object with a "type" tag:
//   {"type": "polygon",   "vertices": [[x, y], ...]}
//   {"type": "radial",    "center": [x, y], "scale": s, "samples": [u0, u1, ...]}
//   {"type": "radial",    "center": [x, y], "scale": s,
//                         "fourier": {"cos": [...], "sin": [...], "samples": M}}
//   {"type": "stadium",   "theta": t}
//   {"type": "composite", "disks": [{"center": [x, y], "radius": r}, ...],
//                         "segments": [{"a": [x, y], "b": [x, y]}, ...]}
// "center" and "scale" default to the origin and 1.

#include "iso/geometry.hpp"

#include <string>

namespace iso {

// Throws ValidationError on malformed JSON or missing fields; shape
// constructors validate the geometry.
Shape shape_from_json(const std::string& text);
std::string shape_to_json(const Shape& s);

Shape load_shape(const std::string& path);
void save_shape(const Shape& s, const std::string& path);

}  // namespace iso
