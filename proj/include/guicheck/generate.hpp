#pragma once

// Deterministic trace generation and mutation, used for differential testing
// and for building defect fixtures (deleted shape, moved shape, altered text).

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "guicheck/trace.hpp"

namespace guicheck {

struct TraceGenParams {
  std::map<ShapeKind, int> counts;
  std::int64_t coord_min = 0;
  std::int64_t coord_max = 100;
  std::int64_t max_extent = 40;
  std::vector<std::string> text_pool = {"OK",    "CANCEL", "Track2",     "Track10",
                                        "Menu",  "Label",  "Properties", "Pencil"};
};

inline TraceDoc random_trace(std::uint64_t seed, const TraceGenParams& params) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(params.coord_min, params.coord_max);
  std::uniform_int_distribution<std::int64_t> extent(0, params.max_extent);
  TraceDoc doc;
  for (ShapeKind kind : kAllShapeKinds) {
    auto it = params.counts.find(kind);
    if (it == params.counts.end()) continue;
    for (int i = 0; i < it->second; ++i) {
      Shape s;
      s.kind = kind;
      switch (kind) {
        case ShapeKind::Rectangle:
        case ShapeKind::Ellipse:
        case ShapeKind::Textrect:
          s.coords = {coord(rng), coord(rng), extent(rng), extent(rng)};
          break;
        case ShapeKind::Line:
          s.coords = {coord(rng), coord(rng), coord(rng), coord(rng)};
          break;
        case ShapeKind::Triangle:
          s.coords = {coord(rng), coord(rng), coord(rng),
                      coord(rng), coord(rng), coord(rng)};
          break;
        case ShapeKind::Polygon:
          s.coords = {coord(rng), coord(rng), coord(rng), coord(rng),
                      coord(rng), coord(rng), coord(rng), coord(rng)};
          break;
        case ShapeKind::Text:
          s.coords = {coord(rng), coord(rng)};
          break;
      }
      if (shape_kind_has_text(kind)) {
        std::uniform_int_distribution<std::size_t> pick(0, params.text_pool.size() - 1);
        s.text = params.text_pool[pick(rng)];
      }
      doc.shapes.push_back(std::move(s));
    }
  }
  std::shuffle(doc.shapes.begin(), doc.shapes.end(), rng);
  for (std::size_t i = 0; i < doc.shapes.size(); ++i)
    doc.shapes[i].seq = static_cast<int>(i);
  return doc;
}

inline TraceDoc delete_shape(const TraceDoc& trace, std::size_t index) {
  TraceDoc out = trace;
  out.shapes.erase(out.shapes.begin() + static_cast<std::ptrdiff_t>(index));
  for (std::size_t i = 0; i < out.shapes.size(); ++i)
    out.shapes[i].seq = static_cast<int>(i);
  return out;
}

inline TraceDoc translate_shape(const TraceDoc& trace, std::size_t index, std::int64_t dx,
                                std::int64_t dy) {
  TraceDoc out = trace;
  Shape& s = out.shapes[index];
  switch (s.kind) {
    case ShapeKind::Rectangle:
    case ShapeKind::Ellipse:
    case ShapeKind::Textrect:
    case ShapeKind::Text:
      s.coords[0] += dx;
      s.coords[1] += dy;
      break;
    case ShapeKind::Line:
    case ShapeKind::Triangle:
    case ShapeKind::Polygon:
      for (std::size_t i = 0; i + 1 < s.coords.size(); i += 2) {
        s.coords[i] += dx;
        s.coords[i + 1] += dy;
      }
      break;
  }
  return out;
}

inline TraceDoc replace_text(const TraceDoc& trace, std::size_t index, std::string text) {
  TraceDoc out = trace;
  out.shapes[index].text = std::move(text);
  return out;
}

// Applies exactly one mutation: delete a shape, translate a shape, or replace
// a text payload (when the trace has one). Deterministic in the seed.
inline TraceDoc mutate_trace(const TraceDoc& trace, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> text_shapes;
  for (std::size_t i = 0; i < trace.shapes.size(); ++i)
    if (trace.shapes[i].text) text_shapes.push_back(i);

  int mutations = text_shapes.empty() ? 2 : 3;
  std::uniform_int_distribution<int> pick_mutation(0, mutations - 1);
  std::uniform_int_distribution<std::size_t> pick_shape(0, trace.shapes.size() - 1);
  int mutation = pick_mutation(rng);

  if (mutation == 0) return delete_shape(trace, pick_shape(rng));
  if (mutation == 1) {
    std::uniform_int_distribution<std::int64_t> delta(-20, 20);
    std::int64_t dx = delta(rng);
    std::int64_t dy = delta(rng);
    if (dx == 0 && dy == 0) dx = 7;
    return translate_shape(trace, pick_shape(rng), dx, dy);
  }
  std::uniform_int_distribution<std::size_t> pick_text(0, text_shapes.size() - 1);
  std::size_t index = text_shapes[pick_text(rng)];
  return replace_text(trace, index, *trace.shapes[index].text + "~");
}

}  // namespace guicheck
