#ifndef GRAYPASTE_SCHEME_HPP
#define GRAYPASTE_SCHEME_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graypaste/error.hpp"

namespace graypaste {

using VertexId = std::string;
using EdgeId = std::string;
using FaceId = std::string;

struct Edge {
  EdgeId id;
  VertexId src;
  VertexId tgt;
};

enum class EndKind { Out, In };

// One edge end as it appears in a vertex's rotation list.
struct RotationEntry {
  EdgeId edge;
  EndKind end;
  bool operator==(const RotationEntry&) const = default;
};

// Parsed but unvalidated scheme document. Vertices and edges are stored sorted
// by id so everything derived downstream is independent of document order.
struct RawScheme {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::map<VertexId, std::vector<RotationEntry>> rotation;
  VertexId source;
  VertexId sink;
  std::vector<EdgeId> exterior_boundary;
};

// A directed edge side. forward = travelling src -> tgt.
struct Dart {
  int edge = -1;
  bool forward = true;
  bool operator==(const Dart&) const = default;
};

// Directed path; empty paths keep their anchor vertex in from == to.
struct Walk {
  VertexId from;
  VertexId to;
  std::vector<EdgeId> edges;
  bool operator==(const Walk&) const = default;
};

struct Face {
  FaceId id;
  VertexId s;  // where sigma and tau start
  VertexId t;
  Walk sigma;  // interior: upper side; exterior: bottom path
  Walk tau;    // interior: lower side; exterior: top path
  bool is_exterior = false;
  std::vector<Dart> boundary;  // traced dart cycle, sigma first
};

// Traced orbit of the face permutation, before decomposition.
struct FaceWalk {
  std::vector<Dart> darts;
};

class PastingScheme {
 public:
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::map<VertexId, std::vector<RotationEntry>>& rotation() const { return rotation_; }
  const VertexId& source() const { return source_; }
  const VertexId& sink() const { return sink_; }

  const std::vector<Face>& interior_faces() const { return interior_; }
  const Face& exterior() const { return exterior_; }

  const Walk& top_path() const { return exterior_.tau; }
  const Walk& bottom_path() const { return exterior_.sigma; }

  int vertex_index(const VertexId& v) const;
  int edge_index(const EdgeId& e) const;
  int face_index(const FaceId& f) const;  // interior faces only
  const Edge& edge_at(int idx) const { return edges_.at(static_cast<size_t>(idx)); }

  // Directed reachability, reflexive.
  bool reaches(int from_vertex, int to_vertex) const;

  const std::vector<EdgeId>& declared_exterior_boundary() const { return declared_exterior_; }

 private:
  friend PastingScheme validate_scheme(const RawScheme& raw);

  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, std::vector<RotationEntry>> rotation_;
  VertexId source_;
  VertexId sink_;
  std::vector<Face> interior_;
  Face exterior_;
  std::vector<EdgeId> declared_exterior_;
  std::map<VertexId, int> vindex_;
  std::map<EdgeId, int> eindex_;
  std::map<FaceId, int> findex_;
  std::vector<std::vector<bool>> reach_;
};

// Structural parse: shape, id uniqueness, reference resolution, loop rejection.
// No geometric validation happens here.
RawScheme parse_scheme(const nlohmann::json& doc);

// Orbits of the face permutation (counterclockwise successor of the reversed
// dart). Checks rotation well-formedness, connectivity and the Euler count.
std::vector<FaceWalk> trace_faces(const RawScheme& raw);

// Full validation pipeline; returns the immutable scheme with faces decomposed
// and numbered F1..Fn (exterior face "E").
PastingScheme validate_scheme(const RawScheme& raw);

inline std::pair<Walk, Walk> top_bottom_paths(const PastingScheme& s) {
  return {s.top_path(), s.bottom_path()};
}

// Mirror image: interprets the stored rotation lists with the opposite
// handedness by reversing each of them.
RawScheme flip_orientation(RawScheme raw);

}  // namespace graypaste

#endif
