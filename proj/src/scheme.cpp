#include "graypaste/scheme.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace graypaste {

namespace {

// Darts: 2*edge for the forward side, 2*edge+1 for the backward side.
int dart_of(int edge, bool forward) { return 2 * edge + (forward ? 0 : 1); }
int dart_edge(int d) { return d / 2; }
bool dart_forward(int d) { return d % 2 == 0; }
int dart_alpha(int d) { return d ^ 1; }

struct IdIndex {
  std::map<VertexId, int> vertex;
  std::map<EdgeId, int> edge;
};

IdIndex build_index(const RawScheme& raw) {
  IdIndex ix;
  for (size_t i = 0; i < raw.vertices.size(); ++i) ix.vertex[raw.vertices[i]] = static_cast<int>(i);
  for (size_t i = 0; i < raw.edges.size(); ++i) ix.edge[raw.edges[i].id] = static_cast<int>(i);
  if (ix.vertex.size() != raw.vertices.size())
    throw SchemeError("duplicate-id", "duplicate vertex id");
  if (ix.edge.size() != raw.edges.size()) throw SchemeError("duplicate-id", "duplicate edge id");
  for (const Edge& e : raw.edges) {
    for (const VertexId* v : {&e.src, &e.tgt})
      if (!ix.vertex.count(*v))
        throw SchemeError("unknown-vertex",
                          "edge '" + e.id + "' references undefined vertex '" + *v + "'");
    if (e.src == e.tgt)
      throw SchemeError("loop-edge", "edge '" + e.id + "' is a loop at '" + e.src + "'");
  }
  return ix;
}


// Per-vertex dart cycles in rotation-list order plus the successor table of
// the face permutation: next(d) = ccw successor of the reversed dart.
struct RotationTables {
  std::vector<std::vector<int>> cycle_at;  // by vertex index
  std::vector<int> next;                   // by dart
};

RotationTables build_rotation(const RawScheme& raw, const IdIndex& ix) {
  const int nv = static_cast<int>(raw.vertices.size());
  const int ne = static_cast<int>(raw.edges.size());
  RotationTables rt;
  rt.cycle_at.assign(static_cast<size_t>(nv), {});
  std::vector<int> seen(static_cast<size_t>(2 * ne), 0);

  for (const auto& [vid, entries] : raw.rotation) {
    auto vit = ix.vertex.find(vid);
    if (vit == ix.vertex.end())
      throw SchemeError("rotation-malformed", "rotation lists unknown vertex '" + vid + "'");
    for (const RotationEntry& ent : entries) {
      auto eit = ix.edge.find(ent.edge);
      if (eit == ix.edge.end())
        throw SchemeError("rotation-malformed",
                          "rotation at '" + vid + "' mentions unknown edge '" + ent.edge + "'");
      const Edge& e = raw.edges[static_cast<size_t>(eit->second)];
      const bool out = ent.end == EndKind::Out;
      const VertexId& expect = out ? e.src : e.tgt;
      if (expect != vid)
        throw SchemeError("rotation-malformed",
                          "rotation at '" + vid + "' claims the " + (out ? "outgoing" : "incoming") +
                              " end of edge '" + ent.edge + "', which is at '" + expect + "'");
      int d = dart_of(eit->second, out);
      if (seen[static_cast<size_t>(d)]++)
        throw SchemeError("rotation-malformed",
                          "edge end of '" + ent.edge + "' appears more than once in the rotation");
      rt.cycle_at[static_cast<size_t>(vit->second)].push_back(d);
    }
  }
  for (int d = 0; d < 2 * ne; ++d) {
    if (!seen[static_cast<size_t>(d)]) {
      const Edge& e = raw.edges[static_cast<size_t>(dart_edge(d))];
      throw SchemeError("rotation-malformed",
                        std::string("the ") + (dart_forward(d) ? "outgoing" : "incoming") +
                            " end of edge '" + e.id + "' is missing from the rotation");
    }
  }

  rt.next.assign(static_cast<size_t>(2 * ne), -1);
  for (const auto& cycle : rt.cycle_at) {
    const size_t k = cycle.size();
    for (size_t i = 0; i < k; ++i) {
      // successor of cycle[i] within the vertex cycle, applied to reversed darts
      rt.next[static_cast<size_t>(dart_alpha(cycle[i]))] = cycle[(i + 1) % k];
    }
  }
  return rt;
}

void check_connected(const RawScheme& raw, const IdIndex& ix) {
  const int nv = static_cast<int>(raw.vertices.size());
  if (nv == 0) throw SchemeError("malformed-document", "no vertices");
  std::vector<std::vector<int>> adj(static_cast<size_t>(nv));
  for (const Edge& e : raw.edges) {
    int a = ix.vertex.at(e.src), b = ix.vertex.at(e.tgt);
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<bool> vis(static_cast<size_t>(nv), false);
  std::queue<int> q;
  q.push(0);
  vis[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[static_cast<size_t>(v)])
      if (!vis[static_cast<size_t>(w)]) {
        vis[static_cast<size_t>(w)] = true;
        q.push(w);
      }
  }
  for (int v = 0; v < nv; ++v)
    if (!vis[static_cast<size_t>(v)])
      throw SchemeError("disconnected", "vertex '" + raw.vertices[static_cast<size_t>(v)] +
                                            "' is not connected to the rest of the graph");
}

std::vector<FaceWalk> trace_impl(const RawScheme& raw, const RotationTables& rt) {
  const int ne = static_cast<int>(raw.edges.size());
  std::vector<bool> visited(static_cast<size_t>(2 * ne), false);
  std::vector<FaceWalk> walks;
  for (int d0 = 0; d0 < 2 * ne; ++d0) {
    if (visited[static_cast<size_t>(d0)]) continue;
    FaceWalk w;
    int d = d0;
    do {
      visited[static_cast<size_t>(d)] = true;
      w.darts.push_back({dart_edge(d), dart_forward(d)});
      d = rt.next[static_cast<size_t>(d)];
      if (d < 0) throw engine_bug("face successor undefined");
    } while (d != d0);
    walks.push_back(std::move(w));
  }
  const int nv = static_cast<int>(raw.vertices.size());
  const int nf = static_cast<int>(walks.size());
  if (nv - ne + nf != 2) {
    nlohmann::json detail{{"vertices", nv}, {"edges", ne}, {"traced_faces", nf}};
    throw SchemeError("rotation-inconsistent",
                      "the rotation system does not describe a plane embedding "
                      "(V - E + F = " +
                          std::to_string(nv - ne + nf) + ", expected 2)",
                      detail);
  }
  return walks;
}

void check_acyclic(const RawScheme& raw, const IdIndex& ix) {
  const int nv = static_cast<int>(raw.vertices.size());
  std::vector<std::vector<int>> out(static_cast<size_t>(nv));
  std::vector<int> indeg(static_cast<size_t>(nv), 0);
  for (const Edge& e : raw.edges) {
    out[static_cast<size_t>(ix.vertex.at(e.src))].push_back(ix.vertex.at(e.tgt));
    ++indeg[static_cast<size_t>(ix.vertex.at(e.tgt))];
  }
  std::queue<int> q;
  for (int v = 0; v < nv; ++v)
    if (indeg[static_cast<size_t>(v)] == 0) q.push(v);
  int removed = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    ++removed;
    for (int w : out[static_cast<size_t>(v)])
      if (--indeg[static_cast<size_t>(w)] == 0) q.push(w);
  }
  if (removed != nv) {
    // Kahn leaves cycles plus everything downstream of them; keep only
    // vertices that can walk back to themselves.
    std::vector<VertexId> on_cycle;
    for (int v = 0; v < nv; ++v) {
      if (indeg[static_cast<size_t>(v)] == 0) continue;
      std::vector<bool> vis(static_cast<size_t>(nv), false);
      std::queue<int> bfs;
      for (int w : out[static_cast<size_t>(v)])
        if (!vis[static_cast<size_t>(w)]) {
          vis[static_cast<size_t>(w)] = true;
          bfs.push(w);
        }
      while (!bfs.empty()) {
        int w = bfs.front();
        bfs.pop();
        for (int x : out[static_cast<size_t>(w)])
          if (!vis[static_cast<size_t>(x)]) {
            vis[static_cast<size_t>(x)] = true;
            bfs.push(x);
          }
      }
      if (vis[static_cast<size_t>(v)]) on_cycle.push_back(raw.vertices[static_cast<size_t>(v)]);
    }
    throw SchemeError("directed-cycle", "the digraph contains a directed cycle",
                      nlohmann::json{{"vertices_on_cycles", on_cycle}});
  }
}

std::vector<bool> forward_reach(const RawScheme& raw, const IdIndex& ix, int start,
                                bool reversed) {
  const int nv = static_cast<int>(raw.vertices.size());
  std::vector<std::vector<int>> out(static_cast<size_t>(nv));
  for (const Edge& e : raw.edges) {
    int a = ix.vertex.at(e.src), b = ix.vertex.at(e.tgt);
    if (reversed) std::swap(a, b);
    out[static_cast<size_t>(a)].push_back(b);
  }
  std::vector<bool> vis(static_cast<size_t>(nv), false);
  std::queue<int> q;
  q.push(start);
  vis[static_cast<size_t>(start)] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : out[static_cast<size_t>(v)])
      if (!vis[static_cast<size_t>(w)]) {
        vis[static_cast<size_t>(w)] = true;
        q.push(w);
      }
  }
  return vis;
}

struct Decomposition {
  VertexId s, t;
  Walk sigma, tau;
  std::vector<Dart> boundary;  // rotated: sigma darts first
};

std::string orbit_edges_text(const RawScheme& raw, const FaceWalk& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.darts.size(); ++i) {
    if (i) os << " ";
    os << raw.edges[static_cast<size_t>(w.darts[i].edge)].id;
  }
  return os.str();
}

// Splits the boundary cycle into a forward run followed by a backward run.
Decomposition decompose_orbit(const RawScheme& raw, const IdIndex& ix, const FaceWalk& w) {
  const size_t k = w.darts.size();
  std::vector<size_t> starts;
  for (size_t i = 0; i < k; ++i) {
    const Dart& prev = w.darts[(i + k - 1) % k];
    if (w.darts[i].forward && !prev.forward) starts.push_back(i);
  }
  if (starts.size() != 1)
    throw SchemeError("face-not-decomposable",
                      "face boundary does not split into one forward path followed by one "
                      "backward path",
                      nlohmann::json{{"boundary_edges", orbit_edges_text(raw, w)},
                                     {"direction_changes", starts.size()}});

  Decomposition d;
  std::vector<Dart> rot(k);
  for (size_t i = 0; i < k; ++i) rot[i] = w.darts[(starts[0] + i) % k];
  d.boundary = rot;

  size_t fi = 0;
  while (fi < k && rot[fi].forward) ++fi;  // fi = length of the forward run
  for (size_t i = fi; i < k; ++i)
    if (rot[i].forward) throw engine_bug("boundary run structure violated");

  const Edge& first = raw.edges[static_cast<size_t>(rot[0].edge)];
  const Edge& last_f = raw.edges[static_cast<size_t>(rot[fi - 1].edge)];
  d.s = first.src;
  d.t = last_f.tgt;
  d.sigma.from = d.s;
  d.sigma.to = d.t;
  for (size_t i = 0; i < fi; ++i) d.sigma.edges.push_back(raw.edges[static_cast<size_t>(rot[i].edge)].id);
  d.tau.from = d.s;
  d.tau.to = d.t;
  for (size_t i = k; i > fi; --i) d.tau.edges.push_back(raw.edges[static_cast<size_t>(rot[i - 1].edge)].id);
  (void)ix;
  return d;
}

bool cyclic_match(const std::vector<EdgeId>& seq, const std::vector<EdgeId>& pattern, size_t rot) {
  const size_t k = seq.size();
  for (size_t i = 0; i < k; ++i)
    if (seq[(rot + i) % k] != pattern[i]) return false;
  return true;
}

// Which traced orbit is the declared exterior face. Matching is by cyclic
// edge-id sequence (either direction); ties prefer the orbit crossing the
// first declared edge forward, so declarations start with the bottom path.
size_t match_exterior(const RawScheme& raw, const std::vector<FaceWalk>& walks) {
  const std::vector<EdgeId>& decl = raw.exterior_boundary;
  std::vector<EdgeId> decl_rev(decl.rbegin(), decl.rend());
  std::set<size_t> matching;
  std::set<size_t> preferred;
  for (size_t f = 0; f < walks.size(); ++f) {
    const FaceWalk& w = walks[f];
    if (w.darts.size() != decl.size()) continue;
    std::vector<EdgeId> ids;
    ids.reserve(w.darts.size());
    for (const Dart& d : w.darts) ids.push_back(raw.edges[static_cast<size_t>(d.edge)].id);
    for (size_t r = 0; r < ids.size(); ++r) {
      if (cyclic_match(ids, decl, r)) {
        matching.insert(f);
        if (w.darts[r].forward) preferred.insert(f);
      }
      if (cyclic_match(ids, decl_rev, r)) matching.insert(f);
    }
  }
  if (matching.empty())
    throw SchemeError("exterior-not-a-face",
                      "the declared exterior boundary is not the boundary of any traced face",
                      nlohmann::json{{"declared", decl}});
  if (matching.size() == 1) return *matching.begin();
  if (preferred.size() == 1) return *preferred.begin();
  throw SchemeError("exterior-ambiguous",
                    "several traced faces match the declared exterior boundary; start the "
                    "declaration with the bottom path travelled forward",
                    nlohmann::json{{"declared", decl}, {"matches", matching.size()}});
}

}  // namespace

RawScheme parse_scheme(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemeError("malformed-document", "top level must be an object");
  for (const char* key : {"vertices", "edges", "rotation", "source", "sink", "exterior_boundary"})
    if (!doc.contains(key))
      throw SchemeError("malformed-document", std::string("missing key '") + key + "'");

  RawScheme raw;

  const auto& jv = doc.at("vertices");
  if (!jv.is_array() || jv.empty())
    throw SchemeError("malformed-document", "'vertices' must be a non-empty array");
  std::set<VertexId> vseen;
  for (const auto& v : jv) {
    if (!v.is_string()) throw SchemeError("malformed-document", "vertex ids must be strings");
    VertexId id = v.get<VertexId>();
    if (!vseen.insert(id).second)
      throw SchemeError("duplicate-id", "duplicate vertex id '" + id + "'");
    raw.vertices.push_back(std::move(id));
  }
  std::sort(raw.vertices.begin(), raw.vertices.end());

  const auto& je = doc.at("edges");
  if (!je.is_array()) throw SchemeError("malformed-document", "'edges' must be an array");
  std::set<EdgeId> eseen;
  for (const auto& e : je) {
    if (!e.is_object() || !e.contains("id") || !e.contains("src") || !e.contains("tgt") ||
        !e.at("id").is_string() || !e.at("src").is_string() || !e.at("tgt").is_string())
      throw SchemeError("malformed-document", "edges must be objects with string id/src/tgt");
    Edge edge{e.at("id").get<EdgeId>(), e.at("src").get<VertexId>(), e.at("tgt").get<VertexId>()};
    if (!eseen.insert(edge.id).second)
      throw SchemeError("duplicate-id", "duplicate edge id '" + edge.id + "'");
    for (const VertexId* v : {&edge.src, &edge.tgt})
      if (!vseen.count(*v))
        throw SchemeError("unknown-vertex",
                          "edge '" + edge.id + "' references undefined vertex '" + *v + "'");
    if (edge.src == edge.tgt)
      throw SchemeError("loop-edge", "edge '" + edge.id + "' is a loop at '" + edge.src + "'");
    raw.edges.push_back(std::move(edge));
  }
  std::sort(raw.edges.begin(), raw.edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });

  const auto& jr = doc.at("rotation");
  if (!jr.is_object()) throw SchemeError("malformed-document", "'rotation' must be an object");
  for (const auto& [vid, entries] : jr.items()) {
    if (!vseen.count(vid))
      throw SchemeError("unknown-vertex", "rotation lists undefined vertex '" + vid + "'");
    if (!entries.is_array())
      throw SchemeError("malformed-document", "rotation entries must be arrays");
    std::vector<RotationEntry> list;
    for (const auto& ent : entries) {
      if (!ent.is_object() || !ent.contains("edge") || !ent.contains("end") ||
          !ent.at("edge").is_string() || !ent.at("end").is_string())
        throw SchemeError("malformed-document",
                          "rotation entries must be objects with string 'edge' and 'end'");
      EdgeId eid = ent.at("edge").get<EdgeId>();
      if (!eseen.count(eid))
        throw SchemeError("unknown-edge",
                          "rotation at '" + vid + "' references undefined edge '" + eid + "'");
      const std::string end = ent.at("end").get<std::string>();
      if (end != "out" && end != "in")
        throw SchemeError("malformed-document", "rotation 'end' must be \"out\" or \"in\"");
      list.push_back({std::move(eid), end == "out" ? EndKind::Out : EndKind::In});
    }
    raw.rotation[vid] = std::move(list);
  }

  for (const char* key : {"source", "sink"}) {
    if (!doc.at(key).is_string())
      throw SchemeError("malformed-document", std::string("'") + key + "' must be a string");
    VertexId v = doc.at(key).get<VertexId>();
    if (!vseen.count(v))
      throw SchemeError("unknown-vertex", std::string("'") + key + "' references undefined vertex '" + v + "'");
    (key == std::string("source") ? raw.source : raw.sink) = std::move(v);
  }

  const auto& jx = doc.at("exterior_boundary");
  if (!jx.is_array() || jx.empty())
    throw SchemeError("malformed-document", "'exterior_boundary' must be a non-empty array");
  for (const auto& e : jx) {
    if (!e.is_string()) throw SchemeError("malformed-document", "exterior edges must be strings");
    EdgeId id = e.get<EdgeId>();
    if (!eseen.count(id))
      throw SchemeError("unknown-edge", "exterior boundary references undefined edge '" + id + "'");
    raw.exterior_boundary.push_back(std::move(id));
  }
  return raw;
}

std::vector<FaceWalk> trace_faces(const RawScheme& raw) {
  IdIndex ix = build_index(raw);
  RotationTables rt = build_rotation(raw, ix);
  check_connected(raw, ix);
  return trace_impl(raw, rt);
}

PastingScheme validate_scheme(const RawScheme& raw) {
  IdIndex ix = build_index(raw);
  for (const VertexId* v : {&raw.source, &raw.sink})
    if (!ix.vertex.count(*v))
      throw SchemeError("unknown-vertex", "source/sink vertex '" + *v + "' is not defined");
  for (const EdgeId& e : raw.exterior_boundary)
    if (!ix.edge.count(e))
      throw SchemeError("unknown-edge", "exterior boundary references undefined edge '" + e + "'");
  if (raw.exterior_boundary.empty())
    throw SchemeError("malformed-document", "'exterior_boundary' must be a non-empty array");
  if (raw.source == raw.sink)
    throw SchemeError("source-equals-sink", "source and sink must be distinct vertices");

  RotationTables rt = build_rotation(raw, ix);
  check_connected(raw, ix);
  check_acyclic(raw, ix);

  const int si = ix.vertex.at(raw.source);
  const int ti = ix.vertex.at(raw.sink);
  std::vector<bool> from_s = forward_reach(raw, ix, si, false);
  std::vector<bool> to_t = forward_reach(raw, ix, ti, true);
  for (size_t v = 0; v < raw.vertices.size(); ++v) {
    if (!from_s[v])
      throw SchemeError("unreachable-from-source",
                        "no directed path from the source to vertex '" + raw.vertices[v] + "'");
    if (!to_t[v])
      throw SchemeError("no-path-to-sink",
                        "no directed path from vertex '" + raw.vertices[v] + "' to the sink");
  }

  std::vector<FaceWalk> walks = trace_impl(raw, rt);
  const size_t ext = match_exterior(raw, walks);

  PastingScheme ps;
  ps.vertices_ = raw.vertices;
  ps.edges_ = raw.edges;
  ps.rotation_ = raw.rotation;
  ps.source_ = raw.source;
  ps.sink_ = raw.sink;
  ps.declared_exterior_ = raw.exterior_boundary;
  ps.vindex_ = ix.vertex;
  ps.eindex_ = ix.edge;

  int counter = 0;
  for (size_t f = 0; f < walks.size(); ++f) {
    Decomposition d = decompose_orbit(raw, ix, walks[f]);
    Face face;
    face.s = d.s;
    face.t = d.t;
    face.sigma = d.sigma;
    face.tau = d.tau;
    face.boundary = d.boundary;
    if (d.s == d.t)
      throw SchemeError("face-degenerate",
                        "face boundary decomposition starts and ends at '" + d.s + "'");
    if (f == ext) {
      if (d.s != raw.source || d.t != raw.sink)
        throw SchemeError("exterior-decomposition-mismatch",
                          "the exterior face decomposes between '" + d.s + "' and '" + d.t +
                              "', not between the declared source and sink");
      face.id = "E";
      face.is_exterior = true;
      ps.exterior_ = std::move(face);
    } else {
      face.id = "F" + std::to_string(++counter);
      face.is_exterior = false;
      ps.findex_[face.id] = static_cast<int>(ps.interior_.size());
      ps.interior_.push_back(std::move(face));
    }
  }

  // reflexive reachability table for the precedence relation
  const int nv = static_cast<int>(raw.vertices.size());
  ps.reach_.assign(static_cast<size_t>(nv), std::vector<bool>(static_cast<size_t>(nv), false));
  for (int v = 0; v < nv; ++v) {
    std::vector<bool> r = forward_reach(raw, ix, v, false);
    for (int w = 0; w < nv; ++w) ps.reach_[static_cast<size_t>(v)][static_cast<size_t>(w)] = r[static_cast<size_t>(w)];
  }
  return ps;
}

int PastingScheme::vertex_index(const VertexId& v) const {
  auto it = vindex_.find(v);
  if (it == vindex_.end()) throw SchemeError("unknown-vertex", "unknown vertex '" + v + "'");
  return it->second;
}

int PastingScheme::edge_index(const EdgeId& e) const {
  auto it = eindex_.find(e);
  if (it == eindex_.end()) throw SchemeError("unknown-edge", "unknown edge '" + e + "'");
  return it->second;
}

int PastingScheme::face_index(const FaceId& f) const {
  auto it = findex_.find(f);
  if (it == findex_.end()) throw SchemeError("unknown-face", "unknown interior face '" + f + "'");
  return it->second;
}

bool PastingScheme::reaches(int from_vertex, int to_vertex) const {
  return reach_.at(static_cast<size_t>(from_vertex)).at(static_cast<size_t>(to_vertex));
}

RawScheme flip_orientation(RawScheme raw) {
  for (auto& [v, list] : raw.rotation) std::reverse(list.begin(), list.end());
  return raw;
}

}  // namespace graypaste
