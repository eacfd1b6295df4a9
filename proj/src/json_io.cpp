#include "graypaste/json_io.hpp"

#include <algorithm>

namespace graypaste::io {

namespace {

using nlohmann::json;

std::string end_text(EndKind e) { return e == EndKind::Out ? "out" : "in"; }

json rotation_entry_json(const RotationEntry& r) {
  return json{{"edge", r.edge}, {"end", end_text(r.end)}};
}

// Least (edge, end) entry first; out sorts before in.
std::vector<RotationEntry> canonical_rotation(std::vector<RotationEntry> list) {
  if (list.empty()) return list;
  auto key = [](const RotationEntry& r) { return std::make_pair(r.edge, r.end == EndKind::In); };
  size_t best = 0;
  for (size_t i = 1; i < list.size(); ++i)
    if (key(list[i]) < key(list[best])) best = i;
  std::rotate(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(best), list.end());
  return list;
}

json face_ids(const rewrite::FaceString& s, const PastingScheme& scheme) {
  json out = json::array();
  for (int f : s) out.push_back(scheme.interior_faces().at(static_cast<size_t>(f)).id);
  return out;
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

json label_pairs(const relations::FaceRelation& rel) {
  json out = json::array();
  for (const auto& [a, b] : rel.pairs())
    out.push_back(json::array(
        {rel.labels()[static_cast<size_t>(a)], rel.labels()[static_cast<size_t>(b)]}));
  return out;
}

}  // namespace

json canonical_document(const PastingScheme& scheme) {
  json doc;
  std::vector<VertexId> vs = scheme.vertices();
  std::sort(vs.begin(), vs.end());
  doc["vertices"] = vs;

  std::vector<Edge> es = scheme.edges();
  std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  json edges = json::array();
  for (const Edge& e : es)
    edges.push_back(json{{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}});
  doc["edges"] = edges;

  json rot = json::object();
  for (const auto& [v, list] : scheme.rotation()) {
    json jl = json::array();
    for (const RotationEntry& r : canonical_rotation(list)) jl.push_back(rotation_entry_json(r));
    rot[v] = jl;
  }
  doc["rotation"] = rot;

  doc["source"] = scheme.source();
  doc["sink"] = scheme.sink();

  json ext = json::array();
  for (const Dart& d : scheme.exterior().boundary) ext.push_back(scheme.edge_at(d.edge).id);
  doc["exterior_boundary"] = ext;
  return doc;
}

json walk_json(const Walk& w) {
  return json{{"from", w.from}, {"to", w.to}, {"edges", w.edges}};
}

namespace {

json face_json(const Face& f) {
  return json{{"id", f.id},
              {"exterior", f.is_exterior},
              {"sigma", walk_json(f.sigma)},
              {"tau", walk_json(f.tau)}};
}

}  // namespace

json face_report(const PastingScheme& scheme) {
  json faces = json::array();
  for (const Face& f : scheme.interior_faces()) faces.push_back(face_json(f));
  return json{{"faces", faces},
              {"exterior", face_json(scheme.exterior())},
              {"euler", json{{"vertices", scheme.vertices().size()},
                             {"edges", scheme.edges().size()},
                             {"faces", scheme.interior_faces().size() + 1}}}};
}

json validation_summary(const PastingScheme& scheme) {
  return json{{"ok", true},
              {"source", scheme.source()},
              {"sink", scheme.sink()},
              {"counts", json{{"vertices", scheme.vertices().size()},
                              {"edges", scheme.edges().size()},
                              {"interior_faces", scheme.interior_faces().size()}}},
              {"top_path", scheme.top_path().edges},
              {"bottom_path", scheme.bottom_path().edges}};
}

std::pair<composer::Signature, composer::Labelling> parse_labelling(const json& doc) {
  if (!doc.is_object() || !doc.contains("signature") || !doc.contains("labels"))
    throw SchemeError("malformed-document", "labelling needs 'signature' and 'labels'");
  const json& sig_j = doc.at("signature");
  const json& lab_j = doc.at("labels");
  if (!sig_j.is_object() || !lab_j.is_object())
    throw SchemeError("malformed-document", "'signature' and 'labels' must be objects");

  composer::Signature sig;
  if (sig_j.contains("cells0")) {
    const json& c0 = sig_j.at("cells0");
    if (c0.is_array()) {
      for (const auto& x : c0) {
        if (!x.is_string())
          throw SchemeError("malformed-document", "0-cell names must be strings");
        sig.cells0.push_back(x.get<std::string>());
      }
    } else if (c0.is_object()) {
      for (const auto& [name, v] : c0.items()) {
        (void)v;
        sig.cells0.push_back(name);
      }
    } else {
      throw SchemeError("malformed-document", "'cells0' must be an array or an object");
    }
  }
  if (sig_j.contains("cells1")) {
    const json& c1 = sig_j.at("cells1");
    if (!c1.is_object()) throw SchemeError("malformed-document", "'cells1' must be an object");
    for (const auto& [name, v] : c1.items()) {
      if (!v.is_object() || !v.contains("dom") || !v.contains("cod") || !v.at("dom").is_string() ||
          !v.at("cod").is_string())
        throw SchemeError("malformed-document",
                          "1-cell '" + name + "' needs string 'dom' and 'cod'");
      sig.cells1[name] = {v.at("dom").get<std::string>(), v.at("cod").get<std::string>()};
    }
  }
  if (sig_j.contains("cells2")) {
    const json& c2 = sig_j.at("cells2");
    if (!c2.is_object()) throw SchemeError("malformed-document", "'cells2' must be an object");
    for (const auto& [name, v] : c2.items()) {
      if (!v.is_object() || !v.contains("dom") || !v.contains("cod") || !v.at("dom").is_array() ||
          !v.at("cod").is_array())
        throw SchemeError("malformed-document",
                          "2-cell '" + name + "' needs array 'dom' and 'cod'");
      composer::Signature::Cell2 cell;
      for (const auto& x : v.at("dom")) {
        if (!x.is_string())
          throw SchemeError("malformed-document", "2-cell sides must list 1-cell names");
        cell.dom.push_back(x.get<std::string>());
      }
      for (const auto& x : v.at("cod")) {
        if (!x.is_string())
          throw SchemeError("malformed-document", "2-cell sides must list 1-cell names");
        cell.cod.push_back(x.get<std::string>());
      }
      sig.cells2[name] = std::move(cell);
    }
  }

  composer::Labelling lab;
  auto read_map = [&](const char* key, std::map<std::string, std::string>& into) {
    if (!lab_j.contains(key)) return;
    const json& m = lab_j.at(key);
    if (!m.is_object())
      throw SchemeError("malformed-document", std::string("'") + key + "' must be an object");
    for (const auto& [id, v] : m.items()) {
      if (!v.is_string())
        throw SchemeError("malformed-document", std::string("labels in '") + key + "' must be strings");
      into[id] = v.get<std::string>();
    }
  };
  read_map("vertices", lab.vertex_labels);
  read_map("edges", lab.edge_labels);
  read_map("faces", lab.face_labels);
  return {std::move(sig), std::move(lab)};
}

json relation_report(const PastingScheme& scheme) {
  relations::FaceRelation tri = relations::triangle_relation(scheme);
  relations::FaceRelation closure = relations::transitive_closure(tri);
  relations::FaceRelation prec = relations::prec_relation(scheme);
  relations::ComparabilityReport comp = relations::check_comparability(scheme);

  json violations = json::array();
  for (const auto& v : comp.violations)
    violations.push_back(json{{"a", tri.labels()[static_cast<size_t>(v.a)]},
                              {"b", tri.labels()[static_cast<size_t>(v.b)]},
                              {"triangle_comparable", v.triangle_comparable},
                              {"precedence_comparable", v.prec_comparable}});
  return json{{"triangle", label_pairs(tri)},
              {"triangle_closure", label_pairs(closure)},
              {"precedence", label_pairs(prec)},
              {"comparability", json{{"ok", comp.ok()}, {"violations", violations}}}};
}

json face_string_json(const rewrite::FaceString& s, const PastingScheme& scheme) {
  return face_ids(s, scheme);
}

rewrite::FaceString parse_face_string(const json& j, const PastingScheme& scheme) {
  if (!j.is_array())
    throw SchemeError("malformed-document", "a composition order must be an array of face ids");
  rewrite::FaceString out;
  for (const auto& x : j) {
    if (!x.is_string())
      throw SchemeError("malformed-document", "a composition order must be an array of face ids");
    out.push_back(scheme.face_index(x.get<std::string>()));
  }
  return out;
}

json word_json(const rewrite::Word& w, const PastingScheme& scheme) {
  json steps = json::array();
  for (const rewrite::Step& st : w.steps)
    steps.push_back(json{{"from", face_ids(st.from, scheme)},
                         {"pos", st.pos},
                         {"inverse", st.inverse}});
  return json{{"source", face_ids(w.source, scheme)},
              {"target", face_ids(w.target(), scheme)},
              {"steps", steps}};
}

json certificate_json(const rewrite::Certificate& c, const PastingScheme& scheme) {
  json j;
  j["ok"] = c.ok();
  j["objects"] = c.objects;
  j["normal_form"] = c.normal_form ? face_ids(*c.normal_form, scheme) : json();
  j["exchange_graph"] = json{{"edges", c.exchange_edges}, {"connected", c.graph_connected}};
  j["unique_normal_form"] = json{{"sink_count", c.unique_nf.sink_count},
                                 {"strategies", c.unique_nf.strategies},
                                 {"strategies_agree", c.unique_nf.strategies_agree}};
  j["branchings"] = json{{"total", c.branchings_total},
                         {"identical", c.branchings_identical},
                         {"square", c.branchings_square},
                         {"hexagon", c.branchings_hexagon}};
  j["tessellation"] = json{{"mode", c.tessellation_mode},
                           {"pairs", c.tessellation_pairs},
                           {"replayed", c.tessellation_replayed}};
  j["relation_cases"] =
      json{{"exchange", json{{"both_oriented", c.groupoid.b_both_oriented},
                             {"neither_oriented", c.groupoid.b_neither_oriented},
                             {"mixed", c.groupoid.b_mixed}}},
           {"hexagon", json{{"three_oriented", c.groupoid.c_three_oriented},
                            {"none_oriented", c.groupoid.c_none_oriented},
                            {"two_oriented", c.groupoid.c_two_oriented},
                            {"one_oriented", c.groupoid.c_one_oriented}}},
           {"replayed", c.groupoid.replayed},
           {"failed", c.groupoid.failed}};
  j["seed"] = c.seed ? json(*c.seed) : json();
  j["counterexamples"] = c.counterexamples;
  return j;
}

json composite_json(const composer::CompositeTerm& t, const PastingScheme& scheme,
                    const composer::Labelling& lab) {
  (void)scheme;
  json entries = json::array();
  for (const composer::WhiskeredCell& e : t.entries)
    entries.push_back(json{{"face", e.face},
                           {"cell", e.cell},
                           {"before", e.before},
                           {"after", e.after},
                           {"rendered", composer::render_entry(e, lab)}});
  return json{{"term", composer::render(t, lab)},
              {"from_path", t.from_path},
              {"to_path", t.to_path},
              {"entries", entries}};
}

json interchanger_json(const rewrite::Step& step, const PastingScheme& scheme,
                       const composer::Labelling& lab) {
  composer::InterchangerStep s = composer::interchanger_of(step, scheme, lab);
  composer::InterchangeSquare sq = composer::square_of(step, scheme, lab);
  auto entry_json = [&](const composer::WhiskeredCell& e) {
    return json{{"face", e.face},
                {"cell", e.cell},
                {"before", e.before},
                {"after", e.after},
                {"rendered", composer::render_entry(e, lab)}};
  };
  auto corner_json = [&](const std::vector<EdgeId>& path) {
    return json{{"edges", path}, {"label", composer::path_label(path, lab)}};
  };
  return json{
      {"witness", composer::render_interchanger(s, lab)},
      {"pos", s.pos},
      {"inverse", s.inverse},
      {"earlier", json{{"face", s.earlier_face}, {"cell", s.earlier_cell}}},
      {"later", json{{"face", s.later_face}, {"cell", s.later_cell}}},
      {"boundary", s.boundary},
      {"outer_before", s.outer_before},
      {"middle", s.middle},
      {"outer_after", s.outer_after},
      {"square", json{{"corners", json{{"start", corner_json(sq.corner_start)},
                                       {"after_first", corner_json(sq.corner_after_first)},
                                       {"after_second", corner_json(sq.corner_after_second)},
                                       {"end", corner_json(sq.corner_end)}}},
                      {"source_route", json::array({entry_json(sq.source_route_first),
                                                    entry_json(sq.source_route_second)})},
                      {"target_route", json::array({entry_json(sq.target_route_first),
                                                    entry_json(sq.target_route_second)})}}}};
}

std::string digraph_dot(const PastingScheme& scheme) {
  std::string out = "digraph scheme {\n  rankdir=LR;\n";
  for (const VertexId& v : scheme.vertices()) {
    out += "  \"" + escape_dot(v) + "\"";
    if (v == scheme.source() || v == scheme.sink()) out += " [shape=doublecircle]";
    out += ";\n";
  }
  for (const Edge& e : scheme.edges())
    out += "  \"" + escape_dot(e.src) + "\" -> \"" + escape_dot(e.tgt) + "\" [label=\"" +
           escape_dot(e.id) + "\"];\n";
  out += "}\n";
  return out;
}

std::string exchange_graph_dot(const rewrite::Engine& engine, const PastingScheme& scheme) {
  const auto& objs = engine.objects();
  std::optional<rewrite::FaceString> nf;
  if (!objs.empty()) nf = engine.normalize(objs.front(), rewrite::Strategy::Leftmost).normal_form;

  auto label_of = [&](const rewrite::FaceString& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
      if (i) out += " ";
      out += scheme.interior_faces().at(static_cast<size_t>(s[i])).id;
    }
    return out;
  };

  std::string out = "graph orders {\n  node [shape=box];\n";
  for (size_t i = 0; i < objs.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + escape_dot(label_of(objs[i])) + "\"";
    if (nf && objs[i] == *nf) out += ", peripheries=2";
    out += "];\n";
  }
  for (const auto& [a, b] : engine.exchange_edges())
    out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace graypaste::io
