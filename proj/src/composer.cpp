#include "graypaste/composer.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace graypaste::composer {

namespace {

const std::string& face_cell(const Labelling& lab, const FaceId& f) {
  auto it = lab.face_labels.find(f);
  if (it == lab.face_labels.end())
    throw SchemeError("missing-label", "face '" + f + "' has no 2-cell label");
  return it->second;
}

// Locates `run` as a contiguous block of `path`. Edge ids never repeat along a
// directed path, so the block is unique when present.
std::optional<size_t> find_run(const std::vector<EdgeId>& path, const std::vector<EdgeId>& run) {
  auto it = std::search(path.begin(), path.end(), run.begin(), run.end());
  if (it == path.end() && !run.empty()) return std::nullopt;
  if (run.empty()) return std::nullopt;
  return static_cast<size_t>(it - path.begin());
}

std::vector<EdgeId> splice_path(const std::vector<EdgeId>& path, size_t at, size_t len,
                                const std::vector<EdgeId>& repl) {
  std::vector<EdgeId> out(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(at));
  out.insert(out.end(), repl.begin(), repl.end());
  out.insert(out.end(), path.begin() + static_cast<std::ptrdiff_t>(at + len), path.end());
  return out;
}

// Applies one face to a boundary path; returns the entry and the new boundary.
std::pair<WhiskeredCell, std::vector<EdgeId>> apply_face(const std::vector<EdgeId>& boundary,
                                                         const Face& face,
                                                         const Labelling& lab) {
  std::optional<size_t> at = find_run(boundary, face.sigma.edges);
  if (!at)
    throw SchemeError("order-not-admissible",
                      "the upper side of face '" + face.id +
                          "' is not on the boundary when its turn comes");
  WhiskeredCell entry;
  entry.before.assign(boundary.begin(), boundary.begin() + static_cast<std::ptrdiff_t>(*at));
  entry.after.assign(boundary.begin() + static_cast<std::ptrdiff_t>(*at + face.sigma.edges.size()),
                     boundary.end());
  entry.face = face.id;
  entry.cell = face_cell(lab, face.id);
  return {entry, splice_path(boundary, *at, face.sigma.edges.size(), face.tau.edges)};
}

}  // namespace

LabellingReport check_labelling(const PastingScheme& scheme, const Signature& sig,
                                const Labelling& lab) {
  std::set<std::string> cells0(sig.cells0.begin(), sig.cells0.end());
  for (const auto& [name, c1] : sig.cells1)
    for (const std::string* end : {&c1.dom, &c1.cod})
      if (!cells0.count(*end))
        throw SchemeError("unknown-symbol",
                          "1-cell '" + name + "' refers to undefined 0-cell '" + *end + "'");
  for (const auto& [name, c2] : sig.cells2)
    for (const std::vector<std::string>* side : {&c2.dom, &c2.cod})
      for (const std::string& e : *side)
        if (!sig.cells1.count(e))
          throw SchemeError("unknown-symbol",
                            "2-cell '" + name + "' refers to undefined 1-cell '" + e + "'");

  LabellingReport report;
  auto violation = [&](std::string kind, std::string where, std::string message) {
    report.violations.push_back({std::move(kind), std::move(where), std::move(message)});
  };

  auto vertex_label = [&](const VertexId& v) -> const std::string* {
    auto it = lab.vertex_labels.find(v);
    if (it == lab.vertex_labels.end()) return nullptr;
    if (!cells0.count(it->second))
      throw SchemeError("unknown-symbol",
                        "vertex '" + v + "' is labelled with undefined 0-cell '" + it->second + "'");
    return &it->second;
  };
  for (const VertexId& v : scheme.vertices())
    if (!vertex_label(v)) violation("missing-label", v, "vertex has no 0-cell label");

  for (const Edge& e : scheme.edges()) {
    auto it = lab.edge_labels.find(e.id);
    if (it == lab.edge_labels.end()) {
      violation("missing-label", e.id, "edge has no 1-cell label");
      continue;
    }
    auto c1 = sig.cells1.find(it->second);
    if (c1 == sig.cells1.end())
      throw SchemeError("unknown-symbol",
                        "edge '" + e.id + "' is labelled with undefined 1-cell '" + it->second + "'");
    const std::string* sl = vertex_label(e.src);
    const std::string* tl = vertex_label(e.tgt);
    if (sl && c1->second.dom != *sl)
      violation("domain-mismatch", e.id,
                "1-cell '" + it->second + "' starts at '" + c1->second.dom +
                    "' but the edge starts at '" + *sl + "'");
    if (tl && c1->second.cod != *tl)
      violation("codomain-mismatch", e.id,
                "1-cell '" + it->second + "' ends at '" + c1->second.cod +
                    "' but the edge ends at '" + *tl + "'");
  }

  for (const Face& f : scheme.interior_faces()) {
    auto it = lab.face_labels.find(f.id);
    if (it == lab.face_labels.end()) {
      violation("missing-label", f.id, "face has no 2-cell label");
      continue;
    }
    auto c2 = sig.cells2.find(it->second);
    if (c2 == sig.cells2.end())
      throw SchemeError("unknown-symbol",
                        "face '" + f.id + "' is labelled with undefined 2-cell '" + it->second + "'");
    auto side_labels = [&](const Walk& w) {
      std::vector<std::string> out;
      for (const EdgeId& e : w.edges) {
        auto el = lab.edge_labels.find(e);
        out.push_back(el == lab.edge_labels.end() ? "?" : el->second);
      }
      return out;
    };
    if (c2->second.dom != side_labels(f.sigma))
      violation("domain-mismatch", f.id,
                "2-cell '" + it->second + "' does not match the labels along the upper side");
    if (c2->second.cod != side_labels(f.tau))
      violation("codomain-mismatch", f.id,
                "2-cell '" + it->second + "' does not match the labels along the lower side");
  }
  return report;
}

CompositeTerm compose(const rewrite::FaceString& order, const PastingScheme& scheme,
                      const Labelling& lab) {
  const auto& faces = scheme.interior_faces();
  if (order.size() != faces.size())
    throw SchemeError("bad-order", "composition order must mention every interior face once");
  std::vector<bool> seen(faces.size(), false);
  for (int f : order) {
    if (f < 0 || static_cast<size_t>(f) >= faces.size() || seen[static_cast<size_t>(f)])
      throw SchemeError("bad-order", "composition order must mention every interior face once");
    seen[static_cast<size_t>(f)] = true;
  }

  CompositeTerm term;
  term.from_path = scheme.top_path().edges;
  term.to_path = scheme.bottom_path().edges;
  std::vector<EdgeId> boundary = term.from_path;
  for (int f : order) {
    auto [entry, next] = apply_face(boundary, faces[static_cast<size_t>(f)], lab);
    term.entries.push_back(std::move(entry));
    boundary = std::move(next);
  }
  if (boundary != term.to_path)
    throw engine_bug("boundary sweep did not end on the bottom path");
  return term;
}

std::string path_label(const std::vector<EdgeId>& path, const Labelling& lab) {
  std::string out;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    auto el = lab.edge_labels.find(*it);
    if (el == lab.edge_labels.end())
      throw SchemeError("missing-label", "edge '" + *it + "' has no 1-cell label");
    out += el->second;
  }
  return out;
}

std::string render_entry(const WhiskeredCell& e, const Labelling& lab) {
  return path_label(e.after, lab) + e.cell + path_label(e.before, lab);
}

std::string render(const CompositeTerm& t, const Labelling& lab) {
  if (t.entries.empty()) return "id(" + path_label(t.from_path, lab) + ")";
  std::string out;
  for (auto it = t.entries.rbegin(); it != t.entries.rend(); ++it) {
    if (!out.empty()) out += "·";
    out += render_entry(*it, lab);
  }
  return out;
}

namespace {

std::vector<EdgeId> boundary_before(const rewrite::Step& step, const PastingScheme& scheme,
                                    const Labelling& lab) {
  std::vector<EdgeId> boundary = scheme.top_path().edges;
  const auto& faces = scheme.interior_faces();
  for (int k = 0; k < step.pos; ++k) {
    const int f = step.from[static_cast<size_t>(k)];
    if (f < 0 || static_cast<size_t>(f) >= faces.size())
      throw SchemeError("bad-order", "step string does not index the interior faces");
    boundary = apply_face(boundary, faces[static_cast<size_t>(f)], lab).second;
  }
  return boundary;
}

struct RunPair {
  const Face* earlier = nullptr;
  const Face* later = nullptr;
  size_t earlier_at = 0;
  size_t later_at = 0;
};

RunPair locate_pair(const std::vector<EdgeId>& boundary, const Face& a, const Face& b) {
  std::optional<size_t> pa = find_run(boundary, a.sigma.edges);
  std::optional<size_t> pb = find_run(boundary, b.sigma.edges);
  if (!pa || !pb)
    throw SchemeError("order-not-admissible",
                      "both faces of an interchange must sit on the shared boundary");
  RunPair rp;
  if (*pa < *pb) {
    rp.earlier = &a;
    rp.later = &b;
    rp.earlier_at = *pa;
    rp.later_at = *pb;
  } else {
    rp.earlier = &b;
    rp.later = &a;
    rp.earlier_at = *pb;
    rp.later_at = *pa;
  }
  if (rp.earlier_at + rp.earlier->sigma.edges.size() > rp.later_at)
    throw engine_bug("interchanged faces overlap on the boundary");
  return rp;
}

}  // namespace

InterchangerStep interchanger_of(const rewrite::Step& step, const PastingScheme& scheme,
                                 const Labelling& lab) {
  const auto& faces = scheme.interior_faces();
  if (step.pos < 0 || static_cast<size_t>(step.pos) + 1 >= step.from.size())
    throw SchemeError("invalid-swap", "swap position out of range");
  const Face& first = faces.at(static_cast<size_t>(step.from[static_cast<size_t>(step.pos)]));
  const Face& second = faces.at(static_cast<size_t>(step.from[static_cast<size_t>(step.pos) + 1]));

  InterchangerStep out;
  out.pos = step.pos;
  out.inverse = step.inverse;
  out.boundary = boundary_before(step, scheme, lab);

  RunPair rp = locate_pair(out.boundary, first, second);
  out.earlier_face = rp.earlier->id;
  out.later_face = rp.later->id;
  out.earlier_cell = face_cell(lab, rp.earlier->id);
  out.later_cell = face_cell(lab, rp.later->id);
  out.earlier_sigma = rp.earlier->sigma.edges;
  out.later_sigma = rp.later->sigma.edges;
  out.outer_before.assign(out.boundary.begin(),
                          out.boundary.begin() + static_cast<std::ptrdiff_t>(rp.earlier_at));
  out.middle.assign(out.boundary.begin() + static_cast<std::ptrdiff_t>(
                                               rp.earlier_at + rp.earlier->sigma.edges.size()),
                    out.boundary.begin() + static_cast<std::ptrdiff_t>(rp.later_at));
  out.outer_after.assign(out.boundary.begin() + static_cast<std::ptrdiff_t>(
                                                    rp.later_at + rp.later->sigma.edges.size()),
                         out.boundary.end());
  return out;
}

InterchangeSquare square_of(const rewrite::Step& step, const PastingScheme& scheme,
                            const Labelling& lab) {
  const auto& faces = scheme.interior_faces();
  const Face& first = faces.at(static_cast<size_t>(step.from[static_cast<size_t>(step.pos)]));
  const Face& second = faces.at(static_cast<size_t>(step.from[static_cast<size_t>(step.pos) + 1]));

  InterchangeSquare sq;
  sq.corner_start = boundary_before(step, scheme, lab);
  auto [e1, after_first] = apply_face(sq.corner_start, first, lab);
  sq.source_route_first = e1;
  sq.corner_after_first = after_first;
  auto [e2, end1] = apply_face(after_first, second, lab);
  sq.source_route_second = e2;

  auto [e3, after_second] = apply_face(sq.corner_start, second, lab);
  sq.target_route_first = e3;
  sq.corner_after_second = after_second;
  auto [e4, end2] = apply_face(after_second, first, lab);
  sq.target_route_second = e4;

  if (end1 != end2) throw engine_bug("interchange square corners disagree");
  sq.corner_end = end1;
  return sq;
}

std::string render_interchanger(const InterchangerStep& s, const Labelling& lab) {
  // Both cells are printed as whiskered at the shared source corner, where the
  // boundary reads outer_before . earlier_sigma . middle . later_sigma . outer_after.
  std::vector<EdgeId> later_before = s.outer_before;
  later_before.insert(later_before.end(), s.earlier_sigma.begin(), s.earlier_sigma.end());
  later_before.insert(later_before.end(), s.middle.begin(), s.middle.end());
  std::vector<EdgeId> earlier_after = s.middle;
  earlier_after.insert(earlier_after.end(), s.later_sigma.begin(), s.later_sigma.end());
  earlier_after.insert(earlier_after.end(), s.outer_after.begin(), s.outer_after.end());

  const std::string later_part =
      path_label(s.outer_after, lab) + s.later_cell + path_label(later_before, lab);
  const std::string earlier_part =
      path_label(earlier_after, lab) + s.earlier_cell + path_label(s.outer_before, lab);
  std::string out = "γ_{" + later_part + "," + earlier_part + "}";
  if (s.inverse) out += "⁻¹";
  return out;
}

std::vector<InterchangerStep> word_to_steps(const rewrite::Word& w, const PastingScheme& scheme,
                                            const Labelling& lab) {
  std::vector<InterchangerStep> out;
  out.reserve(w.steps.size());
  for (const rewrite::Step& st : w.steps) out.push_back(interchanger_of(st, scheme, lab));
  return out;
}

namespace {

rewrite::FaceString order_of(const CompositeTerm& t, const PastingScheme& scheme) {
  rewrite::FaceString order;
  order.reserve(t.entries.size());
  for (const WhiskeredCell& e : t.entries) order.push_back(scheme.face_index(e.face));
  return order;
}

void validate_term(const CompositeTerm& t, const PastingScheme& scheme, const Labelling& lab) {
  if (t.from_path != scheme.top_path().edges || t.to_path != scheme.bottom_path().edges)
    throw SchemeError("boundary-mismatch",
                      "term endpoints do not match the diagram's outer boundary");
  CompositeTerm again = compose(order_of(t, scheme), scheme, lab);
  for (size_t i = 0; i < t.entries.size(); ++i)
    if (!(again.entries[i] == t.entries[i]))
      throw SchemeError("bad-term", "entry " + std::to_string(i) +
                                        " carries whiskers that do not match its position");
}

// Swaps adjacent independent entries in place, recomputing their whiskers from
// entry-local data only.
void transport_swap(std::vector<WhiskeredCell>& entries, int pos, const PastingScheme& scheme,
                    const Labelling& lab) {
  WhiskeredCell& ei = entries.at(static_cast<size_t>(pos));
  WhiskeredCell& ej = entries.at(static_cast<size_t>(pos) + 1);
  const Face& fi = scheme.interior_faces()[static_cast<size_t>(scheme.face_index(ei.face))];
  const Face& fj = scheme.interior_faces()[static_cast<size_t>(scheme.face_index(ej.face))];

  std::vector<EdgeId> boundary = ei.before;
  boundary.insert(boundary.end(), fi.sigma.edges.begin(), fi.sigma.edges.end());
  boundary.insert(boundary.end(), ei.after.begin(), ei.after.end());

  auto [first, mid] = apply_face(boundary, fj, lab);
  auto [second, end] = apply_face(mid, fi, lab);
  (void)end;
  ei = std::move(first);
  ej = std::move(second);
}

}  // namespace

bool strict_collapse_equal(const CompositeTerm& t1, const CompositeTerm& t2,
                           const PastingScheme& scheme, const rewrite::Engine& engine,
                           const Labelling& lab) {
  validate_term(t1, scheme, lab);
  validate_term(t2, scheme, lab);

  auto normalised = [&](const CompositeTerm& t) {
    rewrite::FaceString order = order_of(t, scheme);
    if (!engine.is_object(order))
      throw SchemeError("bad-term", "entry order violates the composition constraints");
    rewrite::NormalizeResult res = engine.normalize(order, rewrite::Strategy::Leftmost);
    std::vector<WhiskeredCell> entries = t.entries;
    for (const rewrite::Step& st : res.word.steps)
      transport_swap(entries, st.pos, scheme, lab);
    return std::make_pair(res.normal_form, entries);
  };

  auto [nf1, e1] = normalised(t1);
  auto [nf2, e2] = normalised(t2);
  if (nf1 != nf2) return false;

  CompositeTerm direct = compose(nf1, scheme, lab);
  if (!(direct.entries == e1))
    throw engine_bug("entry transport disagrees with direct composition");
  return e1 == e2;
}

}  // namespace graypaste::composer
