#include "graypaste/relations.hpp"

#include <algorithm>

namespace graypaste::relations {

namespace {
constexpr size_t kMaxExtensions = 500000;
}

FaceRelation::FaceRelation(std::vector<std::string> labels, RelationKind kind)
    : labels_(std::move(labels)), kind_(kind) {
  mat_.assign(labels_.size(), std::vector<bool>(labels_.size(), false));
}

void FaceRelation::set(int a, int b, bool value) {
  mat_.at(static_cast<size_t>(a)).at(static_cast<size_t>(b)) = value;
}

std::vector<std::pair<int, int>> FaceRelation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (contains(a, b)) out.emplace_back(a, b);
  return out;
}

FaceRelation triangle_relation(const PastingScheme& scheme) {
  const auto& faces = scheme.interior_faces();
  std::vector<std::string> labels;
  labels.reserve(faces.size());
  for (const Face& f : faces) labels.push_back(f.id);
  FaceRelation rel(std::move(labels), RelationKind::Triangle);

  std::vector<std::vector<bool>> tau_edges(faces.size());
  for (size_t i = 0; i < faces.size(); ++i) {
    tau_edges[i].assign(scheme.edges().size(), false);
    for (const EdgeId& e : faces[i].tau.edges)
      tau_edges[i][static_cast<size_t>(scheme.edge_index(e))] = true;
  }
  for (size_t j = 0; j < faces.size(); ++j)
    for (const EdgeId& e : faces[j].sigma.edges) {
      const size_t ei = static_cast<size_t>(scheme.edge_index(e));
      for (size_t i = 0; i < faces.size(); ++i)
        if (tau_edges[i][ei]) rel.set(static_cast<int>(i), static_cast<int>(j));
    }

  for (int i = 0; i < rel.size(); ++i)
    if (rel.contains(i, i))
      throw engine_bug("side-sharing relation is reflexive at " + faces[static_cast<size_t>(i)].id);
  if (!is_acyclic(rel)) throw engine_bug("side-sharing relation has a cycle");
  return rel;
}

FaceRelation prec_relation(const PastingScheme& scheme) {
  const auto& faces = scheme.interior_faces();
  std::vector<std::string> labels;
  labels.reserve(faces.size());
  for (const Face& f : faces) labels.push_back(f.id);
  FaceRelation rel(std::move(labels), RelationKind::Prec);

  for (size_t i = 0; i < faces.size(); ++i)
    for (size_t j = 0; j < faces.size(); ++j) {
      if (i == j) continue;
      const int t_i = scheme.vertex_index(faces[i].t);
      const int s_j = scheme.vertex_index(faces[j].s);
      if (scheme.reaches(t_i, s_j)) rel.set(static_cast<int>(i), static_cast<int>(j));
    }

  for (int i = 0; i < rel.size(); ++i)
    for (int j = 0; j < rel.size(); ++j) {
      if (rel.contains(i, j) && rel.contains(j, i))
        throw engine_bug("precedence relation is not antisymmetric");
      if (rel.contains(i, j))
        for (int k = 0; k < rel.size(); ++k)
          if (rel.contains(j, k) && !rel.contains(i, k))
            throw engine_bug("precedence relation is not transitive");
    }
  return rel;
}

FaceRelation transitive_closure(const FaceRelation& rel) {
  FaceRelation out(rel.labels(), RelationKind::Closure);
  const int n = rel.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rel.contains(a, b)) out.set(a, b);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a) {
      if (!out.contains(a, k)) continue;
      for (int b = 0; b < n; ++b)
        if (out.contains(k, b)) out.set(a, b);
    }
  return out;
}

bool is_acyclic(const FaceRelation& rel) {
  const int n = rel.size();
  std::vector<int> color(static_cast<size_t>(n), 0);  // 0 white, 1 grey, 2 black
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (color[static_cast<size_t>(root)]) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      int v = stack.back();
      if (color[static_cast<size_t>(v)] == 0) {
        color[static_cast<size_t>(v)] = 1;
        for (int w = 0; w < n; ++w) {
          if (!rel.contains(v, w)) continue;
          if (color[static_cast<size_t>(w)] == 1) return false;
          if (color[static_cast<size_t>(w)] == 0) stack.push_back(w);
        }
      } else {
        if (color[static_cast<size_t>(v)] == 1) color[static_cast<size_t>(v)] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

std::vector<int> minimal_elements(const FaceRelation& rel, const std::vector<int>& subset) {
  if (subset.empty()) throw engine_bug("minimal element query over an empty subset");
  std::vector<int> out;
  for (int b : subset) {
    bool minimal = true;
    for (int a : subset)
      if (a != b && rel.contains(a, b)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void extend(const FaceRelation& rel, std::vector<int>& remaining, std::vector<int>& prefix,
            std::vector<std::vector<int>>& out) {
  if (remaining.empty()) {
    if (out.size() >= kMaxExtensions)
      throw SchemeError("extension-limit",
                        "more than " + std::to_string(kMaxExtensions) +
                            " admissible orders; use a sampling mode instead");
    out.push_back(prefix);
    return;
  }
  // members minimal within `remaining`; ascending order keeps output lexicographic
  for (size_t pick = 0; pick < remaining.size(); ++pick) {
    const int b = remaining[pick];
    bool minimal = true;
    for (int a : remaining)
      if (a != b && rel.contains(a, b)) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    prefix.push_back(b);
    extend(rel, remaining, prefix, out);
    prefix.pop_back();
    remaining.insert(remaining.begin() + static_cast<std::ptrdiff_t>(pick), b);
  }
}

}  // namespace

std::vector<std::vector<int>> linear_extensions(const FaceRelation& rel) {
  std::vector<int> remaining(static_cast<size_t>(rel.size()));
  for (int i = 0; i < rel.size(); ++i) remaining[static_cast<size_t>(i)] = i;
  std::vector<int> prefix;
  std::vector<std::vector<int>> out;
  extend(rel, remaining, prefix, out);
  if (out.empty() && rel.size() > 0)
    throw SchemeError("relation-cyclic", "the relation admits no linear extension");
  return out;
}

std::vector<int> one_extension(const FaceRelation& rel) {
  std::vector<int> remaining(static_cast<size_t>(rel.size()));
  for (int i = 0; i < rel.size(); ++i) remaining[static_cast<size_t>(i)] = i;
  std::vector<int> out;
  while (!remaining.empty()) {
    std::vector<int> mins = minimal_elements(rel, remaining);
    if (mins.empty())
      throw SchemeError("relation-cyclic", "the relation admits no linear extension");
    const int b = mins.front();
    out.push_back(b);
    remaining.erase(std::find(remaining.begin(), remaining.end(), b));
  }
  return out;
}

ComparabilityReport check_comparability(const PastingScheme& scheme) {
  const FaceRelation tri = transitive_closure(triangle_relation(scheme));
  const FaceRelation prec = prec_relation(scheme);
  ComparabilityReport report;
  for (int a = 0; a < tri.size(); ++a)
    for (int b = a + 1; b < tri.size(); ++b) {
      ComparabilityReport::Entry e;
      e.a = a;
      e.b = b;
      e.triangle_comparable = tri.contains(a, b) || tri.contains(b, a);
      e.prec_comparable = prec.contains(a, b) || prec.contains(b, a);
      report.pairs.push_back(e);
      if (e.triangle_comparable == e.prec_comparable) report.violations.push_back(e);
    }
  return report;
}

}  // namespace graypaste::relations
