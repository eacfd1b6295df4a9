#ifndef GRAYPASTE_RELATIONS_HPP
#define GRAYPASTE_RELATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "graypaste/scheme.hpp"

namespace graypaste::relations {

enum class RelationKind { Triangle, Prec, Closure, Generic };

// Dense binary relation over a fixed, ordered universe of labelled elements.
class FaceRelation {
 public:
  FaceRelation() = default;
  FaceRelation(std::vector<std::string> labels, RelationKind kind = RelationKind::Generic);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  RelationKind kind() const { return kind_; }

  bool contains(int a, int b) const { return mat_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  void set(int a, int b, bool value = true);

  // All related pairs, ordered by (first, second) index.
  std::vector<std::pair<int, int>> pairs() const;

  bool operator==(const FaceRelation&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> mat_;
  RelationKind kind_ = RelationKind::Generic;
};

// F1 relates to F2 when tau_F1 and sigma_F2 share at least one edge. Asserts
// irreflexivity and acyclicity (guaranteed on validated schemes).
FaceRelation triangle_relation(const PastingScheme& scheme);

// F1 relates to F2 when a (possibly empty) directed path runs from t_F1 to
// s_F2. Asserts a strict partial order.
FaceRelation prec_relation(const PastingScheme& scheme);

FaceRelation transitive_closure(const FaceRelation& rel);

// Cycle detection by depth-first search (independent of transitive_closure).
bool is_acyclic(const FaceRelation& rel);

// Elements of `subset` with no predecessor inside `subset`. Errors on empty input.
std::vector<int> minimal_elements(const FaceRelation& rel, const std::vector<int>& subset);

// All strict linear extensions of the (transitive closure of the) relation, as
// index sequences, enumerated in lexicographic index order. Errors if cyclic or
// if the result would exceed an internal cap.
std::vector<std::vector<int>> linear_extensions(const FaceRelation& rel);

// The minimal-element-removal construction, smallest index first on ties.
std::vector<int> one_extension(const FaceRelation& rel);

struct ComparabilityReport {
  struct Entry {
    int a = 0, b = 0;
    bool triangle_comparable = false;
    bool prec_comparable = false;
  };
  std::vector<Entry> pairs;       // every unordered interior pair
  std::vector<Entry> violations;  // pairs failing the exclusive-or
  bool ok() const { return violations.empty(); }
};

// Checks that every unordered pair of interior faces is comparable under
// exactly one of: the transitive closure of the triangle relation, or the
// precedence relation.
ComparabilityReport check_comparability(const PastingScheme& scheme);

}  // namespace graypaste::relations

#endif
