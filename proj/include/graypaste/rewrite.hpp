#ifndef GRAYPASTE_REWRITE_HPP
#define GRAYPASTE_REWRITE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graypaste/relations.hpp"
#include "graypaste/scheme.hpp"

namespace graypaste::rewrite {

// A composition order, as interior-face indices. Always a permutation of
// 0..n-1 respecting the closure of the triangle relation.
using FaceString = std::vector<int>;

// One adjacent transposition. With inverse == false this is an oriented
// rewrite: the face at pos+1 precedes the face at pos and moves left. With
// inverse == true it is the formal inverse (only meaningful in words that
// allow inverses).
struct Step {
  FaceString from;
  int pos = 0;
  bool inverse = false;

  FaceString to() const;
  bool operator==(const Step&) const = default;
};

struct Word {
  FaceString source;
  std::vector<Step> steps;

  FaceString target() const;
  bool has_inverses() const;
  bool operator==(const Word&) const = default;
};

enum class Strategy { Leftmost, Rightmost, Random };

struct NormalizeResult {
  FaceString normal_form;
  Word word;
};

enum class ForkKind { Identical, Square, Hexagon };

// Two rewrites applicable at the same string, with the closing routes.
struct Fork {
  FaceString at;
  int pos_left = 0;   // smaller position of the pair
  int pos_right = 0;  // larger position (== pos_left when identical)
  ForkKind kind = ForkKind::Identical;
  Word route_left;    // starts with the swap at pos_left
  Word route_right;   // starts with the swap at pos_right
};

enum class ApplicationKind { Cancel, Exchange, Hexagon };

// One relation application on a word: replace the subword `before`, found at
// word index `loc`, with `after`. Replay is pure substitution plus checking.
struct RelationApplication {
  ApplicationKind kind = ApplicationKind::Exchange;
  int loc = 0;
  std::vector<Step> before;
  std::vector<Step> after;
};

struct UniqueNormalFormReport {
  bool graph_connected = false;
  int sink_count = 0;
  std::optional<FaceString> normal_form;
  std::vector<std::string> strategies;  // descriptions, for certificates
  bool strategies_agree = false;
  bool ok() const { return graph_connected && sink_count == 1 && strategies_agree; }
};

struct GroupoidCaseCounts {
  // Exchange-relation instances by orientation pattern of the two generators.
  int b_both_oriented = 0;
  int b_neither_oriented = 0;
  int b_mixed = 0;
  // Hexagon-relation instances by how many of the three generators are oriented.
  int c_three_oriented = 0;
  int c_none_oriented = 0;
  int c_two_oriented = 0;
  int c_one_oriented = 0;
  int replayed = 0;
  int failed = 0;
};

struct Certificate {
  int objects = 0;
  std::optional<FaceString> normal_form;
  int exchange_edges = 0;
  bool graph_connected = false;
  UniqueNormalFormReport unique_nf;
  int branchings_total = 0;
  int branchings_identical = 0;
  int branchings_square = 0;
  int branchings_hexagon = 0;
  std::string tessellation_mode;  // "exhaustive" | "sampled"
  int tessellation_pairs = 0;
  int tessellation_replayed = 0;
  GroupoidCaseCounts groupoid;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

class Engine {
 public:
  // Normal construction: relations derived from the scheme.
  Engine(const PastingScheme& scheme, int face_limit);

  // Raw construction from matrices; lets tests inject a tampered relation.
  Engine(relations::FaceRelation prec, relations::FaceRelation triangle_closure,
         int face_limit);

  int face_count() const { return n_; }
  const relations::FaceRelation& prec() const { return prec_; }
  const relations::FaceRelation& triangle_closure() const { return closure_; }

  bool prec_pair(int smaller, int larger) const { return prec_.contains(smaller, larger); }
  // Swappable at all (either orientation), i.e. closure-incomparable.
  bool swappable(int a, int b) const;

  const std::vector<FaceString>& objects() const;
  bool is_object(const FaceString& s) const;
  int object_index(const FaceString& s) const;  // -1 when absent

  std::vector<int> applicable_rewrites(const FaceString& s) const;
  int rho(const FaceString& s) const;
  FaceString apply_swap(const FaceString& s, int pos) const;

  NormalizeResult normalize(const FaceString& s, Strategy strategy,
                            std::uint64_t seed = 0) const;

  // Undirected exchange-graph edges as (object index, object index) pairs.
  std::vector<std::pair<int, int>> exchange_edges() const;
  bool exchange_graph_connected() const;

  std::vector<Fork> local_branchings() const;

  UniqueNormalFormReport check_unique_normal_form(
      const std::vector<std::uint64_t>& random_seeds) const;

  // All oriented words from s to the normal form (reduction-DAG paths).
  std::vector<Word> words_to_normal_form(const FaceString& s, size_t cap = 50000) const;

  // Some oriented word from one object to another; errors if unreachable.
  Word oriented_word_between(const FaceString& from, const FaceString& to) const;

  // Sequence of relation applications turning w1 into w2 (parallel oriented
  // words). Mechanical replay of the result reproduces w2 verbatim.
  std::vector<RelationApplication> tessellate(const Word& w1, const Word& w2) const;

  // Pure replay; throws when an application does not match.
  Word replay(const Word& w, const std::vector<RelationApplication>& apps) const;

  // Derivation chain for one relation instance of the two-generator exchange
  // or three-generator hexagon schema, using only cancellation pairs and
  // oriented exchange/hexagon applications. Empty optional when none found
  // within bounds (treated as a counterexample by the certificate).
  std::optional<std::vector<RelationApplication>> derive_relation_instance(
      const Word& lhs, const Word& rhs, const std::vector<int>& window_positions) const;

  GroupoidCaseCounts verify_groupoid_relation_cases() const;

  struct CertificateOptions {
    std::string mode = "auto";  // "auto" | "exhaustive" | "sampled"
    std::optional<std::uint64_t> seed;
    int sampled_pairs = 1000;
    std::vector<std::uint64_t> strategy_seeds = {11, 12, 13};
  };
  Certificate check_contractibility(const CertificateOptions& opts) const;

  // Exhaustive thresholds from the build contract.
  static constexpr int kExhaustiveObjectLimit = 64;
  static constexpr int kExhaustiveRhoLimit = 8;

  int max_rho() const;

 private:
  void check_limit() const;
  Step make_step(const FaceString& from, int pos) const;  // orientation inferred
  bool word_well_formed(const Word& w) const;
  GroupoidCaseCounts verify_groupoid_cases(const std::vector<FaceString>& over) const;

  int n_ = 0;
  int face_limit_ = 10;
  relations::FaceRelation prec_;
  relations::FaceRelation closure_;
  mutable std::vector<FaceString> objects_;
  mutable bool objects_built_ = false;
  mutable std::map<FaceString, int> object_index_;
};

}  // namespace graypaste::rewrite

#endif
