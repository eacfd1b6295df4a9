#ifndef GRAYPASTE_COMPOSER_HPP
#define GRAYPASTE_COMPOSER_HPP

#include <map>
#include <string>
#include <vector>

#include "graypaste/rewrite.hpp"
#include "graypaste/scheme.hpp"

namespace graypaste::composer {

// Target cells. 1-cell boundaries are 0-cell names; 2-cell boundaries are
// 1-cell paths listed in traversal order (first composed cell first).
struct Signature {
  std::vector<std::string> cells0;
  struct Cell1 {
    std::string dom;
    std::string cod;
  };
  std::map<std::string, Cell1> cells1;
  struct Cell2 {
    std::vector<std::string> dom;
    std::vector<std::string> cod;
  };
  std::map<std::string, Cell2> cells2;
};

struct Labelling {
  std::map<VertexId, std::string> vertex_labels;
  std::map<EdgeId, std::string> edge_labels;
  std::map<FaceId, std::string> face_labels;  // interior faces only
};

struct LabellingReport {
  struct Violation {
    std::string kind;
    std::string where;
    std::string message;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Dimension bookkeeping: edge labels match endpoint labels, face labels match
// the labels of sigma (domain) and tau (codomain). Unresolved symbols throw.
LabellingReport check_labelling(const PastingScheme& scheme, const Signature& sig,
                                const Labelling& lab);

// One whiskered 2-cell. `before` runs from the global source up to the cell's
// start; `after` from its end to the global sink. Contexts are edge paths;
// labels are resolved at print time. Rendered right-to-left, `after` prints on
// the left.
struct WhiskeredCell {
  std::vector<EdgeId> before;
  std::vector<EdgeId> after;
  FaceId face;
  std::string cell;
  bool operator==(const WhiskeredCell&) const = default;
};

struct CompositeTerm {
  std::vector<WhiskeredCell> entries;  // application order, first applied first
  std::vector<EdgeId> from_path;       // global top path
  std::vector<EdgeId> to_path;         // global bottom path
};

// Sweeps the composition order across the diagram, rewriting the boundary from
// the top path to the bottom path. Requires `order` to be an object.
CompositeTerm compose(const rewrite::FaceString& order, const PastingScheme& scheme,
                      const Labelling& lab);

std::string path_label(const std::vector<EdgeId>& path, const Labelling& lab);
std::string render_entry(const WhiskeredCell& e, const Labelling& lab);
// Entries in reverse application order joined with U+00B7; identity composites
// print as id(<path label>).
std::string render(const CompositeTerm& t, const Labelling& lab);

struct InterchangerStep {
  int pos = 0;                // position of the swap in its source string
  FaceId earlier_face;        // the precedence-smaller face (nearer the source)
  FaceId later_face;
  std::string earlier_cell;
  std::string later_cell;
  bool inverse = false;       // false: oriented (normalizing) direction
  std::vector<EdgeId> boundary;       // 1-cell boundary before either face applies
  std::vector<EdgeId> outer_before;   // boundary prefix (prints on the right)
  std::vector<EdgeId> earlier_sigma;  // upper side of the earlier face
  std::vector<EdgeId> middle;         // between the two cells
  std::vector<EdgeId> later_sigma;    // upper side of the later face
  std::vector<EdgeId> outer_after;    // boundary suffix (prints on the left)
};

// The interchange square filled by the step's Gray cell.
struct InterchangeSquare {
  std::vector<EdgeId> corner_start;        // shared 1-cell source
  std::vector<EdgeId> corner_after_first;  // after the string's pos-th face
  std::vector<EdgeId> corner_after_second; // after the pos+1-th face instead
  std::vector<EdgeId> corner_end;
  WhiskeredCell source_route_first;   // string order: face at pos, then pos+1
  WhiskeredCell source_route_second;
  WhiskeredCell target_route_first;   // swapped order
  WhiskeredCell target_route_second;
};

InterchangerStep interchanger_of(const rewrite::Step& step, const PastingScheme& scheme,
                                 const Labelling& lab);
InterchangeSquare square_of(const rewrite::Step& step, const PastingScheme& scheme,
                            const Labelling& lab);
// gamma_{later,earlier} with whisker contexts; trailing inverse sign when the
// step runs against the orientation.
std::string render_interchanger(const InterchangerStep& s, const Labelling& lab);

std::vector<InterchangerStep> word_to_steps(const rewrite::Word& w,
                                            const PastingScheme& scheme,
                                            const Labelling& lab);

// Equality after collapsing every interchanger to an identity: both terms are
// validated, then renormalised to the composite of the same canonical face
// order and compared verbatim. Boundary mismatches throw.
bool strict_collapse_equal(const CompositeTerm& t1, const CompositeTerm& t2,
                           const PastingScheme& scheme, const rewrite::Engine& engine,
                           const Labelling& lab);

}  // namespace graypaste::composer

#endif
