#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "graypaste/composer.hpp"
#include "graypaste/json_io.hpp"
#include "support/fixtures.hpp"
#include "support/generator.hpp"

using namespace graypaste;
using namespace graypaste::composer;
using graypaste::rewrite::Engine;
using graypaste::rewrite::FaceString;
using graypaste::rewrite::Strategy;

namespace {

template <typename Fn>
std::string error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const SchemeError& e) {
    return e.kind();
  }
  return "<no-error>";
}

struct FiveCells {
  PastingScheme scheme;
  Signature sig;
  Labelling lab;
  FiveCells() : scheme(fixtures::load(fixtures::five_cells())) {
    auto parsed = io::parse_labelling(fixtures::five_cells_labels());
    sig = std::move(parsed.first);
    lab = std::move(parsed.second);
  }
};

}  // namespace

TEST_CASE("the five cell labelling checks out") {
  FiveCells fx;
  LabellingReport rep = check_labelling(fx.scheme, fx.sig, fx.lab);
  CHECK(rep.ok());
}

TEST_CASE("labelling violations are located and classified") {
  FiveCells fx;

  Labelling missing = fx.lab;
  missing.face_labels.erase("F3");
  auto rep = check_labelling(fx.scheme, fx.sig, missing);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].kind == "missing-label");

  Signature wrong = fx.sig;
  wrong.cells2["α"].dom = {"a"};  // really b
  rep = check_labelling(fx.scheme, wrong, fx.lab);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].kind == "domain-mismatch");

  Signature wrongcod = fx.sig;
  wrongcod.cells2["γ"].cod = {"g", "g"};
  rep = check_labelling(fx.scheme, wrongcod, fx.lab);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].kind == "codomain-mismatch");

  Labelling dangling = fx.lab;
  dangling.face_labels["F1"] = "ω";  // no such 2-cell
  CHECK(error_kind([&] { check_labelling(fx.scheme, fx.sig, dangling); }) == "unknown-symbol");
}

TEST_CASE("composites of the five cell diagram in all three orders") {
  FiveCells fx;
  Engine e(fx.scheme, 10);

  CompositeTerm nf = compose(FaceString{1, 0, 2, 4, 3}, fx.scheme, fx.lab);
  CHECK(render(nf, fx.lab) == "mδ·φd·γd·cfβ·cαa");
  CHECK(nf.from_path == std::vector<EdgeId>{"a", "b", "c"});
  CHECK(nf.to_path == std::vector<EdgeId>{"h", "i", "m"});
  REQUIRE(nf.entries.size() == 5);
  CHECK(nf.entries[0].cell == "α");
  CHECK(nf.entries[0].before == std::vector<EdgeId>{"a"});
  CHECK(nf.entries[0].after == std::vector<EdgeId>{"c"});

  CHECK(render(compose(FaceString{1, 2, 0, 4, 3}, fx.scheme, fx.lab), fx.lab) ==
        "mδ·φd·gβ·γea·cαa");
  CHECK(render(compose(FaceString{1, 2, 4, 0, 3}, fx.scheme, fx.lab), fx.lab) ==
        "mδ·mlβ·φea·γea·cαa");
}

TEST_CASE("identity composites print as identities") {
  PastingScheme s = fixtures::load(fixtures::single_bridge());
  auto [sig, lab] = fixtures::free_labelling(s);
  lab.edge_labels["e"] = "f";
  CompositeTerm t = compose({}, s, lab);
  CHECK(t.entries.empty());
  CHECK(render(t, lab) == "id(f)");
}

TEST_CASE("path labels concatenate right to left") {
  FiveCells fx;
  CHECK(path_label({"a", "e"}, fx.lab) == "ea");
  CHECK(path_label({}, fx.lab) == "");
}

TEST_CASE("composition rejects non-orders") {
  FiveCells fx;
  CHECK(error_kind([&] { compose(FaceString{0, 0, 2, 4, 3}, fx.scheme, fx.lab); }) ==
        "bad-order");
  CHECK(error_kind([&] { compose(FaceString{0, 1}, fx.scheme, fx.lab); }) == "bad-order");
  // F1 before F2 contradicts the triangle ordering: F1's upper side is not on
  // the boundary yet when F1 comes first
  CHECK(error_kind([&] { compose(FaceString{0, 1, 2, 4, 3}, fx.scheme, fx.lab); }) ==
        "order-not-admissible");
}

TEST_CASE("the interchanger of the one swap below the normal form") {
  FiveCells fx;
  Engine e(fx.scheme, 10);
  auto r = e.normalize(FaceString{1, 2, 0, 4, 3}, Strategy::Leftmost);
  REQUIRE(r.word.steps.size() == 1);

  InterchangerStep step = interchanger_of(r.word.steps[0], fx.scheme, fx.lab);
  CHECK(step.pos == 1);
  CHECK(step.earlier_face == "F1");
  CHECK(step.later_face == "F3");
  CHECK(step.earlier_cell == "β");
  CHECK(step.later_cell == "γ");
  CHECK_FALSE(step.inverse);
  CHECK(step.boundary == std::vector<EdgeId>{"a", "e", "f", "c"});
  CHECK(step.outer_before.empty());
  CHECK(step.earlier_sigma == std::vector<EdgeId>{"a", "e"});
  CHECK(step.middle.empty());
  CHECK(step.later_sigma == std::vector<EdgeId>{"f", "c"});
  CHECK(step.outer_after.empty());
  CHECK(render_interchanger(step, fx.lab) == "γ_{γea,cfβ}");

  InterchangeSquare sq = square_of(r.word.steps[0], fx.scheme, fx.lab);
  CHECK(sq.corner_start == std::vector<EdgeId>{"a", "e", "f", "c"});
  CHECK(sq.corner_after_first == std::vector<EdgeId>{"a", "e", "g"});
  CHECK(sq.corner_after_second == std::vector<EdgeId>{"d", "f", "c"});
  CHECK(sq.corner_end == std::vector<EdgeId>{"d", "g"});
  CHECK(render_entry(sq.source_route_first, fx.lab) == "γea");
  CHECK(render_entry(sq.source_route_second, fx.lab) == "gβ");
  CHECK(render_entry(sq.target_route_first, fx.lab) == "cfβ");
  CHECK(render_entry(sq.target_route_second, fx.lab) == "γd");
}

TEST_CASE("interchangers against the orientation carry an inverse sign") {
  FiveCells fx;
  Engine e(fx.scheme, 10);
  rewrite::Step down = e.normalize(FaceString{1, 2, 0, 4, 3}, Strategy::Leftmost).word.steps[0];
  rewrite::Step up{down.to(), down.pos, true};
  InterchangerStep inv = interchanger_of(up, fx.scheme, fx.lab);
  CHECK(inv.inverse);
  std::string rendered = render_interchanger(inv, fx.lab);
  CHECK(rendered.substr(rendered.size() - std::string("⁻¹").size()) == "⁻¹");
}

TEST_CASE("a reduction word maps to one interchanger per swap") {
  FiveCells fx;
  Engine e(fx.scheme, 10);
  auto r = e.normalize(FaceString{1, 2, 4, 0, 3}, Strategy::Leftmost);
  auto steps = word_to_steps(r.word, fx.scheme, fx.lab);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].pos == 2);
  CHECK(steps[0].earlier_face == "F1");
  CHECK(steps[0].later_face == "F5");
  CHECK(render_interchanger(steps[0], fx.lab) == "γ_{φea,gβ}");
  CHECK(steps[1].pos == 1);
  CHECK(render_interchanger(steps[1], fx.lab) == "γ_{γea,cfβ}");
}

TEST_CASE("all composites collapse to the same strict value") {
  FiveCells fx;
  Engine e(fx.scheme, 10);
  std::vector<CompositeTerm> terms;
  for (const FaceString& order : e.objects())
    terms.push_back(compose(order, fx.scheme, fx.lab));
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j)
      CHECK(strict_collapse_equal(terms[i], terms[j], fx.scheme, e, fx.lab));
}

TEST_CASE("collapse comparison rejects doctored terms") {
  FiveCells fx;
  Engine e(fx.scheme, 10);
  CompositeTerm good = compose(e.objects()[0], fx.scheme, fx.lab);

  CompositeTerm wrong_path = good;
  wrong_path.from_path = {"a", "b"};
  CHECK(error_kind([&] { strict_collapse_equal(good, wrong_path, fx.scheme, e, fx.lab); }) ==
        "boundary-mismatch");

  CompositeTerm scrambled = good;
  std::swap(scrambled.entries[1], scrambled.entries[2]);
  CHECK(error_kind([&] { strict_collapse_equal(good, scrambled, fx.scheme, e, fx.lab); }) ==
        "bad-term");
}

TEST_CASE("an engine with no oriented moves reports distinct strict values") {
  PastingScheme s = fixtures::load(fixtures::three_lens());
  auto [sig, lab] = fixtures::free_labelling(s);
  // forget the precedence pair entirely: both orders become their own normal
  // form, and the two composites no longer meet
  std::vector<std::string> labels{"F1", "F2", "F3"};
  relations::FaceRelation empty_prec(labels);
  Engine degenerate(empty_prec,
                    relations::transitive_closure(relations::triangle_relation(s)), 10);
  CompositeTerm t1 = compose(FaceString{0, 2, 1}, s, lab);
  CompositeTerm t2 = compose(FaceString{2, 0, 1}, s, lab);
  CHECK_FALSE(strict_collapse_equal(t1, t2, s, degenerate, lab));
  Engine honest(s, 10);
  CHECK(strict_collapse_equal(t1, t2, s, honest, lab));
}

TEST_CASE("random schemes compose coherently under the identity labelling") {
  std::mt19937_64 rng(20240819);
  for (int trial = 0; trial < 15; ++trial) {
    testgen::RandomSchemeOptions opt;
    opt.faces = 1 + static_cast<int>(rng() % 4);
    PastingScheme s = validate_scheme(testgen::random_scheme(rng, opt));
    auto [sig, lab] = fixtures::free_labelling(s);
    CHECK(check_labelling(s, sig, lab).ok());
    Engine e(s, 10);
    if (e.objects().size() > 24) continue;
    std::vector<CompositeTerm> terms;
    for (const FaceString& order : e.objects()) terms.push_back(compose(order, s, lab));
    for (size_t i = 0; i + 1 < terms.size(); ++i)
      CHECK(strict_collapse_equal(terms[i], terms[i + 1], s, e, lab));
  }
}
