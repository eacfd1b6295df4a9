#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graypaste/composer.hpp"
#include "graypaste/json_io.hpp"
#include "graypaste/relations.hpp"
#include "graypaste/rewrite.hpp"
#include "graypaste/scheme.hpp"

namespace {

using nlohmann::json;
using namespace graypaste;

constexpr int kDefaultFaceLimit = 10;

// Parse/shape/usage problems exit 2; semantic failures exit 1.
int exit_code_for(const std::string& kind) {
  if (kind == "io-error" || kind == "json-syntax" || kind == "malformed-document" ||
      kind == "bad-usage")
    return 2;
  return 1;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemeError("io-error", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemeError("json-syntax", std::string(e.what()), json{{"file", path}});
  }
}

struct GlobalOptions {
  std::optional<int> limit;
  bool flip = false;

  int effective_limit() const {
    if (limit) return *limit;
    if (const char* env = std::getenv("GRAYPASTE_LIMIT")) {
      try {
        size_t used = 0;
        int v = std::stoi(env, &used);
        if (used != std::string(env).size() || v < 0) throw std::invalid_argument(env);
        return v;
      } catch (const std::exception&) {
        throw SchemeError("bad-usage", std::string("GRAYPASTE_LIMIT is not a non-negative "
                                                   "integer: '") +
                                           env + "'");
      }
    }
    return kDefaultFaceLimit;
  }
};

PastingScheme load_scheme(const std::string& path, const GlobalOptions& g) {
  RawScheme raw = parse_scheme(read_json(path));
  if (g.flip) raw = flip_orientation(std::move(raw));
  return validate_scheme(raw);
}

// Accepts a JSON array of face ids or a comma-separated list.
rewrite::FaceString parse_order_text(const std::string& text, const PastingScheme& scheme) {
  json j = json::value_t::discarded;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
  }
  if (j.is_array()) return io::parse_face_string(j, scheme);
  rewrite::FaceString out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const size_t a = item.find_first_not_of(" \t");
    const size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw SchemeError("bad-usage", "empty face id in order '" + text + "'");
    out.push_back(scheme.face_index(item.substr(a, b - a + 1)));
  }
  if (out.empty()) throw SchemeError("bad-usage", "empty composition order");
  return out;
}

void emit(const json& j) { std::cout << io::dump(j); }

int run_validate(const std::string& path, const GlobalOptions& g, bool emit_doc, bool dot) {
  PastingScheme s = load_scheme(path, g);
  if (dot)
    std::cout << io::digraph_dot(s);
  else if (emit_doc)
    emit(io::canonical_document(s));
  else
    emit(io::validation_summary(s));
  return 0;
}

int run_faces(const std::string& path, const GlobalOptions& g) {
  emit(io::face_report(load_scheme(path, g)));
  return 0;
}

int run_relations(const std::string& path, const GlobalOptions& g) {
  emit(io::relation_report(load_scheme(path, g)));
  return 0;
}

int run_extensions(const std::string& path, const GlobalOptions& g) {
  PastingScheme s = load_scheme(path, g);
  rewrite::Engine engine(s, g.effective_limit());
  json orders = json::array();
  for (const rewrite::FaceString& o : engine.objects())
    orders.push_back(io::face_string_json(o, s));
  emit(json{{"count", orders.size()}, {"orders", orders}});
  return 0;
}

int run_normalize(const std::string& path, const GlobalOptions& g, const std::string& from,
                  const std::string& strategy, std::optional<std::uint64_t> seed) {
  if ((strategy == "random") != seed.has_value())
    throw SchemeError("bad-usage", "--seed must be given exactly when --strategy random is");
  PastingScheme s = load_scheme(path, g);
  rewrite::Engine engine(s, g.effective_limit());

  rewrite::FaceString start =
      from.empty() ? engine.objects().front() : parse_order_text(from, s);
  rewrite::Strategy strat = rewrite::Strategy::Leftmost;
  if (strategy == "rightmost") strat = rewrite::Strategy::Rightmost;
  if (strategy == "random") strat = rewrite::Strategy::Random;

  rewrite::NormalizeResult res = engine.normalize(start, strat, seed.value_or(0));
  json out{{"strategy", strategy},
           {"from", io::face_string_json(start, s)},
           {"swaps", res.word.steps.size()},
           {"normal_form", io::face_string_json(res.normal_form, s)},
           {"word", io::word_json(res.word, s)}};
  if (seed) out["seed"] = *seed;
  emit(out);
  return 0;
}

int run_compose(const std::string& path, const std::string& labelling_path,
                const GlobalOptions& g, const std::string& order_text, bool witness, bool lax) {
  PastingScheme s = load_scheme(path, g);
  auto [sig, lab] = io::parse_labelling(read_json(labelling_path));
  composer::LabellingReport report = composer::check_labelling(s, sig, lab);
  if (!report.ok()) {
    json violations = json::array();
    for (const auto& v : report.violations)
      violations.push_back(json{{"kind", v.kind}, {"where", v.where}, {"message", v.message}});
    throw SchemeError("labelling-invalid", "the labelling does not fit the diagram",
                      json{{"violations", violations}});
  }

  rewrite::Engine engine(s, g.effective_limit());
  rewrite::FaceString nf =
      engine.normalize(engine.objects().front(), rewrite::Strategy::Leftmost).normal_form;
  rewrite::FaceString order =
      (order_text.empty() || order_text == "normal") ? nf : parse_order_text(order_text, s);

  composer::CompositeTerm term = composer::compose(order, s, lab);
  json out = io::composite_json(term, s, lab);
  out["order"] = io::face_string_json(order, s);
  out["interchanger_interpretation"] = lax ? "lax" : "strict-collapsed";
  if (witness) {
    rewrite::Word w = engine.normalize(order, rewrite::Strategy::Leftmost).word;
    json ws = json::array();
    for (const rewrite::Step& st : w.steps) ws.push_back(io::interchanger_json(st, s, lab));
    out["witnesses"] = ws;
    out["normal_form"] = io::face_string_json(nf, s);
  }
  emit(out);
  return 0;
}

int run_coherence(const std::string& path, const GlobalOptions& g, const std::string& mode,
                  std::optional<std::uint64_t> seed, int pairs) {
  if ((mode == "sampled") != seed.has_value())
    throw SchemeError("bad-usage", "--seed must be given exactly when --mode sampled is");
  PastingScheme s = load_scheme(path, g);
  rewrite::Engine engine(s, g.effective_limit());
  rewrite::Engine::CertificateOptions opts;
  opts.mode = mode;
  opts.seed = seed;
  opts.sampled_pairs = pairs;
  rewrite::Certificate cert = engine.check_contractibility(opts);
  emit(io::certificate_json(cert, s));
  return cert.ok() ? 0 : 1;
}

int run_exchange_graph(const std::string& path, const GlobalOptions& g) {
  PastingScheme s = load_scheme(path, g);
  rewrite::Engine engine(s, g.effective_limit());
  std::cout << io::exchange_graph_dot(engine, s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"validator and composer for two-dimensional pasting diagrams"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --limit and --flip-orientation after the subcommand too

  GlobalOptions g;
  int limit_arg = -1;
  app.add_option("--limit", limit_arg, "interior face limit (overrides GRAYPASTE_LIMIT)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--flip-orientation", g.flip,
               "read rotation lists with the opposite handedness");

  std::string scheme_path, labelling_path, from_text, order_text;
  std::string strategy = "leftmost", mode = "exhaustive";
  std::optional<std::uint64_t> seed;
  std::uint64_t seed_arg = 0;
  int pairs = 1000;
  bool emit_doc = false, dot = false, witness = false, lax = false;

  CLI::App* validate = app.add_subcommand("validate", "check a scheme document");
  validate->add_option("scheme", scheme_path)->required();
  validate->add_flag("--emit", emit_doc, "print the canonical document");
  validate->add_flag("--dot", dot, "print the digraph in DOT form");

  CLI::App* faces = app.add_subcommand("faces", "list traced faces with their two sides");
  faces->add_option("scheme", scheme_path)->required();

  CLI::App* rel = app.add_subcommand("relations", "face relations and the comparability check");
  rel->add_option("scheme", scheme_path)->required();

  CLI::App* ext = app.add_subcommand("extensions", "all admissible composition orders");
  ext->add_option("scheme", scheme_path)->required();

  CLI::App* norm = app.add_subcommand("normalize", "rewrite an order to the normal form");
  norm->add_option("scheme", scheme_path)->required();
  norm->add_option("--from", from_text, "starting order (face ids, comma separated)");
  norm->add_option("--strategy", strategy, "leftmost | rightmost | random")
      ->check(CLI::IsMember({"leftmost", "rightmost", "random"}));
  CLI::Option* norm_seed = norm->add_option("--seed", seed_arg, "rng seed (random strategy only)");

  CLI::App* comp = app.add_subcommand("compose", "emit the composite of a labelled diagram");
  comp->add_option("scheme", scheme_path)->required();
  comp->add_option("labelling", labelling_path)->required();
  comp->add_option("--order", order_text, "face order, or 'normal' (default)");
  comp->add_flag("--witness", witness, "include interchange witnesses down to the normal form");
  comp->add_flag("--lax", lax, "annotate the output as a lax (uncollapsed) reading");

  CLI::App* coh = app.add_subcommand("coherence-check", "certify that all composites agree");
  coh->add_option("scheme", scheme_path)->required();
  coh->add_option("--mode", mode, "exhaustive | sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  CLI::Option* coh_seed = coh->add_option("--seed", seed_arg, "rng seed (sampled mode only)");
  coh->add_option("--pairs", pairs, "sampled word pairs")->check(CLI::PositiveNumber);

  CLI::App* xg = app.add_subcommand("exchange-graph", "DOT graph of orders and single swaps");
  xg->add_option("scheme", scheme_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (limit_arg >= 0) g.limit = limit_arg;
  if (norm_seed->count() > 0 || coh_seed->count() > 0) seed = seed_arg;

  try {
    if (validate->parsed()) return run_validate(scheme_path, g, emit_doc, dot);
    if (faces->parsed()) return run_faces(scheme_path, g);
    if (rel->parsed()) return run_relations(scheme_path, g);
    if (ext->parsed()) return run_extensions(scheme_path, g);
    if (norm->parsed()) return run_normalize(scheme_path, g, from_text, strategy, seed);
    if (comp->parsed()) return run_compose(scheme_path, labelling_path, g, order_text, witness, lax);
    if (coh->parsed()) return run_coherence(scheme_path, g, mode, seed, pairs);
    if (xg->parsed()) return run_exchange_graph(scheme_path, g);
  } catch (const SchemeError& e) {
    std::cerr << io::dump(e.to_json());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << io::dump(json{{"kind", "engine-bug"}, {"message", e.what()}});
    return 1;
  }
  return 2;
}
