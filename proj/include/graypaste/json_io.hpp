#ifndef GRAYPASTE_JSON_IO_HPP
#define GRAYPASTE_JSON_IO_HPP

#include <string>
#include <utility>

#include <json.hpp>

#include "graypaste/composer.hpp"
#include "graypaste/relations.hpp"
#include "graypaste/rewrite.hpp"
#include "graypaste/scheme.hpp"

namespace graypaste::io {

// Canonical document form: sorted ids, rotation lists rotated to start at the
// least (edge, end) entry, exterior boundary in face-walk order starting at
// the bottom path. Feeding the output back through validate_scheme reproduces
// it byte for byte.
nlohmann::json canonical_document(const PastingScheme& scheme);

nlohmann::json face_report(const PastingScheme& scheme);
nlohmann::json validation_summary(const PastingScheme& scheme);

std::pair<composer::Signature, composer::Labelling> parse_labelling(const nlohmann::json& doc);

nlohmann::json relation_report(const PastingScheme& scheme);
nlohmann::json walk_json(const Walk& w);

nlohmann::json face_string_json(const rewrite::FaceString& s, const PastingScheme& scheme);
rewrite::FaceString parse_face_string(const nlohmann::json& j, const PastingScheme& scheme);

nlohmann::json word_json(const rewrite::Word& w, const PastingScheme& scheme);
nlohmann::json certificate_json(const rewrite::Certificate& c, const PastingScheme& scheme);

nlohmann::json composite_json(const composer::CompositeTerm& t, const PastingScheme& scheme,
                              const composer::Labelling& lab);
nlohmann::json interchanger_json(const rewrite::Step& step, const PastingScheme& scheme,
                                 const composer::Labelling& lab);

std::string digraph_dot(const PastingScheme& scheme);
std::string exchange_graph_dot(const rewrite::Engine& engine, const PastingScheme& scheme);

// Sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace graypaste::io

#endif
