#ifndef GRAYPASTE_TESTS_FIXTURES_HPP
#define GRAYPASTE_TESTS_FIXTURES_HPP

#include <json.hpp>

#include "graypaste/composer.hpp"
#include "graypaste/scheme.hpp"

namespace fixtures {

// Three stacked 2-cells between two parallel routes: F1 and F3 are the upper
// and lower lens, F2 eats the result into the bottom edge.
nlohmann::json three_lens();

// Four patches with a unique admissible order.
nlohmann::json four_patch();

// Five cells over seven vertices; three admissible orders. Greek labels.
nlohmann::json five_cells();
nlohmann::json five_cells_labels();

// Two independent rails of lenses around a middle face; disjoint-swap forks.
nlohmann::json double_track();

// Three lenses in series; fully unconstrained order, hexagon forks.
nlohmann::json lens_chain();

// A single edge; the exterior walks it twice, no interior faces.
nlohmann::json single_bridge();

// Valid digraph whose rotation system closes up on a torus (fails the face
// count check).
nlohmann::json theta_torus();

nlohmann::json cyclic_triangle();

graypaste::PastingScheme load(const nlohmann::json& doc);

// Identity labelling: cells named after the vertices/edges/faces themselves.
std::pair<graypaste::composer::Signature, graypaste::composer::Labelling> free_labelling(
    const graypaste::PastingScheme& scheme);

}  // namespace fixtures

#endif
