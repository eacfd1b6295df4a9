#ifndef GRAYPASTE_TESTS_GENERATOR_HPP
#define GRAYPASTE_TESTS_GENERATOR_HPP

#include <random>

#include "graypaste/scheme.hpp"

namespace testgen {

struct RandomSchemeOptions {
  int faces = 4;     // number of replacement rounds, one interior face each
  int max_path = 3;  // longest segment drawn in one round
};

// Grows a scheme downwards from a random top path. Each round replaces a
// contiguous stretch of the current bottom path with a fresh path drawn below
// it, and the stretch becomes the domain of a new face. Rotation lists keep
// out-edges bottom-to-top followed by in-edges top-to-bottom, so the result
// always validates.
graypaste::RawScheme random_scheme(std::mt19937_64& rng, const RandomSchemeOptions& opt);

}  // namespace testgen

#endif
