#include "support/fixtures.hpp"

namespace fixtures {

namespace {

nlohmann::json parse(const char* text) { return nlohmann::json::parse(text); }

}  // namespace

nlohmann::json three_lens() {
  return parse(R"json({
    "vertices": ["s", "v", "t"],
    "edges": [
      {"id": "a", "src": "s", "tgt": "v"},
      {"id": "b", "src": "s", "tgt": "v"},
      {"id": "c", "src": "s", "tgt": "t"},
      {"id": "d", "src": "v", "tgt": "t"},
      {"id": "e", "src": "v", "tgt": "t"}
    ],
    "rotation": {
      "s": [{"edge": "c", "end": "out"}, {"edge": "b", "end": "out"}, {"edge": "a", "end": "out"}],
      "v": [{"edge": "e", "end": "out"}, {"edge": "d", "end": "out"},
            {"edge": "a", "end": "in"}, {"edge": "b", "end": "in"}],
      "t": [{"edge": "d", "end": "in"}, {"edge": "e", "end": "in"}, {"edge": "c", "end": "in"}]
    },
    "source": "s",
    "sink": "t",
    "exterior_boundary": ["c", "d", "a"]
  })json");
}

nlohmann::json four_patch() {
  return parse(R"json({
    "vertices": ["s", "v1", "v2", "v3", "v4", "v5", "t"],
    "edges": [
      {"id": "e01", "src": "s", "tgt": "v1"},
      {"id": "e02", "src": "v1", "tgt": "v2"},
      {"id": "e03", "src": "v3", "tgt": "v2"},
      {"id": "e04", "src": "v2", "tgt": "t"},
      {"id": "e05", "src": "s", "tgt": "v3"},
      {"id": "e06", "src": "v3", "tgt": "v5"},
      {"id": "e07", "src": "v3", "tgt": "t"},
      {"id": "e08", "src": "s", "tgt": "v4"},
      {"id": "e09", "src": "v4", "tgt": "v5"},
      {"id": "e10", "src": "v5", "tgt": "t"}
    ],
    "rotation": {
      "s": [{"edge": "e05", "end": "out"}, {"edge": "e01", "end": "out"}, {"edge": "e08", "end": "out"}],
      "v1": [{"edge": "e02", "end": "out"}, {"edge": "e01", "end": "in"}],
      "v2": [{"edge": "e02", "end": "in"}, {"edge": "e03", "end": "in"}, {"edge": "e04", "end": "out"}],
      "v3": [{"edge": "e07", "end": "out"}, {"edge": "e03", "end": "out"},
             {"edge": "e05", "end": "in"}, {"edge": "e06", "end": "out"}],
      "v4": [{"edge": "e09", "end": "out"}, {"edge": "e08", "end": "in"}],
      "v5": [{"edge": "e10", "end": "out"}, {"edge": "e06", "end": "in"}, {"edge": "e09", "end": "in"}],
      "t": [{"edge": "e04", "end": "in"}, {"edge": "e07", "end": "in"}, {"edge": "e10", "end": "in"}]
    },
    "source": "s",
    "sink": "t",
    "exterior_boundary": ["e08", "e09", "e10", "e04", "e02", "e01"]
  })json");
}

nlohmann::json five_cells() {
  return parse(R"json({
    "vertices": ["A", "B", "C", "D", "E", "F", "G"],
    "edges": [
      {"id": "a", "src": "C", "tgt": "A"},
      {"id": "b", "src": "A", "tgt": "B"},
      {"id": "c", "src": "B", "tgt": "E"},
      {"id": "d", "src": "C", "tgt": "D"},
      {"id": "e", "src": "A", "tgt": "D"},
      {"id": "f", "src": "D", "tgt": "B"},
      {"id": "g", "src": "D", "tgt": "E"},
      {"id": "h", "src": "C", "tgt": "F"},
      {"id": "i", "src": "F", "tgt": "G"},
      {"id": "l", "src": "D", "tgt": "G"},
      {"id": "m", "src": "G", "tgt": "E"}
    ],
    "rotation": {
      "C": [{"edge": "d", "end": "out"}, {"edge": "a", "end": "out"}, {"edge": "h", "end": "out"}],
      "A": [{"edge": "b", "end": "out"}, {"edge": "a", "end": "in"}, {"edge": "e", "end": "out"}],
      "B": [{"edge": "b", "end": "in"}, {"edge": "f", "end": "in"}, {"edge": "c", "end": "out"}],
      "D": [{"edge": "g", "end": "out"}, {"edge": "f", "end": "out"}, {"edge": "e", "end": "in"},
            {"edge": "d", "end": "in"}, {"edge": "l", "end": "out"}],
      "E": [{"edge": "c", "end": "in"}, {"edge": "g", "end": "in"}, {"edge": "m", "end": "in"}],
      "F": [{"edge": "i", "end": "out"}, {"edge": "h", "end": "in"}],
      "G": [{"edge": "m", "end": "out"}, {"edge": "l", "end": "in"}, {"edge": "i", "end": "in"}]
    },
    "source": "C",
    "sink": "E",
    "exterior_boundary": ["h", "i", "m", "c", "b", "a"]
  })json");
}

nlohmann::json five_cells_labels() {
  return parse(R"json({
    "signature": {
      "cells0": ["A", "B", "C", "D", "E", "F", "G"],
      "cells1": {
        "a": {"dom": "C", "cod": "A"},
        "b": {"dom": "A", "cod": "B"},
        "c": {"dom": "B", "cod": "E"},
        "d": {"dom": "C", "cod": "D"},
        "e": {"dom": "A", "cod": "D"},
        "f": {"dom": "D", "cod": "B"},
        "g": {"dom": "D", "cod": "E"},
        "h": {"dom": "C", "cod": "F"},
        "i": {"dom": "F", "cod": "G"},
        "l": {"dom": "D", "cod": "G"},
        "m": {"dom": "G", "cod": "E"}
      },
      "cells2": {
        "α": {"dom": ["b"], "cod": ["e", "f"]},
        "β": {"dom": ["a", "e"], "cod": ["d"]},
        "γ": {"dom": ["f", "c"], "cod": ["g"]},
        "δ": {"dom": ["d", "l"], "cod": ["h", "i"]},
        "φ": {"dom": ["g"], "cod": ["l", "m"]}
      }
    },
    "labels": {
      "vertices": {"A": "A", "B": "B", "C": "C", "D": "D", "E": "E", "F": "F", "G": "G"},
      "edges": {"a": "a", "b": "b", "c": "c", "d": "d", "e": "e", "f": "f",
                "g": "g", "h": "h", "i": "i", "l": "l", "m": "m"},
      "faces": {"F1": "β", "F2": "α", "F3": "γ", "F4": "δ", "F5": "φ"}
    }
  })json");
}

nlohmann::json double_track() {
  return parse(R"json({
    "vertices": ["s", "u", "v", "t"],
    "edges": [
      {"id": "a", "src": "s", "tgt": "u"},
      {"id": "b", "src": "s", "tgt": "u"},
      {"id": "c", "src": "u", "tgt": "t"},
      {"id": "d", "src": "u", "tgt": "t"},
      {"id": "e", "src": "s", "tgt": "v"},
      {"id": "f", "src": "s", "tgt": "v"},
      {"id": "g", "src": "v", "tgt": "t"},
      {"id": "h", "src": "v", "tgt": "t"}
    ],
    "rotation": {
      "s": [{"edge": "f", "end": "out"}, {"edge": "e", "end": "out"},
            {"edge": "b", "end": "out"}, {"edge": "a", "end": "out"}],
      "u": [{"edge": "d", "end": "out"}, {"edge": "c", "end": "out"},
            {"edge": "a", "end": "in"}, {"edge": "b", "end": "in"}],
      "v": [{"edge": "h", "end": "out"}, {"edge": "g", "end": "out"},
            {"edge": "e", "end": "in"}, {"edge": "f", "end": "in"}],
      "t": [{"edge": "c", "end": "in"}, {"edge": "d", "end": "in"},
            {"edge": "g", "end": "in"}, {"edge": "h", "end": "in"}]
    },
    "source": "s",
    "sink": "t",
    "exterior_boundary": ["f", "h", "c", "a"]
  })json");
}

nlohmann::json lens_chain() {
  return parse(R"json({
    "vertices": ["s", "x", "y", "t"],
    "edges": [
      {"id": "a", "src": "s", "tgt": "x"},
      {"id": "b", "src": "s", "tgt": "x"},
      {"id": "c", "src": "x", "tgt": "y"},
      {"id": "d", "src": "x", "tgt": "y"},
      {"id": "e", "src": "y", "tgt": "t"},
      {"id": "f", "src": "y", "tgt": "t"}
    ],
    "rotation": {
      "s": [{"edge": "b", "end": "out"}, {"edge": "a", "end": "out"}],
      "x": [{"edge": "d", "end": "out"}, {"edge": "c", "end": "out"},
            {"edge": "a", "end": "in"}, {"edge": "b", "end": "in"}],
      "y": [{"edge": "f", "end": "out"}, {"edge": "e", "end": "out"},
            {"edge": "c", "end": "in"}, {"edge": "d", "end": "in"}],
      "t": [{"edge": "e", "end": "in"}, {"edge": "f", "end": "in"}]
    },
    "source": "s",
    "sink": "t",
    "exterior_boundary": ["b", "d", "f", "e", "c", "a"]
  })json");
}

nlohmann::json single_bridge() {
  return parse(R"json({
    "vertices": ["s", "t"],
    "edges": [{"id": "e", "src": "s", "tgt": "t"}],
    "rotation": {
      "s": [{"edge": "e", "end": "out"}],
      "t": [{"edge": "e", "end": "in"}]
    },
    "source": "s",
    "sink": "t",
    "exterior_boundary": ["e", "e"]
  })json");
}

nlohmann::json theta_torus() {
  nlohmann::json doc = three_lens();
  doc["rotation"]["t"] = nlohmann::json::parse(R"json([
    {"edge": "c", "end": "in"}, {"edge": "e", "end": "in"}, {"edge": "d", "end": "in"}
  ])json");
  return doc;
}

nlohmann::json cyclic_triangle() {
  return parse(R"json({
    "vertices": ["s", "u", "v", "t"],
    "edges": [
      {"id": "a", "src": "s", "tgt": "u"},
      {"id": "b", "src": "u", "tgt": "v"},
      {"id": "c", "src": "v", "tgt": "u"},
      {"id": "d", "src": "u", "tgt": "v"},
      {"id": "e", "src": "v", "tgt": "t"}
    ],
    "rotation": {
      "s": [{"edge": "a", "end": "out"}],
      "u": [{"edge": "b", "end": "out"}, {"edge": "d", "end": "out"},
            {"edge": "a", "end": "in"}, {"edge": "c", "end": "in"}],
      "v": [{"edge": "e", "end": "out"}, {"edge": "c", "end": "out"},
            {"edge": "b", "end": "in"}, {"edge": "d", "end": "in"}],
      "t": [{"edge": "e", "end": "in"}]
    },
    "source": "s",
    "sink": "t",
    "exterior_boundary": ["a", "d", "e"]
  })json");
}

graypaste::PastingScheme load(const nlohmann::json& doc) {
  return graypaste::validate_scheme(graypaste::parse_scheme(doc));
}

std::pair<graypaste::composer::Signature, graypaste::composer::Labelling> free_labelling(
    const graypaste::PastingScheme& scheme) {
  graypaste::composer::Signature sig;
  graypaste::composer::Labelling lab;
  for (const auto& v : scheme.vertices()) {
    sig.cells0.push_back(v);
    lab.vertex_labels[v] = v;
  }
  for (const auto& e : scheme.edges()) {
    sig.cells1[e.id] = {e.src, e.tgt};
    lab.edge_labels[e.id] = e.id;
  }
  auto name_path = [&](const graypaste::Walk& w) {
    std::vector<std::string> out;
    for (const auto& e : w.edges) out.push_back(e);
    return out;
  };
  for (const auto& f : scheme.interior_faces()) {
    sig.cells2[f.id] = {name_path(f.sigma), name_path(f.tau)};
    lab.face_labels[f.id] = f.id;
  }
  return {std::move(sig), std::move(lab)};
}

}  // namespace fixtures
