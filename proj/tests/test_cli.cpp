#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// argv is appended verbatim; callers quote their own arguments.
RunResult run(const std::string& argv, const std::string& env = "") {
  const std::string out_file = "/tmp/graypaste_test_out.txt";
  const std::string err_file = "/tmp/graypaste_test_err.txt";
  std::string cmd = env + (env.empty() ? "" : " ") + GRAYPASTE_CLI_PATH + " " + argv + " >" +
                    out_file + " 2>" + err_file;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::string sample(const std::string& name) {
  return std::string(GRAYPASTE_SAMPLES_DIR) + "/" + name;
}

nlohmann::json out_json(const RunResult& r) { return nlohmann::json::parse(r.out); }
nlohmann::json err_json(const RunResult& r) { return nlohmann::json::parse(r.err); }

}  // namespace

TEST_CASE("validate prints a summary and exits cleanly") {
  RunResult r = run("validate " + sample("three_lens.json"));
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  CHECK(j["ok"] == true);
  CHECK(j["counts"]["interior_faces"] == 3);
  CHECK(j["top_path"] == nlohmann::json::array({"a", "d"}));
  CHECK(j["bottom_path"] == nlohmann::json::array({"c"}));
  CHECK(r.out.back() == '\n');
}

TEST_CASE("emitted canonical documents are a fixed point") {
  RunResult first = run("validate --emit " + sample("three_lens.json"));
  REQUIRE(first.exit_code == 0);
  std::ofstream("/tmp/graypaste_canon.json") << first.out;
  RunResult second = run("validate --emit /tmp/graypaste_canon.json");
  REQUIRE(second.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("validate --dot emits a digraph") {
  RunResult r = run("validate --dot " + sample("three_lens.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("digraph", 0) == 0);
  CHECK(r.out.find("\"s\" -> \"v\"") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2, semantic rejections with 1") {
  RunResult r = run("validate /tmp/definitely_missing.json");
  CHECK(r.exit_code == 2);
  CHECK(err_json(r)["kind"] == "io-error");

  std::ofstream("/tmp/graypaste_bad.json") << "{ not json";
  r = run("validate /tmp/graypaste_bad.json");
  CHECK(r.exit_code == 2);
  CHECK(err_json(r)["kind"] == "json-syntax");

  std::ofstream("/tmp/graypaste_shape.json") << "{\"vertices\": []}";
  r = run("validate /tmp/graypaste_shape.json");
  CHECK(r.exit_code == 2);
  CHECK(err_json(r)["kind"] == "malformed-document");

  r = run("validate " + sample("cyclic_triangle.json"));
  CHECK(r.exit_code == 1);
  CHECK(err_json(r)["kind"] == "directed-cycle");

  r = run("");
  CHECK(r.exit_code == 2);
  r = run("frobnicate x.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("faces reports the decomposition") {
  RunResult r = run("faces " + sample("five_cells.json"));
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  REQUIRE(j["faces"].size() == 5);
  CHECK(j["faces"][0]["id"] == "F1");
  CHECK(j["faces"][0]["sigma"]["edges"] == nlohmann::json::array({"a", "e"}));
  CHECK(j["euler"]["faces"] == 6);
}

TEST_CASE("relations reports both relations and comparability") {
  RunResult r = run("relations " + sample("three_lens.json"));
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  CHECK(j["triangle"] == nlohmann::json::parse(R"([["F1","F2"],["F3","F2"]])"));
  CHECK(j["precedence"] == nlohmann::json::parse(R"([["F1","F3"]])"));
  CHECK(j["comparability"]["ok"] == true);
}

TEST_CASE("extensions lists admissible orders") {
  RunResult r = run("extensions " + sample("five_cells.json"));
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  CHECK(j["count"] == 3);
  CHECK(j["orders"][0] == nlohmann::json::array({"F2", "F1", "F3", "F5", "F4"}));
}

TEST_CASE("the face limit comes from the flag or the environment") {
  RunResult r = run("extensions " + sample("three_lens.json"), "GRAYPASTE_LIMIT=2");
  CHECK(r.exit_code == 1);
  CHECK(err_json(r)["kind"] == "face-limit");

  r = run("extensions --limit 2 " + sample("three_lens.json"));
  CHECK(r.exit_code == 1);

  // explicit flag beats the environment
  r = run("extensions --limit 3 " + sample("three_lens.json"), "GRAYPASTE_LIMIT=2");
  CHECK(r.exit_code == 0);

  r = run("extensions " + sample("three_lens.json"), "GRAYPASTE_LIMIT=nonsense");
  CHECK(r.exit_code == 2);
  CHECK(err_json(r)["kind"] == "bad-usage");
}

TEST_CASE("normalize reduces to the normal form and reports the word") {
  RunResult r = run("normalize " + sample("five_cells.json") + " --from F2,F3,F5,F1,F4");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  CHECK(j["normal_form"] == nlohmann::json::array({"F2", "F1", "F3", "F5", "F4"}));
  CHECK(j["swaps"] == 2);
  CHECK(j["word"]["steps"].size() == 2);
  CHECK(j.count("seed") == 0);

  // defaults to the first admissible order
  r = run("normalize " + sample("three_lens.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(out_json(r)["swaps"] == 0);
}

TEST_CASE("normalize seed handling is strict") {
  RunResult r = run("normalize " + sample("three_lens.json") + " --strategy random");
  CHECK(r.exit_code == 2);
  CHECK(err_json(r)["kind"] == "bad-usage");

  r = run("normalize " + sample("three_lens.json") + " --seed 4");
  CHECK(r.exit_code == 2);

  r = run("normalize " + sample("three_lens.json") +
          " --from F3,F1,F2 --strategy random --seed 4");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  CHECK(j["seed"] == 4);
  CHECK(j["strategy"] == "random");
  CHECK(j["normal_form"] == nlohmann::json::array({"F1", "F3", "F2"}));

  r = run("normalize " + sample("three_lens.json") + " --strategy sideways");
  CHECK(r.exit_code == 2);
}

TEST_CASE("compose renders the pinned composites") {
  RunResult r = run("compose " + sample("five_cells.json") + " " +
                    sample("five_cells_labels.json"));
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  CHECK(j["term"] == "mδ·φd·γd·cfβ·cαa");
  CHECK(j["order"] == nlohmann::json::array({"F2", "F1", "F3", "F5", "F4"}));
  CHECK(j["interchanger_interpretation"] == "strict-collapsed");

  r = run("compose " + sample("five_cells.json") + " " + sample("five_cells_labels.json") +
          " --order F2,F3,F1,F5,F4 --witness");
  REQUIRE(r.exit_code == 0);
  j = out_json(r);
  CHECK(j["term"] == "mδ·φd·gβ·γea·cαa");
  REQUIRE(j["witnesses"].size() == 1);
  CHECK(j["witnesses"][0]["witness"] == "γ_{γea,cfβ}");
  CHECK(j["witnesses"][0]["square"]["corners"]["start"]["label"] == "cfea");
  CHECK(j["normal_form"] == nlohmann::json::array({"F2", "F1", "F3", "F5", "F4"}));

  r = run("compose " + sample("five_cells.json") + " " + sample("five_cells_labels.json") +
          " --lax");
  REQUIRE(r.exit_code == 0);
  CHECK(out_json(r)["interchanger_interpretation"] == "lax");
}

TEST_CASE("compose rejects a labelling that does not fit") {
  std::ofstream("/tmp/graypaste_badlab.json") << R"({
    "signature": {"cells0": ["x"], "cells1": {}, "cells2": {}},
    "labels": {"vertices": {}, "edges": {}, "faces": {}}
  })";
  RunResult r = run("compose " + sample("five_cells.json") + " /tmp/graypaste_badlab.json");
  CHECK(r.exit_code == 1);
  CHECK(err_json(r)["kind"] == "labelling-invalid");
}

TEST_CASE("coherence-check certifies the samples") {
  RunResult r = run("coherence-check " + sample("four_patch.json"));
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  CHECK(j["ok"] == true);
  CHECK(j["tessellation"]["mode"] == "exhaustive");
  CHECK(j["seed"].is_null());

  r = run("coherence-check " + sample("lens_chain.json"));
  REQUIRE(r.exit_code == 0);
  j = out_json(r);
  CHECK(j["relation_cases"]["hexagon"]["three_oriented"] == 1);
  CHECK(j["relation_cases"]["failed"] == 0);
}

TEST_CASE("coherence-check seed discipline mirrors normalize") {
  RunResult r = run("coherence-check " + sample("three_lens.json") + " --mode sampled");
  CHECK(r.exit_code == 2);
  CHECK(err_json(r)["kind"] == "bad-usage");

  r = run("coherence-check " + sample("three_lens.json") + " --seed 7");
  CHECK(r.exit_code == 2);

  r = run("coherence-check " + sample("three_lens.json") + " --mode sampled --seed 7 --pairs 40");
  REQUIRE(r.exit_code == 0);
  nlohmann::json j = out_json(r);
  CHECK(j["seed"] == 7);
  CHECK(j["tessellation"]["mode"] == "sampled");

  r = run("coherence-check " + sample("three_lens.json") + " --mode sideways --seed 1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("exchange-graph emits DOT with the normal form highlighted") {
  RunResult r = run("exchange-graph " + sample("lens_chain.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("graph orders", 0) == 0);
  CHECK(r.out.find("peripheries=2") != std::string::npos);
  CHECK(r.out.find("F1 F2 F3") != std::string::npos);
}

TEST_CASE("orientation flip is accepted before or after the subcommand") {
  RunResult r = run("--flip-orientation validate " + sample("three_lens.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(out_json(r)["top_path"] == nlohmann::json::array({"c"}));
  RunResult r2 = run("validate --flip-orientation " + sample("three_lens.json"));
  REQUIRE(r2.exit_code == 0);
  CHECK(r.out == r2.out);
}

TEST_CASE("stdout stays machine readable: sorted keys, trailing newline") {
  RunResult r = run("validate " + sample("four_patch.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"bottom_path\"") < r.out.find("\"counts\""));
  CHECK(r.out.find("\"counts\"") < r.out.find("\"ok\""));
  CHECK(r.out.back() == '\n');
  CHECK(r.err.empty());
}
