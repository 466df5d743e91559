#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qshare/report_io.hpp"

using namespace qshare;

TEST_CASE("family specs parse to bit-identical states") {
  const json ghz_doc = {{"family", "ghz"}, {"params", {{"theta", 0.7853981634}}}};
  const PureState from_doc = state_from_json(ghz_doc);
  const PureState direct = PureState::ghz(0.7853981634);
  REQUIRE(from_doc.dim() == direct.dim());
  for (std::uint64_t i = 0; i < direct.dim(); ++i)
    CHECK(from_doc.amplitude(i) == direct.amplitude(i));

  const json w_doc = {{"family", "w"},
                      {"params", {{"alpha", 0.6}, {"beta", json::array({0.0, 0.8})},
                                  {"gamma", 0.0}}}};
  const PureState w_from_doc = state_from_json(w_doc);
  const PureState w_direct = PureState::w_state(0.6, cplx{0.0, 0.8}, 0.0);
  for (std::uint64_t i = 0; i < w_direct.dim(); ++i)
    CHECK(w_from_doc.amplitude(i) == w_direct.amplitude(i));

  const json haar_doc = {{"family", "haar"},
                         {"params", {{"n_parties", 3}, {"local_dim", 2}, {"seed", 11}}}};
  RngStream rng(11);
  const PureState haar_direct = PureState::haar_random(3, 2, rng);
  const PureState haar_from_doc = state_from_json(haar_doc);
  for (std::uint64_t i = 0; i < haar_direct.dim(); ++i)
    CHECK(haar_from_doc.amplitude(i) == haar_direct.amplitude(i));
}

TEST_CASE("amplitude documents round-trip") {
  const double r = 1.0 / std::sqrt(2.0);
  json doc;
  doc["n_parties"] = 2;
  doc["local_dim"] = 2;
  doc["amplitudes"] = json::array();
  doc["amplitudes"].push_back({r, 0.0});
  doc["amplitudes"].push_back({0.0, 0.0});
  doc["amplitudes"].push_back({0.0, 0.0});
  doc["amplitudes"].push_back({r, 0.0});

  const PureState bell = state_from_json(doc);
  const PureState direct = PureState::bell();
  for (std::uint64_t i = 0; i < 4; ++i) CHECK(bell.amplitude(i) == direct.amplitude(i));
}

TEST_CASE("state document errors name the offending field") {
  try {
    state_from_json({{"local_dim", 2}, {"amplitudes", json::array()}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("n_parties") != std::string::npos);
  } catch (const nlohmann::json::exception& e) {
    CHECK(std::string(e.what()).find("n_parties") != std::string::npos);
  }

  json bad_amp;
  bad_amp["n_parties"] = 1;
  bad_amp["local_dim"] = 2;
  bad_amp["amplitudes"] = json::array({1.0, 0.0}); // not [re, im] pairs
  REQUIRE_THROWS(state_from_json(bad_amp));

  REQUIRE_THROWS_AS(state_from_json({{"family", "nope"}}), Error);
}

TEST_CASE("normalize flag applies to amplitude documents") {
  json doc;
  doc["n_parties"] = 1;
  doc["local_dim"] = 2;
  doc["amplitudes"] = json::array({{2.0, 0.0}, {0.0, 0.0}});
  REQUIRE_THROWS_AS(state_from_json(doc, false), Error);
  const PureState s = state_from_json(doc, true);
  CHECK(std::abs(s.amplitude(0) - cplx{1.0}) < 1e-15);
}

TEST_CASE("load_state_file and atomic writes") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qshare_state_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "bell.state").string();

  write_file_atomic(path,
                    "{\"family\": \"bell\", \"params\": {}}\n");
  const PureState s = load_state_file(path);
  CHECK(s.n_parties() == 2);
  CHECK(std::abs(s.amplitude(0) - cplx{1.0 / std::sqrt(2.0)}) < 1e-15);
  CHECK(!fs::exists(path + ".tmp")); // temp file renamed away

  REQUIRE_THROWS_AS(load_state_file((dir / "missing.state").string()), Error);

  write_file_atomic(path, "not json");
  REQUIRE_THROWS_AS(load_state_file(path), Error);
}
