#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "copcone/cli.hpp"
#include "copcone/io.hpp"

using namespace copcone;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.ends_with(".json") || a.ends_with(".txt")) a = std::string(FIXTURE_DIR) + "/" + a;
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::string& name) {
  std::ifstream f(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("fnv1a digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("canonical json") {
  const json j = {{"b", 1}, {"a", {0.1, 2.0, -0.0}}, {"c", std::nan("")}};
  CHECK(canonical_json(j) == "{\"a\":[0.10000000000000001,2,0],\"b\":1,\"c\":null}\n");
  CHECK(canonical_json(json::parse(canonical_json(j))) == canonical_json(j));
}

TEST_CASE("matrix file formats") {
  const auto h = parse_matrix_file(slurp("horn.json"));
  const auto t = parse_matrix_file(slurp("horn.txt"));
  REQUIRE(h.matrix.has_value());
  REQUIRE(t.matrix.has_value());
  CHECK(*h.matrix == *t.matrix);
  CHECK(h.n == 5);
  CHECK(h.digest == fnv1a_hex(slurp("horn.json")));

  const auto w = parse_matrix_file(slurp("w.json"));
  CHECK_FALSE(w.matrix.has_value());
  REQUIRE(w.factor.has_value());
  CHECK(w.factor->cols() == 6);

  CHECK_THROWS_AS(parse_matrix_file("{\"n\":2,\"data\":[[1,2],[3,1]]}"), DataError);
  CHECK_THROWS_AS(parse_matrix_file("{\"n\":2,\"data\":[1,2,2]}"), DataError);
  CHECK_THROWS_AS(parse_matrix_file("2 1 0 0"), DataError);
  CHECK_THROWS_AS(parse_matrix_file("{\"n\":1,\"factor\":[[-1]]}"), DataError);
  CHECK_THROWS_AS(parse_matrix_file("not a matrix"), DataError);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/file.json"), DataError);
}

TEST_CASE("check command") {
  const auto r = run({"check", "horn.json", "--cone", "copositive"});
  CHECK(r.code == 0);
  const json j = r.report();
  CHECK(j["verdict"]["answer"] == "IN");
  CHECK(j["verdict"]["cone"] == "COPOSITIVE");
  CHECK(j["command"][0] == "check");
  CHECK(j["tolerance"]["abs"] == 1e-9);
  CHECK_FALSE(j.contains("wall_time_s"));

  const auto p = run({"check", "horn.json", "--cone", "psd"});
  CHECK(p.code == 1);
  CHECK(p.report()["verdict"]["answer"] == "NOT_IN");
  CHECK(p.report()["verdict"]["certificate"]["type"] == "violation_vector");

  const auto n = run({"check", "horn.json", "--cone", "nonneg"});
  CHECK(n.code == 1);
  CHECK(n.report()["verdict"]["certificate"]["type"] == "negative_entry");

  CHECK(run({"check", "horn.txt", "--cone", "copositive"}).code == 0);
  CHECK(run({"check", "wwt.json", "--cone", "dnn"}).code == 0);
}

TEST_CASE("factorize command") {
  const auto d = run({"factorize", "dd_example.json", "--method", "dd"});
  CHECK(d.code == 0);
  CHECK(d.report()["factorization"]["columns"] == 3);
  CHECK(d.report()["factorization"]["certificate"]["type"] == "factor");

  const auto h = run({"factorize", "horn_orth.json", "--method", "horn6"});
  CHECK(h.code == 0);
  CHECK(h.report()["factorization"]["columns"].get<int>() <= 15);
  CHECK(h.report()["factorization"]["certificate"]["residual"].get<double>() <= 1e-9);

  const auto j = run({"factorize", "j2.json", "--method", "posdd"});
  CHECK(j.code == 1);
  CHECK(j.report()["error"]["code"] == "ORDER_TOO_SMALL");

  const auto f = run({"factorize", "horn.json", "--method", "heuristic", "--target", "3", "--restarts", "1"});
  CHECK(f.code == 2);
  const auto u = run({"factorize", "identity6.json", "--method", "heuristic", "--target", "5", "--restarts", "1"});
  CHECK(u.code == 2);
  CHECK(u.report()["factorization"]["answer"] == "FAILED");
}

TEST_CASE("bounds command") {
  const auto t = run({"bounds", "--n", "6"});
  CHECK(t.code == 0);
  CHECK(t.report()["table"]["best_interval"] == json::array({9, 15}));

  const auto m = run({"bounds", "m.json", "--witness", "hornplus0.json"});
  CHECK(m.code == 0);
  CHECK(m.report()["bounds"]["best_interval"] == json::array({6, 15}));

  const auto i = run({"bounds", "identity6.json", "--factor", "identity6_factor.json"});
  CHECK(i.report()["bounds"]["best_interval"] == json::array({6, 6}));

  CHECK(run({"bounds"}).code == 64);
  CHECK(run({"bounds", "horn.json"}).code == 1);
}

TEST_CASE("orbit and verify-orth commands") {
  const auto s = run({"orbit", "scaled_horn.json"});
  CHECK(s.code == 0);
  CHECK(s.report()["orbit"]["class"] == "HORN_ORBIT");
  CHECK(run({"orbit", "e12.json"}).report()["orbit"]["class"] == "E12_ORBIT");

  const auto v = run({"verify-orth", "horn_orth.json", "hornplus0.json"});
  CHECK(v.code == 0);
  CHECK(v.report()["verify_orth"]["orth_column"]["status"] == "PASS");
}

TEST_CASE("exit codes for usage and data errors") {
  CHECK(run({}).code == 64);
  CHECK(run({"check", "horn.json", "--cone", "bogus"}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"check", "missing.json"}).code == 65);
  CHECK(run({"check", "w.json", "--cone", "psd"}).code == 65);
}

TEST_CASE("reports are deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"check", "horn.json", "--cone", "copositive"},
           {"factorize", "horn_orth.json", "--method", "horn6"},
           {"factorize", "wwt.json", "--method", "heuristic", "--target", "15", "--restarts", "2"},
           {"bounds", "m.json", "--witness", "hornplus0.json"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("tolerance from environment and flag") {
  setenv("COPCONE_TOL", "1e-6", 1);
  const auto e = run({"check", "horn.json"});
  CHECK(e.report()["tolerance"]["abs"] == 1e-6);
  const auto f = run({"--tol", "1e-4", "check", "horn.json"});
  CHECK(f.report()["tolerance"]["rel"] == 1e-4);
  setenv("COPCONE_TOL", "garbage", 1);
  CHECK(run({"check", "horn.json"}).code == 64);
  unsetenv("COPCONE_TOL");

  const auto t = run({"--timing", "check", "horn.json"});
  CHECK(t.report().contains("wall_time_s"));
}
