#include <doctest.h>

#include <sstream>

#include "lapgeo/csvio.hpp"
#include "lapgeo/generators.hpp"
#include "lapgeo/report.hpp"

using namespace lapgeo;

TEST_CASE("grid CSV round trip is bit exact") {
  for (const char* name : {"gamma_eps", "torus_E4", "cone"}) {
    CAPTURE(name);
    auto S = generate(name);
    std::stringstream ss;
    write_grid_csv(S, ss);
    auto T = read_grid_csv(ss);
    CHECK(T.grid.dim() == S.grid.dim());
    for (int a = 0; a < S.n(); ++a) {
      CHECK(T.grid.axes[a].samples == S.grid.axes[a].samples);
      CHECK(T.grid.axes[a].periodic == S.grid.axes[a].periodic);
      CHECK(T.grid.axes[a].start == S.grid.axes[a].start);
      CHECK(T.grid.axes[a].end == S.grid.axes[a].end);
    }
    CHECK(T.label == S.label);
    CHECK((T.points - S.points).cwiseAbs().maxCoeff() == 0.0);  // %.17g round-trips doubles
  }
}

TEST_CASE("malformed CSV inputs name the problem") {
  auto expect_error = [](const std::string& text, const char* needle) {
    std::stringstream ss(text);
    CHECK_THROWS_WITH_AS(read_grid_csv(ss), doctest::Contains(needle), Error);
  };
  expect_error("", "header");
  expect_error("# wrong header\n1,2,3\n", "header");
  expect_error("# lapgeo-grid v1 n=1 m=2 shape=16 periodic=0 domain=0:1 label=x\n0,1\n", "arity");
  expect_error("# lapgeo-grid v1 n=1 m=2 shape=16 periodic=0 domain=0:1 label=x\n", "fewer rows");
}

TEST_CASE("json writer: ordered keys, 17 significant digits") {
  Json j = Json::object();
  j.set("zeta", 1.0 / 3.0);
  j.set("alpha", 2);
  j.set("flag", true);
  Json arr = Json::array();
  arr.push(0.1);
  arr.push("text");
  j.set("list", std::move(arr));
  CHECK(j.dump() ==
        "{\"zeta\":0.33333333333333331,\"alpha\":2,\"flag\":true,"
        "\"list\":[0.10000000000000001,\"text\"]}");
  // insertion order survives overwrite
  j.set("zeta", 0.5);
  CHECK(j.dump().rfind("{\"zeta\":0.5", 0) == 0);
}
