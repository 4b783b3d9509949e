#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line surface. The binary path comes from
// the build system via LAPGEO_CLI_PATH.

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LAPGEO_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WEXITSTATUS(status);
  return r;
}

std::string tmp_path(const char* stem) {
  return std::string(LAPGEO_TEST_TMPDIR) + "/" + stem;
}

std::string drop_workers_line(const std::string& text) {
  std::stringstream in(text), out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"workers\"") == std::string::npos) out << line << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("generate writes a valid grid CSV") {
  auto csv = tmp_path("circle.csv");
  auto r = run("generate circle --param r=1 --grid 256 --out " + csv);
  CHECK(r.code == 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header.rfind("# lapgeo-grid v1 n=1 m=2 shape=256 periodic=1", 0) == 0);
  int rows = 0;
  std::string line;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 256);
}

TEST_CASE("generate honors the default singular-locus offset") {
  auto csv = tmp_path("cone.csv");
  REQUIRE(run("generate cone --param c=0.8 --grid 48,128 --out " + csv).code == 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header.find("domain=0.25") != std::string::npos);
}

TEST_CASE("analyze and check on the sphere") {
  auto csv = tmp_path("sphere.csv");
  REQUIRE(run("generate sphere --out " + csv).code == 0);
  auto a = run("analyze " + csv);
  CHECK(a.code == 0);
  CHECK(a.out.find("\"verdict\": \"homothetic\"") != std::string::npos);
  CHECK(run("check homothetic " + csv).code == 0);
  CHECK(run("check conformal " + csv).code == 0);  // homothetic implies conformal
  CHECK(run("check spherical-harmonic " + csv).code == 0);
}

TEST_CASE("check exit codes: 1 on failure, 2 on bad input") {
  auto csv = tmp_path("torus_rev.csv");
  REQUIRE(run("generate torus_revolution --out " + csv).code == 0);
  CHECK(run("check homothetic " + csv).code == 1);
  CHECK(run("check harmonic-mc " + csv).code == 1);

  auto empty = tmp_path("empty.csv");
  std::ofstream(empty).close();
  auto r = run("analyze " + empty);
  CHECK(r.code == 2);
  CHECK(run("check homothetic " + tmp_path("missing.csv")).code == 2);
}

TEST_CASE("harmonic-mc holds on the clothoid cylinder") {
  auto csv = tmp_path("cornu_cylinder.csv");
  REQUIRE(run("generate cornu_cylinder --out " + csv).code == 0);
  CHECK(run("check harmonic-mc " + csv).code == 0);
}

TEST_CASE("helicoid analyzes as Laplace-degenerate") {
  auto csv = tmp_path("helicoid.csv");
  REQUIRE(run("generate helicoid --out " + csv).code == 0);
  auto a = run("analyze " + csv + " --report laplace");
  CHECK(a.out.find("\"degenerate\": true") != std::string::npos);
}

TEST_CASE("spectrum reports and conjugates") {
  auto csv = tmp_path("gamma.csv");
  REQUIRE(run("generate gamma_eps --param eps=6 --grid 1024 --out " + csv).code == 0);
  auto s = run("spectrum " + csv + " --minpoly 8");
  CHECK(s.code == 0);
  CHECK(s.out.find("\"k_type\": 2") != std::string::npos);
  CHECK(s.out.find("\"order\": [\n  1,\n  3\n ]") != std::string::npos);

  auto tc = tmp_path("two_circles.csv");
  auto conj = tmp_path("conj.csv");
  REQUIRE(run("generate two_circles --out " + tc).code == 0);
  auto c = run("spectrum " + tc + " --conjugate " + conj);
  CHECK(c.code == 0);
  CHECK(c.out.find("\"unit_speed\": true") != std::string::npos);

  auto el = tmp_path("ellipse.csv");
  REQUIRE(run("generate ellipse --grid 128 --out " + el).code == 0);
  auto e = run("spectrum " + el);
  CHECK(e.code == 0);
  CHECK(e.out.find("\"reparametrized\": true") != std::string::npos);
  CHECK(e.out.find("\"k_type\": \"infinite\"") != std::string::npos);
}

TEST_CASE("fit-image on a Laplace image") {
  auto csv = tmp_path("cone_fit.csv");
  REQUIRE(run("generate cone --out " + csv).code == 0);
  auto r = run("fit-image " + csv + " --laplace");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"best\": \"cone\"") != std::string::npos);
}

TEST_CASE("catalogue lists entries") {
  auto r = run("catalogue");
  CHECK(r.code == 0);
  for (const char* n : {"sphere", "gamma_eps", "unduloid", "conformal_lt_surface"})
    CHECK(r.out.find(std::string("\"name\": \"") + n + "\"") != std::string::npos);
}

TEST_CASE("reports are byte-identical across worker counts") {
  auto csv = tmp_path("det.csv");
  REQUIRE(run("generate clifford_torus --out " + csv).code == 0);
  auto r1 = run("analyze " + csv + " --workers 1");
  auto r4 = run("analyze " + csv + " --workers 4");
  CHECK(r1.code == 0);
  CHECK(r4.code == 0);
  // identical except the echoed worker count itself
  CHECK(drop_workers_line(r1.out) == drop_workers_line(r4.out));
  auto r1b = run("analyze " + csv + " --workers 1");
  CHECK(r1.out == r1b.out);
}
