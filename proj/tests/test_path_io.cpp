#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <string>

#include "beadsim/path_io.hpp"
#include "beadsim/rng.hpp"
#include "beadsim/samplers.hpp"

using namespace beadsim;

TEST_CASE("path files round-trip bit for bit") {
  auto p = sample_excursion(777, 2.5e-4, SeedSequence{90210});
  std::stringstream buf;
  write_path(buf, p);
  Path q = read_path(buf);
  CHECK(q.points() == p.points());
  CHECK(q.dt() == p.dt());
  CHECK(q.n() == p.n());
  CHECK(q.meta().seed == p.meta().seed);
}

TEST_CASE("a zero-step path round-trips") {
  Path p({{0.0, 0.0}}, 1e-3, {});
  std::stringstream buf;
  write_path(buf, p);
  Path q = read_path(buf);
  CHECK(q.n() == 0);
  CHECK(q.dt() == 1e-3);
}

TEST_CASE("the header starts with the magic bytes") {
  Path p({{0.0, 0.0}, {0.0, 1.0}}, 1.0, {});
  std::stringstream buf;
  write_path(buf, p);
  std::string s = buf.str();
  REQUIRE(s.size() >= 8);
  CHECK(s.substr(0, 8) == "BBPATH01");
  // magic + n + dt + seed + 2 points of 2 doubles
  CHECK(s.size() == 8 + 8 + 8 + 8 + 2 * 16);
}

TEST_CASE("reading rejects a wrong magic header") {
  std::stringstream buf;
  buf << "NOTAPATH" << std::string(64, '\0');
  CHECK_THROWS_AS(read_path(buf), std::runtime_error);
}

TEST_CASE("reading rejects a truncated stream") {
  Path p({{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, 0.5, {});
  std::stringstream buf;
  write_path(buf, p);
  std::string s = buf.str();
  std::stringstream cut(s.substr(0, s.size() - 9));
  CHECK_THROWS_AS(read_path(cut), std::runtime_error);
}

TEST_CASE("file round-trip and digest stability") {
  auto p = sample_excursion(321, 1e-3, SeedSequence{1848});
  std::string fn = "roundtrip_test_path.bin";
  write_path_file(fn, p);
  Path q = read_path_file(fn);
  CHECK(q.points() == p.points());

  std::uint64_t d1 = fnv1a64_file(fn);
  write_path_file(fn, p);
  std::uint64_t d2 = fnv1a64_file(fn);
  CHECK(d1 == d2);
  std::remove(fn.c_str());
}

TEST_CASE("fnv1a64 matches the published test vector") {
  // FNV-1a 64-bit of empty input is the offset basis; of "a" is a known value.
  CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
}
