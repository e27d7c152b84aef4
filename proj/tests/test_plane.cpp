#include <doctest.h>

#include <random>
#include <sstream>

#include "tpl/error.hpp"
#include "tpl/plane.hpp"

using namespace tpl;

namespace {

ErrorCode code_of(auto&& fn, std::string* detail = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (detail) *detail = e.detail();
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

const char* kFano =
    "plane q=2 v=7\n"
    "line 0: 0 1 2\n"
    "line 1: 0 3 4\n"
    "line 2: 0 5 6\n"
    "line 3: 1 3 5\n"
    "line 4: 1 4 6\n"
    "line 5: 2 3 6\n"
    "line 6: 2 4 5\n";

}  // namespace

TEST_CASE("PG(2,q) cardinalities") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27}) {
    const PlanePtr plane = build_pg2(q);
    CHECK(plane->size() == q * q + q + 1);
    for (int l = 0; l < plane->size(); ++l) REQUIRE(static_cast<int>(plane->points_on(l).size()) == q + 1);
    CHECK(plane->provenance() == ProjectivePlane::Provenance::Constructed);
  }
  CHECK(code_of([] { (void)build_pg2(6); }) == ErrorCode::UnsupportedOrder);
  CHECK(code_of([] { (void)build_pg2(1); }) == ErrorCode::UnsupportedOrder);
  CHECK(code_of([] { (void)build_pg2(29); }) == ErrorCode::UnsupportedOrder);
}

TEST_CASE("points are normalized and lexicographically ordered") {
  const PlanePtr plane = build_pg2(3);
  for (int p = 0; p + 1 < plane->size(); ++p) CHECK(plane->point_coordinates(p) < plane->point_coordinates(p + 1));
  for (int p = 0; p < plane->size(); ++p) {
    const Triple& t = plane->point_coordinates(p);
    const auto first = t[0] != 0 ? t[0] : (t[1] != 0 ? t[1] : t[2]);
    CHECK(first == 1);
  }
}

TEST_CASE("join and meet are consistent with incidence") {
  const PlanePtr plane = build_pg2(4);
  for (int a = 0; a < plane->size(); ++a) {
    for (int b = 0; b < plane->size(); ++b) {
      if (a == b) continue;
      const int l = plane->join(a, b);
      REQUIRE(plane->incident(a, l));
      REQUIRE(plane->incident(b, l));
      const int p = plane->meet(a, b);
      REQUIRE(plane->incident(p, a));
      REQUIRE(plane->incident(p, b));
    }
  }
}

TEST_CASE("Fano plane ingestion and duplicated line rejection") {
  std::istringstream in(kFano);
  const PlanePtr fano = ingest_plane(in);
  CHECK(fano->order() == 2);
  CHECK(fano->provenance() == ProjectivePlane::Provenance::Ingested);

  std::string dup = kFano;
  dup.replace(dup.find("line 6: 2 4 5"), 13, "line 6: 2 3 6");
  std::istringstream bad(dup);
  std::string detail;
  CHECK(code_of([&] { (void)ingest_plane(bad); }, &detail) == ErrorCode::AxiomViolation);
  CHECK(detail.find("two lines meet in >1 point") != std::string::npos);
}

TEST_CASE("parse errors") {
  for (const char* text : {"plan q=2 v=7\n", "plane q=2 v=8\n", "plane q=2 v=7\nline 0: 0 2 1\n",
                           "plane q=2 v=7\nline 1: 0 1 2\n", "plane q=2 v=7\nline 0: 0 1 x\n"}) {
    std::istringstream in(text);
    CHECK(code_of([&] { (void)ingest_plane(in); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("dump and ingest round-trip byte-identically") {
  for (int q : {2, 3, 9}) {
    const PlanePtr plane = build_pg2(q);
    const std::string text = dump_plane(*plane);
    std::istringstream in(text);
    const PlanePtr again = ingest_plane(in);
    CHECK(dump_plane(*again) == text);
    for (int p = 0; p < plane->size(); ++p)
      for (int l = 0; l < plane->size(); ++l) REQUIRE(plane->incident(p, l) == again->incident(p, l));
  }
  const std::string pg3 = dump_plane(*build_pg2(3));
  CHECK(pg3.rfind("plane q=3 v=13\n", 0) == 0);
  CHECK(std::count(pg3.begin(), pg3.end(), '\n') == 14);
}

TEST_CASE("single-bit corruption is rejected") {
  for (int q : {2, 3, 4}) {
    const PlanePtr plane = build_pg2(q);
    const int v = plane->size();
    std::vector<std::vector<std::uint8_t>> inc(static_cast<std::size_t>(v), std::vector<std::uint8_t>(static_cast<std::size_t>(v)));
    for (int p = 0; p < v; ++p)
      for (int l = 0; l < v; ++l) inc[static_cast<std::size_t>(p)][static_cast<std::size_t>(l)] = plane->incident(p, l);
    CHECK_NOTHROW((void)ProjectivePlane::from_incidence(q, inc));
    std::mt19937 rng(static_cast<unsigned>(q));
    std::uniform_int_distribution<int> pick(0, v - 1);
    for (int trial = 0; trial < 50; ++trial) {
      auto corrupted = inc;
      auto& bit = corrupted[static_cast<std::size_t>(pick(rng))][static_cast<std::size_t>(pick(rng))];
      bit ^= 1;
      REQUIRE(code_of([&] { (void)ProjectivePlane::from_incidence(q, corrupted); }) == ErrorCode::AxiomViolation);
    }
  }
}

TEST_CASE("nonincidence graph sizes and degrees") {
  const std::vector<std::pair<int, int>> expected = {{2, 28}, {3, 117}, {4, 336}};
  for (auto [q, edges] : expected) {
    const PlanePtr plane = build_pg2(q);
    const ZeroGraph g = nonincidence_graph(*plane);
    CHECK(g.vertex_count() == 2 * plane->size());
    CHECK(g.edge_count() == edges);
    for (int x = 0; x < plane->size(); ++x) {
      CHECK(static_cast<int>(g.row_neighbors(x).size()) == q * q);
      CHECK(static_cast<int>(g.col_neighbors(x).size()) == q * q);
    }
  }
}

TEST_CASE("nonincidence graph has diameter 3") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) CHECK(graph_diameter(nonincidence_graph(*build_pg2(q))) == 3);
  const ZeroGraph split(2, 2, {{0, 0}, {1, 1}});
  CHECK(code_of([&] { (void)graph_diameter(split); }) == ErrorCode::Disconnected);
}
