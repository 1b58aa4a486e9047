#include "doctest.h"

#include <bit>
#include <charconv>
#include <cstdint>
#include <limits>
#include <sstream>

#include "support/generators.hpp"
#include "ultrafit/error.hpp"
#include "ultrafit/io.hpp"

using namespace ultrafit;
using namespace ultrafit::testing;

TEST_SUITE_BEGIN("io");

TEST_CASE("doubles round-trip bit for bit") {
  Rng rng(81);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 20000; ++i) {
    const double x = std::bit_cast<double>(bits(rng));
    if (!std::isfinite(x)) continue;
    const std::string text = format_double(x);
    double y = 0;
    std::from_chars(text.data(), text.data() + text.size(), y);
    REQUIRE(std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y));
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("edge list round trip") {
  Rng rng(82);
  const Graph g = random_connected_graph(rng, 30, 0.2);
  const EdgeWeights w = uniform_weights(rng, g.edge_count(), -3, 3);
  std::stringstream ss;
  write_edge_list(ss, g, w);
  const WeightedGraph back = read_edge_list(ss);
  CHECK(back.graph.vertex_count() == g.vertex_count());
  CHECK(back.weights == w);
  for (EdgeId e = 0; e < g.edge_count(); ++e) CHECK(back.graph.edge(e) == g.edge(e));
}

TEST_CASE("edge list parse errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
  };
  CHECK_NOTHROW(parse("2 1\n0 1 0.5\n"));
  CHECK_NOTHROW(parse("# comment\n2 1\n\n0 1 0.5\n"));
  CHECK_THROWS_AS(parse(""), Error);
  CHECK_THROWS_AS(parse("2 1\n0 1\n"), Error);
  CHECK_THROWS_AS(parse("2 2\n0 1 0.5\n"), Error);
  CHECK_THROWS_AS(parse("2 1\n0 1 abc\n"), Error);
  CHECK_THROWS_AS(parse("2 1\n0 1 nan\n"), Error);
  CHECK_THROWS_AS(parse("3 1\n0 1 1\n"), Error);  // disconnected
  try {
    parse("2 1\n0 x 1\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("linkage round trip") {
  Rng rng(83);
  const Graph g = random_connected_graph(rng, 25, 0.3);
  const Dendrogram t = single_linkage(g, tie_heavy_weights(rng, g.edge_count()));
  std::stringstream ss;
  write_linkage(ss, t);
  const Dendrogram back = read_linkage(ss);
  REQUIRE(back.node_count() == t.node_count());
  for (NodeId n = t.leaf_count(); n < t.node_count(); ++n) {
    CHECK(back.children(n) == t.children(n));
    CHECK(back.altitude(n) == t.altitude(n));
    CHECK(back.size(n) == t.size(n));
  }
}

TEST_CASE("linkage parse errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_linkage(in);
  };
  CHECK_NOTHROW(parse("0 1 1 2\n2 3 2 3\n"));
  CHECK_THROWS_AS(parse("0 1 1 3\n2 3 2 3\n"), Error);  // wrong size column
  CHECK_THROWS_AS(parse("0 1 2 2\n2 3 1 3\n"), Error);  // decreasing altitude
  CHECK_THROWS_AS(parse("0 0 1 2\n"), Error);
}

TEST_CASE("trace csv") {
  std::ostringstream out;
  write_trace_csv(out, std::vector<double>{3, 1.5});
  CHECK(out.str() == "iteration,cost\n0,3\n1,1.5\n");
}

TEST_CASE("points csv") {
  std::istringstream in("x,y,label\n0,1,3\n2.5, 4 ,\n-1,0,?\n");
  const PointSet p = read_points_csv(in, true);
  CHECK(p.size() == 3);
  CHECK(p.dimension == 2);
  CHECK(p.coordinates == std::vector<double>{0, 1, 2.5, 4, -1, 0});
  CHECK(p.labels == std::vector<ClassLabel>{3, std::nullopt, std::nullopt});

  std::istringstream plain("a,b\n1,2\n3,4\n");
  const PointSet q = read_points_csv(plain, false);
  CHECK(q.size() == 2);
  CHECK(q.labels.size() == 2);

  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_points_csv(ragged, false), Error);
}

TEST_CASE("labels and triplets") {
  std::istringstream labels("vertex class\n0 0\n1 1\n\n4 1\n");
  CHECK(read_vertex_labels(labels) ==
        std::vector<ClassLabel>{0, 1, std::nullopt, std::nullopt, 1});
  std::istringstream twice("0 0\n0 1\n");
  CHECK_THROWS_AS(read_vertex_labels(twice), Error);
  std::ostringstream out;
  write_labels_csv(out, std::vector<std::size_t>{0, 1, 1});
  CHECK(out.str() == "vertex,label\n0,0\n1,1\n2,1\n");

  std::istringstream trip("0 1 2\n3 4 5\n");
  CHECK(read_triplets(trip) == TripletSet{{0, 1, 2}, {3, 4, 5}});
  std::istringstream bad("0 1\n");
  CHECK_THROWS_AS(read_triplets(bad), Error);
}

TEST_SUITE_END();
