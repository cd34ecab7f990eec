#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "timewalk/io.hpp"
#include "timewalk/synthetic.hpp"

using namespace timewalk;

TEST_CASE("edge TSV round trip with comments and blanks") {
  std::istringstream in(
      "# temporal edges\n"
      "1\t2\t10\n"
      "\n"
      "3\t4\t20\n");
  const auto edges = read_edges_tsv(in);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == TemporalEdge{1, 2, 10});
  CHECK(edges[1] == TemporalEdge{3, 4, 20});

  std::ostringstream out;
  write_edges_tsv(out, edges);
  CHECK(out.str() == "1\t2\t10\n3\t4\t20\n");
}

TEST_CASE("edge TSV parse failures carry the line number") {
  std::istringstream missing("1\t2\t3\n4\t5\n");
  CHECK_THROWS_WITH_AS(read_edges_tsv(missing),
                       "expected source<TAB>target<TAB>timestamp (line 2)", ParseError);

  std::istringstream garbage("1\t2\tbogus\n");
  CHECK_THROWS_AS(read_edges_tsv(garbage), ParseError);

  std::istringstream negative("1\t2\t-5\n");
  CHECK_THROWS_AS(read_edges_tsv(negative), ParseError);

  try {
    std::istringstream bad("# ok\n1\t2\t3\nx\ty\tz\n");
    read_edges_tsv(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("edge binary format round trips under its magic header") {
  const auto edges = make_uniform_graph(50, 500, 1000, 3);
  std::stringstream buffer;
  write_edges_binary(buffer, edges);
  const std::string blob = buffer.str();
  CHECK(blob.substr(0, 8) == "TMPW0001");

  const auto parsed = read_edges_binary(buffer);
  CHECK(parsed == edges);

  std::istringstream corrupt("XXXX0001payload");
  CHECK_THROWS(read_edges_binary(corrupt));
}

TEST_CASE("walk text writer formats hops and suppresses hopless walks") {
  WalkSet walks;
  walks.stride = 3;
  walks.walk_count = 2;
  walks.nodes = {1, 2, 3, 9, 0, 0};
  walks.times = {kTimeUnset, 5, 8, kTimeUnset, 0, 0};
  walks.lengths = {3, 1};  // second walk never left its start

  std::ostringstream out;
  write_walks_text(out, walks);
  CHECK(out.str() == "1@- 2@5 3@8\n");
}

TEST_CASE("walk text reader handles timed, sentinel, and untimed lines") {
  std::istringstream in(
      "1@- 2@5 3@8\n"
      "7 8 9\n");
  const auto records = read_walks_text(in);
  REQUIRE(records.size() == 2);

  CHECK(records[0].timed());
  CHECK(records[0].nodes == std::vector<NodeId>{1, 2, 3});
  CHECK(records[0].times[0] == kTimeUnset);
  CHECK(records[0].times[2] == 8);

  CHECK_FALSE(records[1].timed());
  CHECK(records[1].nodes == std::vector<NodeId>{7, 8, 9});

  std::istringstream mixed("1@2 3 4@5\n");
  CHECK_THROWS_AS(read_walks_text(mixed), ParseError);
}

TEST_CASE("walk binary format mirrors the fixed-stride walk set") {
  WalkSet walks;
  walks.stride = 4;
  walks.walk_count = 3;
  walks.nodes.assign(12, 0);
  walks.times.assign(12, 0);
  walks.lengths = {4, 1, 2};
  for (std::size_t i = 0; i < 12; ++i) {
    walks.nodes[i] = static_cast<NodeId>(i * 7);
    walks.times[i] = static_cast<Timestamp>(i * 11);
  }
  std::stringstream buffer;
  write_walks_binary(buffer, walks);
  CHECK(buffer.str().substr(0, 8) == "TMPW0002");
  const auto parsed = read_walks_binary(buffer);
  CHECK(parsed == walks);
}
