#include "c3bound/graph.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "c3bound/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace c3bound;

namespace {

MultiGraph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  MultiGraph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

}  // namespace

TEST_CASE("sampling: shape, degrees, determinism") {
  const MultiGraph empty = sample_graph(5, 0, 42);
  CHECK(empty.n == 5);
  CHECK(empty.m() == 0);

  const MultiGraph g = sample_graph(50, 120, 7);
  CHECK(g.m() == 120);
  long long total = 0;
  for (int d : g.degrees()) total += d;
  CHECK(total == 240);  // every edge contributes two endpoints, loops included

  for (const auto& [u, v] : g.edges) {
    CHECK(u >= 0);
    CHECK(u < 50);
    CHECK(v >= 0);
    CHECK(v < 50);
  }

  const MultiGraph same = sample_graph(50, 120, 7);
  CHECK(g.edges == same.edges);
  const MultiGraph other = sample_graph(50, 120, 8);
  CHECK(g.edges != other.edges);

  // derived streams differ from each other and the base
  CHECK(derive_stream_seed(7, 0) != derive_stream_seed(7, 1));
  CHECK(derive_stream_seed(7, 0) != derive_stream_seed(8, 0));

  CHECK_THROWS_AS(sample_graph(0, 3, 1), ParameterError);
  CHECK_THROWS_AS(sample_graph(4, -1, 1), ParameterError);
}

TEST_CASE("degree profile: hand cases and concentration") {
  const MultiGraph iso = make_graph(3, {});
  const auto p0 = degree_profile(iso, 4);
  CHECK(p0.fractions[0] == 1.0);
  CHECK(p0.tail_fraction == 0.0);

  // one loop: degree 2 on a single vertex
  const MultiGraph loop = make_graph(1, {{0, 0}});
  const auto p1 = degree_profile(loop, 4);
  CHECK(p1.fractions[2] == 1.0);

  const MultiGraph tiny = make_graph(2, {{0, 1}, {0, 1}, {0, 0}});
  const auto p2 = degree_profile(tiny, 2);
  // degrees: 4 and 2 -> one above the cut, one at 2
  CHECK(p2.fractions[2] == 0.5);
  CHECK(p2.tail_fraction == 0.5);

  // a large sample concentrates near the reference weights
  const auto params = ModelParams::make(2.468155, 10);
  const auto prof = build_profile(params);
  const MultiGraph big = sample_graph(10000, 24682, 11);
  const auto emp = degree_profile(big, 10);
  for (int x = 0; x <= 10; ++x)
    CHECK(std::abs(emp.fractions[x] - prof.weights[x]) < 0.02);

  CHECK_THROWS_AS(degree_profile(iso, -1), ParameterError);
}

TEST_CASE("subspace membership") {
  const auto params = ModelParams::make(2.468155, 8, 0.05);

  // vacuous slack admits anything
  const auto vacuous = ModelParams::make(2.468155, 8, 1.5);
  CHECK(in_subspace(make_graph(3, {}), vacuous));
  CHECK(in_subspace(make_graph(2, {{0, 1}, {0, 1}, {1, 1}}), vacuous));

  // an empty graph is far from the reference weights at this density
  CHECK_FALSE(in_subspace(make_graph(50, {}), params));

  // typical samples pass at matched density
  int pass = 0;
  for (int s = 0; s < 20; ++s) {
    const MultiGraph g = sample_graph(2000, 4936, derive_stream_seed(99, s));
    if (in_subspace(g, params)) ++pass;
  }
  CHECK(pass >= 18);

  // profile truncation must match the parameters
  const auto prof60 = build_profile(ModelParams::make(2.468155, 60));
  CHECK_THROWS_AS(in_subspace(make_graph(3, {}), params, prof60),
                  ParameterError);
}

TEST_CASE("proper and rigid predicates on hand-built graphs") {
  const MultiGraph edge = make_graph(2, {{0, 1}});
  CHECK(is_proper(edge, Colouring{{0, 1}}));
  CHECK_FALSE(is_proper(edge, Colouring{{1, 1}}));
  // both endpoints need their missing types around them
  CHECK(is_rigid(edge, Colouring{{1, 2}}));
  CHECK(is_rigid(edge, Colouring{{2, 1}}));
  CHECK_FALSE(is_rigid(edge, Colouring{{0, 1}}));
  CHECK_FALSE(is_rigid(edge, Colouring{{0, 2}}));
  CHECK_FALSE(is_rigid(edge, Colouring{{2, 2}}));  // improper

  const MultiGraph loop = make_graph(1, {{0, 0}});
  CHECK_FALSE(is_proper(loop, Colouring{{0}}));
  CHECK(count_proper(loop) == 0);
  CHECK(count_rigid(loop) == 0);

  // an isolated vertex only supports type 2
  const MultiGraph lonely = make_graph(1, {});
  CHECK(count_proper(lonely) == 3);
  CHECK(count_rigid(lonely) == 1);
  CHECK(is_rigid(lonely, Colouring{{2}}));
  CHECK_FALSE(is_rigid(lonely, Colouring{{0}}));

  const MultiGraph triangle = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(count_proper(triangle) == 6);
  CHECK(count_rigid(triangle) == 6);  // every proper triangle colouring is rigid

  CHECK(count_proper(edge) == 6);
  CHECK(count_rigid(edge) == 2);

  // length mismatch
  CHECK_THROWS_AS(is_proper(edge, Colouring{{0}}), ParameterError);
  CHECK_THROWS_AS(is_rigid(edge, Colouring{{0, 1, 2}}), ParameterError);

  // capacity guard
  MultiGraph big;
  big.n = kEnumerationCap + 1;
  CHECK_THROWS_AS(count_proper(big), CapacityError);
  CHECK_THROWS_AS(count_rigid(big), CapacityError);
}

TEST_CASE("counts agree with naive enumeration on random graphs") {
  std::mt19937 gen(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 7);
    const int m = static_cast<int>(gen() % 9);
    const MultiGraph g = sample_graph(n, m, gen());
    const auto ref = oracle::naive_counts(g);
    CHECK(count_proper(g) == ref.proper);
    CHECK(count_rigid(g) == ref.rigid);
    CHECK(ref.rigid <= ref.proper);
  }
}

TEST_CASE("repair: pushes any proper colouring to a rigid one") {
  const MultiGraph edge = make_graph(2, {{0, 1}});
  const Colouring repaired = repair_to_rigid(edge, Colouring{{0, 1}});
  CHECK(is_rigid(edge, repaired));
  // the violating endpoint climbs to the highest conflict-free type
  CHECK(repaired.types[0] == 2);
  CHECK(repaired.types[1] == 1);

  // already rigid: untouched
  const Colouring fixed = repair_to_rigid(edge, Colouring{{1, 2}});
  CHECK(fixed.types == std::vector<std::uint8_t>{1, 2});

  CHECK_THROWS_AS(repair_to_rigid(edge, Colouring{{1, 1}}), ParameterError);
  CHECK_THROWS_AS(repair_to_rigid(edge, Colouring{{1}}), ParameterError);

  // every proper colouring of random graphs repairs to a rigid witness
  std::mt19937 gen(555);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 6);
    const int m = static_cast<int>(gen() % 8);
    const MultiGraph g = sample_graph(n, m, gen());
    const auto all = oracle::proper_colourings(g);
    if (all.empty()) continue;
    // probe a spread of proper colourings, not just the first
    for (std::size_t i = 0; i < all.size(); i += 1 + all.size() / 7) {
      Colouring col;
      for (int t : all[i]) col.types.push_back(static_cast<std::uint8_t>(t));
      const Colouring out = repair_to_rigid(g, col);
      CHECK(is_rigid(g, out));
      CHECK(oracle::naive_rigid(
          g, std::vector<int>(out.types.begin(), out.types.end())));
    }
    // existence transfer: some proper colouring implies some rigid one
    CHECK(count_rigid(g) >= 1);
  }
}

TEST_CASE("monte carlo: determinism, degenerate slack, tiny exact check") {
  const auto vacuous = ModelParams::make(1.25, 8, 1.5);

  const McResult a = mc_first_moment(4, 5, vacuous, 2000, 9);
  const McResult b = mc_first_moment(4, 5, vacuous, 2000, 9);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(a.subspace_fraction == 1.0);
  CHECK(a.samples == 2000);

  // an absurdly tight slack keeps every sample out
  const auto tight = ModelParams::make(1.25, 8, 1e-12);
  const McResult zero = mc_first_moment(4, 5, tight, 200, 9);
  CHECK(zero.estimate == 0.0);
  CHECK(zero.stderr_ == 0.0);
  CHECK(zero.subspace_fraction == 0.0);

  // one sample: no spread estimate
  const McResult one = mc_first_moment(4, 5, vacuous, 1, 9);
  CHECK(one.stderr_ == 0.0);

  // tiny instance where full enumeration is immediate: n = 2, m = 1,
  // 4 equally likely ordered pairs
  long long rigid_total = 0;
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v)
      rigid_total += count_rigid(make_graph(2, {{u, v}}));
  const double exact = rigid_total / 4.0;
  const McResult est = mc_first_moment(2, 1, vacuous, 40000, 31);
  CHECK(std::abs(est.estimate - exact) <= 3.0 * est.stderr_ + 1e-12);

  CHECK_THROWS_AS(mc_first_moment(4, 5, vacuous, 0, 9), ParameterError);
  CHECK_THROWS_AS(mc_first_moment(0, 5, vacuous, 10, 9), ParameterError);
  CHECK_THROWS_AS(mc_first_moment(25, 5, vacuous, 10, 9), CapacityError);
}

TEST_CASE("graph files: round trip and malformed inputs") {
  const MultiGraph g = make_graph(3, {{0, 1}, {1, 2}, {2, 2}});
  std::ostringstream out;
  write_graph(out, g);
  CHECK(out.str() == "3 3\n0 1\n1 2\n2 2\n");

  std::istringstream in(out.str());
  const MultiGraph back = read_graph(in);
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);

  const auto expect_parse_error = [](const std::string& text,
                                     const std::string& needle) {
    std::istringstream is(text);
    try {
      read_graph(is);
      FAIL_CHECK("expected a parse failure for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse_error("", "line 1");
  expect_parse_error("2\n", "line 1");
  expect_parse_error("x y\n", "line 1");
  expect_parse_error("2 2\n0 1\n", "line 3");          // missing edge
  expect_parse_error("2 1\n0 2\n", "line 2");          // endpoint range
  expect_parse_error("2 1\n0\n", "line 2");            // short edge line
  expect_parse_error("2 1\n0 1 9\n", "line 2");        // long edge line
  expect_parse_error("2 1\n0 1\njunk\n", "line 3");    // trailing garbage
  expect_parse_error("0 0\n", "line 1");               // no vertices
  expect_parse_error("2 -1\n", "line 1");              // negative count

  // trailing blank lines are tolerated
  std::istringstream blanks("2 1\n0 1\n\n  \n");
  CHECK_NOTHROW(read_graph(blanks));

  CHECK_THROWS_AS(read_graph_file("/nonexistent/path/graph.txt"), ParseError);
}
