#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "endscope/action.hpp"
#include "oracles.hpp"

using namespace endscope;

TEST_CASE("act on sets") {
  Window w = materialize_window(GraphSpec::line(), "0", 10);
  auto a = VertexSet::of_keys(w, std::vector<VertexKey>{"0", "1"});
  CHECK(act_on_set(make_word(w.spec(), "2"), a).keys() ==
        std::vector<VertexKey>{"2", "3"});
  CHECK(act_on_set(make_word(w.spec(), "0"), a) == a);

  Window f2 = materialize_window(GraphSpec::free_group(2), "e", 5);
  auto s = VertexSet::of_keys(f2, std::vector<VertexKey>{"e", "b"});
  CHECK(act_on_set(make_word(f2.spec(), "a"), s).keys() ==
        std::vector<VertexKey>{"a", "ab"});

  auto frontier_set = VertexSet::of_keys(w, std::vector<VertexKey>{"10"});
  CHECK_THROWS_AS((void)act_on_set(make_word(w.spec(), "3"), frontier_set), Error);
}

TEST_CASE("act preserves the edge relation") {
  const std::vector<std::pair<GraphSpec, std::string>> cases{
      {GraphSpec::free_group(2), "ab"},
      {GraphSpec::free_product(2, 3), "st"},
      {GraphSpec::grid2d(), "(1,1)"},
  };
  for (const auto& [spec, word] : cases) {
    Window w = materialize_window(spec, spec.default_basepoint(), 6);
    GroupWord g = make_word(spec, word);
    for (const auto& e : w.edges()) {
      // only check edges whose translate provably stays inside
      if (w.distance(e.a) + g.length > w.radius()) continue;
      if (w.distance(e.b) + g.length > w.radius()) continue;
      auto ia = w.find(spec.multiply(g.normal, w.key(e.a)));
      auto ib = w.find(spec.multiply(g.normal, w.key(e.b)));
      REQUIRE(ia.has_value());
      REQUIRE(ib.has_value());
      CHECK(w.edge_between(*ia, *ib).has_value());
    }
  }
}

TEST_CASE("act on ends: line translations fix both ends") {
  Window w = materialize_window(GraphSpec::line(), "0", 12);
  EndSystem sys(w, 7);
  auto plus = sys.thread_of_vertex(*w.find("12"));
  REQUIRE(plus.has_value());
  GroupWord g = make_word(w.spec(), "5");
  EndThread image = act_on_end(sys, g, *plus, 2);
  EndThread expect = sys.restrict_thread(*plus, 2);
  CHECK(image == expect);
}

TEST_CASE("act on ends: free group branch tracking") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 6);
  EndSystem sys(w, 3);
  auto b_thread = sys.thread_of_vertex(*w.find("bbbbbb"));
  auto a_thread = sys.thread_of_vertex(*w.find("aaaaaa"));
  REQUIRE(b_thread.has_value());
  REQUIRE(a_thread.has_value());

  // a . b^inf passes through branch a
  CHECK(act_on_end(sys, make_word(w.spec(), "a"), *b_thread, 0).id() == "a");
  // a^-1 . a^inf stays in branch a
  CHECK(act_on_end(sys, make_word(w.spec(), "A"), *a_thread, 0).id() == "a");
  // a^-1 . b^inf moves to branch a^-1
  CHECK(act_on_end(sys, make_word(w.spec(), "A"), *b_thread, 0).id() == "A");

  CHECK_THROWS_AS((void)act_on_end(sys, make_word(w.spec(), "aaaa"), *b_thread, 0), Error);
}

TEST_CASE("act on ends commutes with restriction") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 7);
  EndSystem sys(w, 4);
  GroupWord g = make_word(w.spec(), "ab");
  for (const auto& t : sys.threads()) {
    EndThread deep = act_on_end(sys, g, t, 2);
    EndThread shallow = act_on_end(sys, g, t, 1);
    CHECK(sys.restrict_thread(deep, 1) == shallow);
  }
}

TEST_CASE("act on ends composes") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 7);
  EndSystem sys(w, 4);
  for (const auto& gw : {"a", "b", "A"}) {
    for (const auto& hw : {"a", "B"}) {
      GroupWord g = make_word(w.spec(), gw);
      GroupWord h = make_word(w.spec(), hw);
      GroupWord gh = make_word(w.spec(), w.spec().multiply(g.normal, h.normal));
      for (const auto& t : sys.threads()) {
        EndThread inner = act_on_end(sys, h, t, 2 + g.length);
        EndThread composed = act_on_end(sys, g, inner, 2);
        EndThread direct = act_on_end(sys, gh, t, 2);
        CHECK(composed == direct);
      }
    }
  }
}

TEST_CASE("probe: free group with powers of a") {
  std::vector<std::string> seq{"a", "aa", "aaa"};
  ProbeReport rep = dynamics_probe(GraphSpec::free_group(2), seq, 0, 8, "e");
  CHECK(rep.lambda == "a");
  CHECK(rep.mu == "A");
  CHECK(rep.classes == std::vector<std::string>{"B", "a", "b"});
  CHECK(rep.verified);
  CHECK(rep.verified_from <= 2);
  for (const auto& row : rep.collapse_table)
    for (bool entry : row) CHECK(entry);
}

TEST_CASE("probe: free group with powers of ab") {
  std::vector<std::string> seq{"ab", "abab", "ababab"};
  ProbeReport rep = dynamics_probe(GraphSpec::free_group(2), seq, 0, 9, "e");
  CHECK(rep.lambda == "a");
  CHECK(rep.mu == "B");  // inverse normal forms are BABA...
  CHECK(rep.verified);
}

TEST_CASE("probe: the line") {
  std::vector<std::string> seq{"1", "2", "3", "4", "5", "6"};
  ProbeReport rep = dynamics_probe(GraphSpec::line(), seq, 1, 10, "0");
  CHECK(rep.verified);
  REQUIRE(rep.classes.size() == 1);
  CHECK(rep.classes[0] == rep.lambda);
  CHECK(rep.lambda != rep.mu);
}

TEST_CASE("probe: attracting of the sequence = repelling of the inverses") {
  auto spec = GraphSpec::free_group(2);
  std::vector<std::string> seq{"ab", "abab", "ababab"};
  std::vector<std::string> inv;
  for (const auto& s : seq) inv.push_back(spec.inverse(spec.canonical(s)));
  ProbeReport fwd = dynamics_probe(spec, seq, 0, 9, "e");
  ProbeReport bwd = dynamics_probe(spec, inv, 0, 9, "e");
  CHECK(fwd.lambda == bwd.mu);
  CHECK(fwd.mu == bwd.lambda);
}

TEST_CASE("probe rejects lazy sequences") {
  CHECK_THROWS_AS(
      (void)dynamics_probe(GraphSpec::line(), std::vector<std::string>{"2", "1"}, 0, 8, "0"),
      Error);
  CHECK_THROWS_AS((void)dynamics_probe(GraphSpec::line(),
                                       std::vector<std::string>{"1", "-1"}, 0, 8, "0"),
                  Error);
}

TEST_CASE("collapse components: basic quotients") {
  FiniteGraph g = FiniteGraph::from_edges(
      std::vector<std::pair<VertexKey, VertexKey>>{{"1", "2"}, {"4", "5"}},
      std::vector<VertexKey>{"3"});
  Permutation identity{{"1", "1"}, {"2", "2"}, {"3", "3"}, {"4", "4"}, {"5", "5"}};
  auto trivial = collapse_components(g, std::vector<Permutation>{identity});
  CHECK(trivial.class_ids == std::vector<std::string>{"1", "3", "4"});
  for (const auto& [from, to] : trivial.induced[0]) CHECK(from == to);

  Permutation swap{{"1", "5"}, {"5", "1"}, {"2", "4"}, {"4", "2"}, {"3", "3"}};
  auto swapped = collapse_components(g, std::vector<Permutation>{swap});
  CHECK(swapped.induced[0].at("1") == "4");
  CHECK(swapped.induced[0].at("4") == "1");
  CHECK(swapped.induced[0].at("3") == "3");

  FiniteGraph path = FiniteGraph::from_edges(
      std::vector<std::pair<VertexKey, VertexKey>>{{"x", "y"}, {"y", "z"}});
  Permutation rev{{"x", "z"}, {"z", "x"}, {"y", "y"}};
  auto one = collapse_components(path, std::vector<Permutation>{rev});
  CHECK(one.class_ids.size() == 1);
  CHECK(one.induced[0].at("x") == "x");
}

TEST_CASE("collapse rejects non-automorphisms") {
  FiniteGraph g = FiniteGraph::from_edges(
      std::vector<std::pair<VertexKey, VertexKey>>{{"1", "2"}, {"2", "3"}});
  Permutation breaks{{"1", "2"}, {"2", "1"}, {"3", "3"}};  // edge {1,3}? no: {2,3}->{1,3}
  CHECK_THROWS_AS((void)collapse_components(g, std::vector<Permutation>{breaks}), Error);
  Permutation not_bijective{{"1", "1"}, {"2", "1"}, {"3", "3"}};
  CHECK_THROWS_AS((void)collapse_components(g, std::vector<Permutation>{not_bijective}),
                  Error);
}

TEST_CASE("collapse equivariance: projection commutes with the action") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    // two isomorphic copies of a random small graph, swapped by construction
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<std::pair<VertexKey, VertexKey>> edges;
    std::vector<VertexKey> verts;
    for (int i = 0; i < n; ++i) {
      verts.push_back("L" + std::to_string(i));
      verts.push_back("R" + std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) {
          edges.emplace_back("L" + std::to_string(i), "L" + std::to_string(j));
          edges.emplace_back("R" + std::to_string(i), "R" + std::to_string(j));
        }
    FiniteGraph g = FiniteGraph::from_edges(edges, verts);
    Permutation swap;
    for (int i = 0; i < n; ++i) {
      swap["L" + std::to_string(i)] = "R" + std::to_string(i);
      swap["R" + std::to_string(i)] = "L" + std::to_string(i);
    }
    auto res = collapse_components(g, std::vector<Permutation>{swap});
    for (const auto& v : g.vertices)
      CHECK(res.projection.at(swap.at(v)) == res.induced[0].at(res.projection.at(v)));
  }
}

TEST_CASE("thread domain and quotients on the free group") {
  auto dom = thread_domain(GraphSpec::free_group(2), 0, 4, {}, "e");
  CHECK(dom.ids == std::vector<std::string>{"A", "B", "a", "b"});

  // merging b with B and a with A: the spec example pullback
  QuotientPartition qa = make_quotient(dom, std::vector<std::vector<std::string>>{{"b", "B"}});
  QuotientPartition qb = make_quotient(dom, std::vector<std::vector<std::string>>{{"a", "A"}});
  CHECK(qa.classes.size() == 3);
  CHECK(qb.classes.size() == 3);

  PullbackResult pb = pullback(qa, qb);
  CHECK(pb.pullback.classes.size() == 4);  // 4 realized of 9 possible pairs
  for (const auto& c : pb.pullback.classes) CHECK(c.members.size() == 1);
  // projections are 2-to-1 exactly on the merged pairs
  CHECK(pb.onto_a[pb.pullback.class_index("b")] == pb.onto_a[pb.pullback.class_index("B")]);
  CHECK(pb.onto_b[pb.pullback.class_index("a")] == pb.onto_b[pb.pullback.class_index("A")]);

  // discrete x discrete = discrete with identity projections
  QuotientPartition disc = make_quotient(dom, {});
  PullbackResult pd = pullback(disc, disc);
  CHECK(pd.pullback.classes.size() == 4);
  for (std::uint32_t c = 0; c < 4; ++c) {
    CHECK(pd.onto_a[c] == c);
    CHECK(pd.onto_b[c] == c);
  }

  // one-class qa: pullback is isomorphic to qb
  QuotientPartition all =
      make_quotient(dom, std::vector<std::vector<std::string>>{{"a", "b", "A", "B"}});
  PullbackResult pq = pullback(all, qb);
  CHECK(pq.pullback.classes.size() == qb.classes.size());

  // universality witness: the discrete partition factors through everything,
  // a cross-merging partition does not
  CHECK(factors_through(pb, disc));
  QuotientPartition cross =
      make_quotient(dom, std::vector<std::vector<std::string>>{{"a", "b"}});
  CHECK_FALSE(factors_through(pb, cross));

  CHECK_THROWS_AS((void)make_quotient(dom, std::vector<std::vector<std::string>>{{"zz"}}),
                  Error);
}

TEST_CASE("tracked words must act consistently") {
  // left multiplication by a does not descend to depth-0 classes on F2
  CHECK_THROWS_AS((void)thread_domain(GraphSpec::free_group(2), 0, 5,
                                      std::vector<std::string>{"a"}, "e"),
                  Error);

  // on the line the translation action is tracked fine
  auto dom = thread_domain(GraphSpec::line(), 1, 8, std::vector<std::string>{"1"}, "0");
  CHECK(dom.ids.size() == 2);
  QuotientPartition disc = make_quotient(dom, {});
  REQUIRE(disc.action.size() == 1);
  CHECK(disc.action[0] == std::vector<std::uint32_t>{0, 1});  // both ends fixed

  PullbackResult pb = pullback(disc, disc);
  REQUIRE(pb.pullback.action.size() == 1);
  CHECK(pb.pullback.action[0] == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("pullback rejects mismatched domains") {
  auto dom_f2 = thread_domain(GraphSpec::free_group(2), 0, 4, {}, "e");
  auto dom_line = thread_domain(GraphSpec::line(), 0, 4, {}, "0");
  QuotientPartition qa = make_quotient(dom_f2, {});
  QuotientPartition qb = make_quotient(dom_line, {});
  CHECK_THROWS_AS((void)pullback(qa, qb), Error);
}
