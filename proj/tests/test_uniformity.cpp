#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "endscope/uniformity.hpp"
#include "oracles.hpp"

using namespace endscope;

namespace {

VertexSet keys_ge(const Window& w, long long from) {
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < w.size(); ++v)
    if (std::stoll(w.key(v)) >= from) ids.push_back(v);
  return VertexSet::of_ids(w, std::move(ids));
}

VertexSet prefix_set(const Window& w, const std::string& prefix) {
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < w.size(); ++v)
    if (w.key(v).starts_with(prefix)) ids.push_back(v);
  return VertexSet::of_ids(w, std::move(ids));
}

EndThread plus_thread(const Window& w, const EndSystem& sys) {
  auto t = sys.thread_of_vertex(*w.find(std::to_string(w.radius())));
  REQUIRE(t.has_value());
  return *t;
}

}  // namespace

TEST_CASE("smallness") {
  Window w = materialize_window(GraphSpec::line(), "0", 10);
  Entourage e = entourage(w, removal_set(w, 2));
  CHECK(is_small(e, VertexSet::of_keys(w, std::vector<VertexKey>{"4", "5", "6"})));
  CHECK_FALSE(is_small(e, VertexSet::of_keys(w, std::vector<VertexKey>{"-5", "5"})));
  CHECK(is_small(e, VertexSet::empty_set(w)));
}

TEST_CASE("entourage laws: equivalence relation shape") {
  for (const auto& spec : {GraphSpec::line(), GraphSpec::free_group(2)}) {
    Window w = materialize_window(spec, spec.default_basepoint(), 5);
    for (int r = 0; r <= 3; ++r) {
      Entourage e = entourage(w, removal_set(w, r));
      // partition is total and disjoint
      std::size_t total = 0;
      for (const auto& c : e.partition.components) total += c.vertices.size();
      CHECK(total == w.size());
      // reflexive + symmetric, exhaustively
      for (VertexId g = 0; g < w.size(); ++g) {
        CHECK(e.related(g, g));
        for (VertexId h = g + 1; h < w.size(); ++h)
          CHECK(e.related(g, h) == e.related(h, g));
      }
    }
  }
}

TEST_CASE("entourage filtering: union of removals refines") {
  std::mt19937_64 rng(13);
  Window w = materialize_window(GraphSpec::grid2d(), "(0,0)", 6);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<EdgeId> em, en;
    for (EdgeId e = 0; e < w.edge_count(); ++e) {
      if (rng() % 5 == 0) em.push_back(e);
      if (rng() % 5 == 0) en.push_back(e);
    }
    auto m = removal_from_edge_ids(w, em);
    auto n = removal_from_edge_ids(w, en);
    auto pm = components(w, m);
    auto pn = components(w, n);
    auto pu = components(w, removal_union(m, n));
    // every union-component sits inside one m-component and one n-component
    for (const auto& c : pu.components) {
      auto im = pm.comp_index[c.vertices.front()];
      auto in = pn.comp_index[c.vertices.front()];
      for (VertexId v : c.vertices) {
        CHECK(pm.comp_index[v] == im);
        CHECK(pn.comp_index[v] == in);
      }
    }
  }
}

TEST_CASE("exactness: interior pairs are eventually separated") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 4);
  for (VertexId g = 0; g < w.size(); ++g) {
    if (w.distance(g) > w.radius() - 2) continue;
    for (VertexId h = g + 1; h < w.size(); ++h) {
      if (w.distance(h) > w.radius() - 2) continue;
      int r = std::max(w.distance(g), w.distance(h));
      Entourage e = entourage(w, removal_set(w, r));
      CHECK_FALSE(e.related(g, h));
    }
  }
}

TEST_CASE("membership on the line") {
  Window w = materialize_window(GraphSpec::line(), "0", 10);
  EndSystem sys(w, 3);
  EndThread plus = plus_thread(w, sys);

  CHECK(membership(sys, plus, keys_ge(w, 5)));
  CHECK_FALSE(membership(sys, plus, set_complement(keys_ge(w, 0))));
  CHECK(membership(sys, plus, keys_ge(w, 0)));

  // even integers have unbounded boundary
  std::vector<VertexId> evens;
  for (VertexId v = 0; v < w.size(); ++v)
    if (std::stoll(w.key(v)) % 2 == 0) evens.push_back(v);
  try {
    (void)membership(sys, plus, VertexSet::of_ids(w, std::move(evens)));
    FAIL("expected NotInAlgebra");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_in_algebra);
  }

  // full and empty sets
  CHECK(membership(sys, plus, VertexSet::full_set(w)));
  CHECK_FALSE(membership(sys, plus, VertexSet::empty_set(w)));
}

TEST_CASE("membership on the free group: branches") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 6);
  EndSystem sys(w, 2);
  auto a_thread = sys.thread_of_vertex(*w.find("aaaaaa"));
  REQUIRE(a_thread.has_value());

  CHECK(membership(sys, *a_thread, prefix_set(w, "a")));
  CHECK_FALSE(membership(sys, *a_thread, prefix_set(w, "b")));
  CHECK(membership(sys, *a_thread, set_complement(prefix_set(w, "b"))));
  CHECK(membership(sys, *a_thread, prefix_set(w, "aa")));
  CHECK_FALSE(membership(sys, *a_thread, prefix_set(w, "ab")));
}

TEST_CASE("membership depth limits: depth-0 thread cannot resolve subbranches") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 5);
  EndSystem sys(w, 0);
  auto branch_a = sys.find_thread("a");
  REQUIRE(branch_a.has_value());
  CHECK(membership(sys, *branch_a, prefix_set(w, "a")));
  try {
    (void)membership(sys, *branch_a, prefix_set(w, "ab"));
    FAIL("expected Unresolvable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unresolvable);
  }
}

TEST_CASE("fast membership agrees with the resolved-partition route") {
  Window line = materialize_window(GraphSpec::line(), "0", 10);
  EndSystem lsys(line, 3);
  EndThread plus = plus_thread(line, lsys);
  for (long long cut : {-4LL, 0LL, 3LL, 6LL}) {
    auto a = keys_ge(line, cut);
    auto resolved = membership_resolved(lsys, plus, a);
    CHECK(resolved.member == membership(lsys, plus, a));
    // the selected region respects the dichotomy
    if (resolved.member)
      CHECK(is_subset(resolved.component, a));
    else
      CHECK(set_intersection(resolved.component, a).is_empty());
  }
  // the spec's shape: thread +inf against {n >= 5} selects {n >= 6}
  auto witness = membership_resolved(lsys, plus, keys_ge(line, 5));
  CHECK(witness.member);
  CHECK(witness.component == keys_ge(line, 6));

  Window f2 = materialize_window(GraphSpec::free_group(2), "e", 6);
  EndSystem fsys(f2, 2);
  auto a_thread = fsys.thread_of_vertex(*f2.find("aaaaaa"));
  REQUIRE(a_thread.has_value());
  for (const char* prefix : {"a", "b", "aa", "aB", "B"}) {
    auto a = prefix_set(f2, prefix);
    auto resolved = membership_resolved(fsys, *a_thread, a);
    CHECK(resolved.member == membership(fsys, *a_thread, a));
  }
}

TEST_CASE("ultrafilter axioms on the line") {
  Window w = materialize_window(GraphSpec::line(), "0", 10);
  EndSystem sys(w, 3);
  EndThread plus = plus_thread(w, sys);

  std::vector<VertexSet> family{VertexSet::full_set(w), VertexSet::empty_set(w),
                                keys_ge(w, 0), set_complement(keys_ge(w, 0)),
                                VertexSet::of_keys(w, std::vector<VertexKey>{"0", "1", "2",
                                                                             "3", "4", "5"})};
  std::vector<std::string> labels{"G", "empty", "nonneg", "neg", "block"};
  AxiomReport rep = ultrafilter_check(sys, plus, family, labels);
  CHECK(rep.all());
  CHECK(rep.memberships[0].second);        // G in the filter
  CHECK_FALSE(rep.memberships[1].second);  // empty not
  CHECK(rep.memberships[2].second);        // {n>=0} in
  CHECK_FALSE(rep.memberships[3].second);  // {n<0} not
  CHECK_FALSE(rep.memberships[4].second);  // bounded block not
}

TEST_CASE("ultrafilter dichotomy on free-group branches") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 6);
  EndSystem sys(w, 2);
  auto a_thread = sys.thread_of_vertex(*w.find("aaaaaa"));
  REQUIRE(a_thread.has_value());
  std::vector<VertexSet> family{prefix_set(w, "a"), prefix_set(w, "b"),
                                set_complement(prefix_set(w, "a"))};
  std::vector<std::string> labels{"branch-a", "branch-b", "co-branch-a"};
  AxiomReport rep = ultrafilter_check(sys, *a_thread, family, labels);
  CHECK(rep.all());
  CHECK(rep.memberships[0].second);
  CHECK_FALSE(rep.memberships[1].second);
  CHECK_FALSE(rep.memberships[2].second);
}

TEST_CASE("filter bases") {
  Window w = materialize_window(GraphSpec::line(), "0", 10);
  EndSystem sys(w, 3);
  EndThread plus = plus_thread(w, sys);
  FilterBase fb = thread_to_filter_base(sys, plus);
  REQUIRE(fb.base.size() == 4);
  CHECK(fb.base[0].keys().front() == "1");   // {1..10}, sorted keys start at "1"
  CHECK(fb.base[0].size() == 10);
  CHECK(fb.base[1].size() == 9);
  CHECK(fb.base[2].size() == 8);
  CHECK(fb.base[3].size() == 7);
  for (int r = 0; r <= 3; ++r) {
    CHECK(is_small(entourage(w, removal_set(w, r)), fb.base[static_cast<std::size_t>(r)]));
    if (r < 3)
      CHECK(is_subset(fb.base[static_cast<std::size_t>(r) + 1],
                      fb.base[static_cast<std::size_t>(r)]));
  }
}

TEST_CASE("depth-0 filter base on the free group") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 4);
  EndSystem sys(w, 0);
  auto t = sys.find_thread("a");
  REQUIRE(t.has_value());
  FilterBase fb = thread_to_filter_base(sys, *t);
  REQUIRE(fb.base.size() == 1);
  CHECK(fb.base[0] == prefix_set(w, "a"));
}

TEST_CASE("distinct threads have disjoint bases at the separating radius") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 6);
  EndSystem sys(w, 3);
  const auto& threads = sys.threads();
  for (std::size_t i = 0; i < threads.size(); ++i)
    for (std::size_t j = i + 1; j < threads.size(); ++j) {
      int sep = -1;
      for (int r = 0; r <= 3; ++r)
        if (threads[i].choices[static_cast<std::size_t>(r)] !=
            threads[j].choices[static_cast<std::size_t>(r)]) {
          sep = r;
          break;
        }
      REQUIRE(sep >= 0);
      auto bi = thread_to_filter_base(sys, threads[i]).base[static_cast<std::size_t>(sep)];
      auto bj = thread_to_filter_base(sys, threads[j]).base[static_cast<std::size_t>(sep)];
      CHECK(set_intersection(bi, bj).is_empty());
    }
}

TEST_CASE("round trip: membership verdicts reconstruct the thread") {
  for (const auto& spec : {GraphSpec::line(), GraphSpec::free_group(2)}) {
    Window w = materialize_window(spec, spec.default_basepoint(), 6);
    EndSystem sys(w, 2);
    for (const auto& t : sys.threads()) {
      for (int r = 0; r <= 2; ++r) {
        std::vector<std::string> chosen;
        for (const auto& c : sys.partition(r).components) {
          if (!c.frontier_touching) continue;
          if (membership(sys, t, VertexSet::of_ids(w, c.vertices))) chosen.push_back(c.id);
        }
        REQUIRE(chosen.size() == 1);
        CHECK(chosen.front() == t.choices[static_cast<std::size_t>(r)]);
      }
    }
  }
}

TEST_CASE("every nested chain of frontier components is a thread") {
  Window w = materialize_window(GraphSpec::free_group(2), "e", 6);
  EndSystem sys(w, 2);
  // enumerate chains bottom-up through the restriction maps
  std::size_t chains = 0;
  for (const auto& top : sys.partition(2).components) {
    if (!top.frontier_touching) continue;
    ++chains;
    EndThread probe;
    probe.depth = 2;
    probe.choices = {sys.restriction(0).at(sys.restriction(1).at(top.id)),
                     sys.restriction(1).at(top.id), top.id};
    auto found = sys.find_thread(top.id);
    REQUIRE(found.has_value());
    CHECK(found->choices == probe.choices);
  }
  CHECK(chains == sys.threads().size());
}
