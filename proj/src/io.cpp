#include "endscope/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace endscope {

namespace {

Json edge_keys(const Window& w, EdgeId e) {
  return Json::array({w.key(w.edges()[e].a), w.key(w.edges()[e].b)});
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

Json window_to_json(const Window& w, bool include_vertices) {
  Json j;
  j["window"] = w.id();
  j["graph"] = w.spec().id();
  j["basepoint"] = w.basepoint();
  j["radius"] = w.radius();
  j["vertex_count"] = w.size();
  j["edge_count"] = w.edge_count();
  j["exhausted"] = w.exhausted();
  if (include_vertices) {
    Json verts = Json::array();
    for (VertexId v = 0; v < w.size(); ++v)
      verts.push_back(Json{{"key", w.key(v)}, {"dist", w.distance(v)}});
    j["vertices"] = std::move(verts);
    Json edges = Json::array();
    for (EdgeId e = 0; e < w.edge_count(); ++e) edges.push_back(edge_keys(w, e));
    j["edges"] = std::move(edges);
  }
  Json frontier = Json::array();
  for (VertexId v : w.frontier()) frontier.push_back(w.key(v));
  j["frontier"] = std::move(frontier);
  return j;
}

Json report_to_json(const EndReport& rep) {
  Json j;
  j["graph"] = rep.graph_id;
  j["basepoint"] = rep.basepoint;
  j["radii"] = rep.radii;
  j["unbounded_counts"] = rep.unbounded_counts;
  j["classification"] = rep.classification;
  j["horizon"] = rep.horizon;
  j["exact"] = rep.exact;
  j["exact_per_radius"] = rep.exact_per_radius;
  return j;
}

Json partition_to_json(const ComponentPartition& part) {
  const Window& w = *part.removal.window;
  Json j;
  j["window"] = w.id();
  Json removal;
  if (part.removal.radius) removal["radius"] = *part.removal.radius;
  removal["edge_count"] = part.removal.edges.size();
  j["removal"] = std::move(removal);
  Json comps = Json::array();
  for (const auto& c : part.components)
    comps.push_back(Json{{"id", c.id},
                         {"size", c.vertices.size()},
                         {"frontier", c.frontier_touching}});
  j["components"] = std::move(comps);
  j["unbounded_count"] = part.unbounded_count;
  return j;
}

Json axiom_report_to_json(const AxiomReport& rep) {
  Json j;
  j["thread"] = rep.thread_id;
  j["axioms"] = Json{{"F0", rep.f0}, {"F1", rep.f1}, {"F2", rep.f2},
                     {"U", rep.u},   {"NB", rep.nb}};
  j["all_pass"] = rep.all();
  Json mem = Json::array();
  for (const auto& [label, verdict] : rep.memberships)
    mem.push_back(Json{{"set", label}, {"member", verdict}});
  j["memberships"] = std::move(mem);
  return j;
}

Json probe_to_json(const ProbeReport& rep) {
  Json j;
  j["graph"] = rep.graph_id;
  j["seq"] = rep.seq;
  j["depth"] = rep.depth;
  j["horizon"] = rep.horizon;
  j["lambda"] = rep.lambda;
  j["mu"] = rep.mu;
  j["classes"] = rep.classes;
  j["collapse_table"] = rep.collapse_table;
  j["verified_from"] = rep.verified_from;
  j["verified"] = rep.verified;
  return j;
}

Json collapse_to_json(const CollapseResult& res) {
  Json j;
  Json classes = Json::array();
  for (std::size_t i = 0; i < res.class_ids.size(); ++i)
    classes.push_back(Json{{"id", res.class_ids[i]}, {"members", res.members[i]}});
  j["classes"] = std::move(classes);
  j["projection"] = res.projection;
  Json induced = Json::array();
  for (const auto& table : res.induced) induced.push_back(table);
  j["induced"] = std::move(induced);
  return j;
}

Json quotient_to_json(const QuotientPartition& q, int depth) {
  Json j;
  j["depth"] = depth;
  j["domain"] = q.domain;
  Json classes = Json::array();
  for (const auto& c : q.classes)
    classes.push_back(Json{{"id", c.id}, {"members", c.members}});
  j["classes"] = std::move(classes);
  Json action = Json::array();
  for (std::size_t wi = 0; wi < q.tracked.size(); ++wi) {
    Json table;
    for (std::uint32_t c = 0; c < q.classes.size(); ++c)
      table[q.classes[c].id] = q.classes[q.action[wi][c]].id;
    action.push_back(Json{{"word", q.tracked[wi].normal}, {"map", std::move(table)}});
  }
  j["action"] = std::move(action);
  return j;
}

Json pullback_to_json(const PullbackResult& pb, int depth) {
  Json j = quotient_to_json(pb.pullback, depth);
  Json pairs = Json::array();
  for (std::size_t c = 0; c < pb.pairs.size(); ++c)
    pairs.push_back(Json{{"class", pb.pullback.classes[c].id},
                         {"a", pb.pairs[c].first},
                         {"b", pb.pairs[c].second}});
  j["pairs"] = std::move(pairs);
  return j;
}

Json vertexset_to_json(const VertexSet& s) {
  Json j;
  j["window"] = s.window->id();
  j["members"] = s.keys();
  return j;
}

VertexSet vertexset_from_json(const Window& w, const Json& j) {
  if (j.contains("window") && j["window"].get<std::string>() != w.id())
    fail(Errc::window_mismatch, "serialized set belongs to window " +
                                    j["window"].get<std::string>());
  std::vector<VertexKey> keys;
  for (const auto& k : j.at("members")) keys.push_back(k.get<std::string>());
  return VertexSet::of_keys(w, keys);
}

GraphSpec spec_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  Json params = j.value("params", Json::object());
  if (kind == "line") return GraphSpec::line();
  if (kind == "grid2d") return GraphSpec::grid2d();
  if (kind == "free-group") return GraphSpec::free_group(params.at("rank").get<int>());
  if (kind == "free-product")
    return GraphSpec::free_product(params.at("p").get<int>(), params.at("q").get<int>());
  if (kind == "regular-tree") return GraphSpec::regular_tree(params.at("degree").get<int>());
  if (kind == "finite-file") return GraphSpec::finite_file(params.at("path").get<std::string>());
  fail(Errc::parse_error, "unknown graph kind '" + kind + "'");
}

void export_dot(const Window& w, const ComponentPartition* partition, std::ostream& os) {
  static const char* palette[] = {
      "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c",
      "#fdbf6f", "#ff7f00", "#cab2d6", "#6a3d9a", "#ffff99", "#b15928",
      "#8dd3c7", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69",
  };
  constexpr std::size_t palette_size = sizeof(palette) / sizeof(palette[0]);

  os << "graph endscope {\n";
  os << "  node [shape=circle fontsize=10];\n";
  for (VertexId v = 0; v < w.size(); ++v) {
    os << "  \"" << w.key(v) << "\" [dist=" << w.distance(v);
    if (partition) {
      std::uint32_t c = partition->comp_index[v];
      os << " comp=\"" << partition->components[c].id << "\""
         << " style=filled fillcolor=\"" << palette[c % palette_size] << "\"";
    }
    if (w.is_frontier(v)) os << " peripheries=2";
    os << "];\n";
  }
  for (const auto& e : w.edges())
    os << "  \"" << w.key(e.a) << "\" -- \"" << w.key(e.b) << "\";\n";
  os << "}\n";
}

SetPredicate set_expr_predicate(const std::string& expr) {
  auto colon = expr.find(':');
  std::string head = expr.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : expr.substr(colon + 1);

  if (head == "halfline") {
    long long c = std::stoll(arg.empty() ? "0" : arg);
    return [c](const Window& w, VertexId v) {
      if (w.spec().kind() != GraphKind::line)
        fail(Errc::invalid_argument, "halfline needs the line graph");
      return std::stoll(w.key(v)) >= c;
    };
  }
  if (head == "halfplane") {
    long long c = std::stoll(arg.empty() ? "0" : arg);
    return [c](const Window& w, VertexId v) {
      if (w.spec().kind() != GraphKind::grid2d)
        fail(Errc::invalid_argument, "halfplane needs the grid2d graph");
      const VertexKey& k = w.key(v);
      return std::stoll(k.substr(1, k.find(',') - 1)) >= c;
    };
  }
  if (head == "branch") {
    if (arg.empty()) fail(Errc::invalid_argument, "branch needs a prefix word");
    return [arg](const Window& w, VertexId v) {
      VertexKey prefix = w.spec().canonical(arg);
      const VertexKey& k = w.key(v);
      if (k == prefix) return true;
      if (w.spec().kind() == GraphKind::regular_tree)
        return k.starts_with(prefix + ".");
      return k.starts_with(prefix);
    };
  }
  if (head == "ball") {
    int r = std::stoi(arg.empty() ? "0" : arg);
    return [r](const Window& w, VertexId v) { return w.distance(v) <= r; };
  }
  if (head == "even") {
    return [](const Window& w, VertexId v) {
      if (w.spec().kind() != GraphKind::line)
        fail(Errc::invalid_argument, "even needs the line graph");
      return std::stoll(w.key(v)) % 2 == 0;
    };
  }
  if (head == "list") {
    auto keys = split(arg, ';');
    return [keys](const Window& w, VertexId v) {
      VertexKey k = w.key(v);
      for (const auto& want : keys)
        if (w.spec().canonical(want) == k) return true;
      return false;
    };
  }
  fail(Errc::parse_error, "unknown set expression '" + expr + "'");
}

VertexSet evaluate_set_expr(const Window& w, const std::string& expr) {
  SetPredicate pred = set_expr_predicate(expr);
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < w.size(); ++v)
    if (pred(w, v)) ids.push_back(v);
  return VertexSet::of_ids(w, std::move(ids));
}

namespace {

struct CommonOpts {
  std::string graph;
  std::string graph_file;
  std::string basepoint;
  std::string out_path;
  std::size_t budget = 0;  // 0 = resolve from env/default
  std::size_t degree_bound = 64;
};

Limits resolve_limits(const CommonOpts& c) {
  Limits lim;
  lim.degree_bound = c.degree_bound;
  if (c.budget > 0) {
    lim.vertex_budget = c.budget;
  } else if (const char* env = std::getenv("ENDSCOPE_BUDGET")) {
    lim.vertex_budget = static_cast<std::size_t>(std::stoull(env));
  }
  return lim;
}

GraphSpec resolve_spec(const CommonOpts& c) {
  if (!c.graph_file.empty()) {
    std::ifstream in(c.graph_file);
    if (!in) fail(Errc::io_error, "cannot open graph file '" + c.graph_file + "'");
    Json j = Json::parse(in, nullptr, true, true);
    return spec_from_json(j);
  }
  if (c.graph.empty()) fail(Errc::invalid_argument, "no graph given (use --graph)");
  return GraphSpec::parse(c.graph);
}

VertexKey resolve_basepoint(const GraphSpec& spec, const CommonOpts& c) {
  return c.basepoint.empty() ? spec.default_basepoint() : spec.canonical(c.basepoint);
}

void emit(const CommonOpts& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) fail(Errc::io_error, "cannot open '" + c.out_path + "' for writing");
  f << text;
  if (!f) fail(Errc::io_error, "write to '" + c.out_path + "' failed");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
  return Json::parse(in, nullptr, true, true);
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_graph = true) {
  if (with_graph) {
    cmd->add_option("--graph,-g", opts.graph,
                    "catalog graph (line, grid2d, free-group:K, free-product:P,Q, "
                    "regular-tree:D, finite-file:PATH)");
    cmd->add_option("--graph-file", opts.graph_file, "graph spec as a JSON file");
    cmd->add_option("--basepoint", opts.basepoint, "window basepoint (defaults per kind)");
  }
  cmd->add_option("--out,-o", opts.out_path, "write the report to a file instead of stdout");
  cmd->add_option("--budget", opts.budget, "vertex budget (overrides ENDSCOPE_BUDGET)");
  cmd->add_option("--degree-bound", opts.degree_bound, "maximum allowed vertex degree");
}

// Collects the standard ultrafilter test family: every frontier-touching
// component for r = 0..depth together with its complement.
void standard_family(const EndSystem& sys, std::vector<VertexSet>& family,
                     std::vector<std::string>& labels) {
  const Window& w = sys.window();
  for (int r = 0; r <= sys.depth(); ++r) {
    for (const auto& c : sys.partition(r).components) {
      if (!c.frontier_touching) continue;
      VertexSet s = VertexSet::of_ids(w, c.vertices);
      labels.push_back("C:r=" + std::to_string(r) + ":" + c.id);
      family.push_back(s);
      labels.push_back("~C:r=" + std::to_string(r) + ":" + c.id);
      family.push_back(set_complement(family.back()));
    }
  }
}

std::vector<std::vector<std::string>> merges_from_json(const Json& j) {
  std::vector<std::vector<std::string>> groups;
  for (const auto& group : j.at("classes")) {
    std::vector<std::string> g;
    for (const auto& id : group) g.push_back(id.get<std::string>());
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"end-space structure of locally finite graphs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommonOpts ends_o, threads_o, algebra_o, act_o, probe_o, collapse_o, pullback_o, export_o;

  // ends
  auto* c_ends = app.add_subcommand("ends", "unbounded-component counts per radius");
  int rmax = 3, ends_horizon = 8;
  std::string ends_format = "json";
  add_common(c_ends, ends_o);
  c_ends->add_option("--rmax", rmax, "largest removal radius");
  c_ends->add_option("--horizon", ends_horizon, "window radius");
  c_ends->add_option("--format", ends_format, "json | table");

  // threads
  auto* c_threads = app.add_subcommand("threads", "finite-depth end threads");
  int threads_depth = 2, threads_horizon = 8;
  bool check_ultrafilter = false;
  add_common(c_threads, threads_o);
  c_threads->add_option("--depth", threads_depth, "thread depth");
  c_threads->add_option("--horizon", threads_horizon, "window radius");
  c_threads->add_flag("--ultrafilter", check_ultrafilter,
                      "run the ultrafilter axiom checks per thread");

  // algebra
  auto* c_algebra = app.add_subcommand("algebra", "boundary and almost-invariance verdicts");
  int algebra_radius = 8;
  std::string set_expr, set_file, g_words, certify;
  add_common(c_algebra, algebra_o);
  c_algebra->add_option("--radius", algebra_radius, "window radius");
  c_algebra->add_option("--set", set_expr,
                        "set expression (halfline:C, halfplane:C, branch:W, ball:R, even, "
                        "list:K1;K2)");
  c_algebra->add_option("--set-file", set_file, "vertex set as a JSON file");
  c_algebra->add_option("--g", g_words, "comma-separated words for almost-invariance checks");
  c_algebra->add_option("--certify", certify,
                        "comma-separated radii for the boundary growth certificate");

  // act
  auto* c_act = app.add_subcommand("act", "left translation of sets and end threads");
  int act_radius = 8, thread_depth = -1, result_depth = 0;
  std::string act_word, act_set, act_set_file, act_thread;
  add_common(c_act, act_o);
  c_act->add_option("--radius", act_radius, "window radius");
  c_act->add_option("--g", act_word, "group word to act with")->required();
  c_act->add_option("--set", act_set, "set expression to act on");
  c_act->add_option("--set-file", act_set_file, "vertex set file to act on");
  c_act->add_option("--thread", act_thread, "top component id of the thread to act on");
  c_act->add_option("--thread-depth", thread_depth, "depth of the source thread");
  c_act->add_option("--depth", result_depth, "depth of the image thread");

  // probe
  auto* c_probe = app.add_subcommand("probe", "convergence dynamics probe");
  int probe_depth = 0, probe_horizon = 8;
  std::string probe_seq;
  add_common(c_probe, probe_o);
  c_probe->add_option("--seq", probe_seq, "comma-separated words of growing length")
      ->required();
  c_probe->add_option("--depth", probe_depth, "end class depth");
  c_probe->add_option("--horizon", probe_horizon, "window radius");

  // collapse
  auto* c_collapse = app.add_subcommand("collapse", "component-collapse quotient");
  std::string edges_file, perms_file;
  add_common(c_collapse, collapse_o, false);
  c_collapse->add_option("--edges-file", edges_file, "finite graph, one 'key1 key2' per line")
      ->required();
  c_collapse->add_option("--perms-file", perms_file,
                         "JSON array of {vertex: image} automorphisms");

  // pullback
  auto* c_pullback = app.add_subcommand("pullback", "fiber product of end quotients");
  int pb_depth = 0, pb_horizon = 6;
  std::string qa_file, qb_file, third_file, track;
  add_common(c_pullback, pullback_o);
  c_pullback->add_option("--depth", pb_depth, "thread depth");
  c_pullback->add_option("--horizon", pb_horizon, "window radius");
  c_pullback->add_option("--qa", qa_file, "first quotient: JSON {\"classes\":[[id,...],...]}")
      ->required();
  c_pullback->add_option("--qb", qb_file, "second quotient file")->required();
  c_pullback->add_option("--third", third_file, "third quotient for the factorization witness");
  c_pullback->add_option("--track", track, "comma-separated words whose action is tracked");

  // export
  auto* c_export = app.add_subcommand("export", "DOT / JSON export of a window");
  int export_radius = 3, removal_radius = -1;
  std::string export_format = "dot";
  add_common(c_export, export_o);
  c_export->add_option("--radius", export_radius, "window radius");
  c_export->add_option("--removal-radius", removal_radius,
                       "color components of the complement of M_r");
  c_export->add_option("--format", export_format, "dot | json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 64;
  }

  try {
    if (*c_ends) {
      Limits lim = resolve_limits(ends_o);
      GraphSpec spec = resolve_spec(ends_o);
      EndReport rep =
          end_count_report(spec, rmax, ends_horizon, resolve_basepoint(spec, ends_o), lim);
      if (ends_format == "table") {
        std::ostringstream t;
        t << "graph: " << rep.graph_id << "  horizon: " << rep.horizon << "\n";
        t << "r  unbounded  exact\n";
        for (std::size_t i = 0; i < rep.radii.size(); ++i)
          t << rep.radii[i] << "  " << rep.unbounded_counts[i] << "  "
            << (rep.exact_per_radius[i] ? "yes" : "no") << "\n";
        t << "classification " << rep.classification << "\n";
        emit(ends_o, t.str(), out);
      } else {
        emit(ends_o, dump(report_to_json(rep)), out);
      }
    } else if (*c_threads) {
      Limits lim = resolve_limits(threads_o);
      GraphSpec spec = resolve_spec(threads_o);
      Window w = materialize_window(spec, resolve_basepoint(spec, threads_o), threads_horizon,
                                    lim);
      EndSystem sys(w, threads_depth);
      Json j;
      j["graph"] = spec.id();
      j["basepoint"] = w.basepoint();
      j["horizon"] = threads_horizon;
      j["depth"] = threads_depth;
      j["count"] = sys.threads().size();
      Json list = Json::array();
      for (const auto& t : sys.threads()) {
        Json tj;
        tj["id"] = t.id();
        Json choices = Json::array();
        for (int r = 0; r <= t.depth; ++r) {
          const Component& c = sys.component_at(t, r);
          choices.push_back(Json{{"radius", r},
                                 {"component", c.id},
                                 {"size", c.vertices.size()},
                                 {"frontier", c.frontier_touching}});
        }
        tj["choices"] = std::move(choices);
        if (check_ultrafilter) {
          std::vector<VertexSet> family;
          std::vector<std::string> labels;
          standard_family(sys, family, labels);
          tj["ultrafilter"] = axiom_report_to_json(ultrafilter_check(sys, t, family, labels));
        }
        list.push_back(std::move(tj));
      }
      j["threads"] = std::move(list);
      emit(threads_o, dump(j), out);
    } else if (*c_algebra) {
      Limits lim = resolve_limits(algebra_o);
      GraphSpec spec = resolve_spec(algebra_o);
      VertexKey base = resolve_basepoint(spec, algebra_o);
      Window w = materialize_window(spec, base, algebra_radius, lim);
      VertexSet a = !set_file.empty() ? vertexset_from_json(w, read_json_file(set_file))
                                      : evaluate_set_expr(w, set_expr);
      GammaBoundary bd = gamma_boundary(w, a);
      AlgebraVerdict verdict = in_U_gamma(w, a);
      Json j;
      j["window"] = w.id();
      j["graph"] = spec.id();
      j["radius"] = algebra_radius;
      j["set"] = set_file.empty() ? Json(set_expr) : Json(set_file);
      j["set_size"] = a.size();
      Json bj;
      Json bedges = Json::array();
      for (EdgeId e : bd.edges) bedges.push_back(edge_keys(w, e));
      bj["edges"] = std::move(bedges);
      bj["support"] = bd.support.keys();
      bj["bounded_within_window"] = bd.bounded_within_window;
      j["boundary"] = std::move(bj);
      j["verdict"] = uverdict_name(verdict.verdict);
      j["witness"] = verdict.witness.keys();
      if (!g_words.empty()) {
        Json ai = Json::array();
        for (const auto& word : split(g_words, ',')) {
          AlmostInvariance res = almost_invariance_check(w, a, word);
          ai.push_back(Json{{"g", spec.canonical(word)},
                            {"bounded", res.bounded},
                            {"witness", res.witness.keys()},
                            {"exact", res.exact},
                            {"core_radius", res.core_radius}});
        }
        j["almost_invariance"] = std::move(ai);
      }
      if (!certify.empty()) {
        if (set_expr.empty())
          fail(Errc::invalid_argument, "--certify needs --set (a re-evaluable expression)");
        std::vector<int> radii;
        for (const auto& r : split(certify, ',')) radii.push_back(std::stoi(r));
        GrowthCertificate cert =
            in_U_gamma_certified(spec, base, set_expr_predicate(set_expr), radii, lim);
        j["certificate"] = Json{{"radii", cert.radii},
                                {"support_sizes", cert.support_sizes},
                                {"verdict", uverdict_name(cert.verdict)}};
        j["verdict"] = uverdict_name(cert.verdict);
      }
      emit(algebra_o, dump(j), out);
    } else if (*c_act) {
      Limits lim = resolve_limits(act_o);
      GraphSpec spec = resolve_spec(act_o);
      Window w = materialize_window(spec, resolve_basepoint(spec, act_o), act_radius, lim);
      GroupWord g = make_word(spec, act_word);
      Json j;
      j["graph"] = spec.id();
      j["g"] = g.normal;
      if (!act_thread.empty()) {
        if (thread_depth < 0)
          fail(Errc::invalid_argument, "--thread needs --thread-depth");
        EndSystem sys(w, thread_depth);
        auto t = sys.find_thread(act_thread);
        if (!t) fail(Errc::invalid_argument, "no thread with top component '" + act_thread + "'");
        EndThread image = act_on_end(sys, g, *t, result_depth);
        j["thread"] = act_thread;
        j["depth"] = result_depth;
        j["image"] = Json{{"id", image.id()}, {"choices", image.choices}};
      } else {
        VertexSet a = !act_set_file.empty()
                          ? vertexset_from_json(w, read_json_file(act_set_file))
                          : evaluate_set_expr(w, act_set);
        VertexSet image = act_on_set(g, a);
        j["set_size"] = a.size();
        j["image"] = vertexset_to_json(image);
      }
      emit(act_o, dump(j), out);
    } else if (*c_probe) {
      Limits lim = resolve_limits(probe_o);
      GraphSpec spec = resolve_spec(probe_o);
      ProbeReport rep = dynamics_probe(spec, split(probe_seq, ','), probe_depth, probe_horizon,
                                       resolve_basepoint(spec, probe_o), lim);
      emit(probe_o, dump(probe_to_json(rep)), out);
    } else if (*c_collapse) {
      GraphSpec fg = GraphSpec::finite_file(edges_file);
      std::vector<std::pair<VertexKey, VertexKey>> edges;
      std::vector<VertexKey> verts;
      for (const auto& [v, nbrs] : *fg.table()) {
        verts.push_back(v);
        for (const auto& n : nbrs)
          if (v < n) edges.emplace_back(v, n);
      }
      FiniteGraph graph = FiniteGraph::from_edges(edges, verts);
      std::vector<Permutation> perms;
      if (!perms_file.empty()) {
        for (const auto& pj : read_json_file(perms_file)) {
          Permutation p;
          for (auto it = pj.begin(); it != pj.end(); ++it)
            p[it.key()] = it.value().get<std::string>();
          perms.push_back(std::move(p));
        }
      }
      emit(collapse_o, dump(collapse_to_json(collapse_components(graph, perms))), out);
    } else if (*c_pullback) {
      Limits lim = resolve_limits(pullback_o);
      GraphSpec spec = resolve_spec(pullback_o);
      std::vector<std::string> tracked =
          track.empty() ? std::vector<std::string>{} : split(track, ',');
      ThreadDomain dom = thread_domain(spec, pb_depth, pb_horizon, tracked,
                                       resolve_basepoint(spec, pullback_o), lim);
      QuotientPartition qa = make_quotient(dom, merges_from_json(read_json_file(qa_file)));
      QuotientPartition qb = make_quotient(dom, merges_from_json(read_json_file(qb_file)));
      PullbackResult pb = pullback(qa, qb);
      Json j = pullback_to_json(pb, pb_depth);
      j["qa"] = quotient_to_json(qa, pb_depth);
      j["qb"] = quotient_to_json(qb, pb_depth);
      if (!third_file.empty()) {
        QuotientPartition third =
            make_quotient(dom, merges_from_json(read_json_file(third_file)));
        j["third_factors_through"] = factors_through(pb, third);
      }
      emit(pullback_o, dump(j), out);
    } else if (*c_export) {
      Limits lim = resolve_limits(export_o);
      GraphSpec spec = resolve_spec(export_o);
      Window w = materialize_window(spec, resolve_basepoint(spec, export_o), export_radius,
                                    lim);
      std::optional<ComponentPartition> part;
      if (removal_radius >= 0) part = components(w, removal_set(w, removal_radius));
      if (export_format == "dot") {
        std::ostringstream dot;
        export_dot(w, part ? &*part : nullptr, dot);
        emit(export_o, dot.str(), out);
      } else {
        Json j = window_to_json(w, true);
        if (part) j["partition"] = partition_to_json(*part);
        emit(export_o, dump(j), out);
      }
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.is_budget() ? 3 : 2;
  } catch (const Json::exception& e) {
    err << "ParseError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace endscope
