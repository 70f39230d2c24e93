#include "endscope/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

namespace endscope {

namespace {

// Generator letters for free groups; 'e' is reserved for the identity key.
constexpr std::string_view kFreeLetters = "abcdfghijklmnopqrstuvwxyz";

long long parse_int(const std::string& text, const std::string& what) {
  long long value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    fail(Errc::invalid_key, "not an integer " + what + ": '" + text + "'");
  return value;
}

std::string grid_key(long long x, long long y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

std::pair<long long, long long> parse_grid(const std::string& raw) {
  std::string t;
  t.reserve(raw.size());
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.size() < 5 || t.front() != '(' || t.back() != ')')
    fail(Errc::invalid_key, "grid key must look like (x,y): '" + raw + "'");
  auto comma = t.find(',');
  if (comma == std::string::npos)
    fail(Errc::invalid_key, "grid key must look like (x,y): '" + raw + "'");
  long long x = parse_int(t.substr(1, comma - 1), "grid x");
  long long y = parse_int(t.substr(comma + 1, t.size() - comma - 2), "grid y");
  return {x, y};
}

bool is_free_letter(char c, int rank) {
  char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto pos = kFreeLetters.find(lower);
  return pos != std::string_view::npos && static_cast<int>(pos) < rank;
}

char swap_case(char c) {
  return std::isupper(static_cast<unsigned char>(c))
             ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
             : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

// Free reduction: cancel adjacent inverse pairs.
std::string reduce_free(std::string_view word, int rank) {
  std::string out;
  out.reserve(word.size());
  for (char c : word) {
    if (!is_free_letter(c, rank))
      fail(Errc::invalid_key, std::string("letter '") + c + "' not a generator");
    if (!out.empty() && out.back() == swap_case(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

// Alternating-run normal form for Z/p * Z/q over letters s, t; uppercase
// means formal inverse. Runs are stored expanded (count < order).
std::string reduce_product(std::string_view word, int p, int q) {
  std::vector<std::pair<char, int>> runs;  // (letter, count mod order), count > 0
  auto order_of = [&](char letter) { return letter == 's' ? p : q; };
  for (char c : word) {
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower != 's' && lower != 't')
      fail(Errc::invalid_key, std::string("letter '") + c + "' not in {s,S,t,T}");
    int order = order_of(lower);
    int delta = std::islower(static_cast<unsigned char>(c)) ? 1 : order - 1;
    if (!runs.empty() && runs.back().first == lower) {
      runs.back().second = (runs.back().second + delta) % order;
      if (runs.back().second == 0) runs.pop_back();
    } else {
      runs.emplace_back(lower, delta % order);
    }
  }
  std::string out;
  for (auto& [letter, count] : runs) out.append(static_cast<std::size_t>(count), letter);
  return out;
}

int product_length(std::string_view normal, int p, int q) {
  int total = 0;
  std::size_t i = 0;
  while (i < normal.size()) {
    char letter = normal[i];
    std::size_t j = i;
    while (j < normal.size() && normal[j] == letter) ++j;
    int count = static_cast<int>(j - i);
    int order = letter == 's' ? p : q;
    total += std::min(count, order - count);
    i = j;
  }
  return total;
}

std::vector<int> parse_tree_path(const std::string& raw, int degree) {
  if (raw == "e") return {};
  std::vector<int> path;
  std::size_t start = 0;
  while (start <= raw.size()) {
    auto dot = raw.find('.', start);
    std::string part = raw.substr(start, dot == std::string::npos ? dot : dot - start);
    long long v = parse_int(part, "tree path component");
    int limit = path.empty() ? degree : degree - 1;
    if (v < 0 || v >= limit)
      fail(Errc::invalid_key, "tree path component out of range: '" + raw + "'");
    path.push_back(static_cast<int>(v));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return path;
}

std::string tree_key(const std::vector<int>& path) {
  if (path.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(path[i]);
  }
  return out;
}

std::shared_ptr<const FiniteTable> load_adjacency_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open adjacency file '" + path + "'");
  FiniteTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;  // blank line
    if (!(ss >> b) || (ss >> extra))
      fail(Errc::parse_error,
           "expected 'key1 key2' at " + path + ":" + std::to_string(lineno));
    if (a == b) continue;  // self-loops never affect components or boundaries
    table[a].push_back(b);
    table[b].push_back(a);
  }
  for (auto& [key, nbrs] : table) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return std::make_shared<const FiniteTable>(std::move(table));
}

std::string table_content_hash(const FiniteTable& table) {
  std::string blob;
  for (auto& [key, nbrs] : table) {
    blob += key;
    blob.push_back('>');
    for (auto& n : nbrs) {
      blob += n;
      blob.push_back(';');
    }
    blob.push_back('\n');
  }
  return fnv1a_hex(blob);
}

}  // namespace

const char* kind_name(GraphKind k) {
  switch (k) {
    case GraphKind::line: return "line";
    case GraphKind::grid2d: return "grid2d";
    case GraphKind::free_group: return "free-group";
    case GraphKind::free_product: return "free-product";
    case GraphKind::regular_tree: return "regular-tree";
    case GraphKind::finite_file: return "finite-file";
    case GraphKind::adjacency_oracle: return "adjacency-oracle";
  }
  return "?";
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a_hex(std::string_view text) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(text);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

GraphSpec GraphSpec::line() {
  GraphSpec s;
  s.kind_ = GraphKind::line;
  return s;
}

GraphSpec GraphSpec::grid2d() {
  GraphSpec s;
  s.kind_ = GraphKind::grid2d;
  return s;
}

GraphSpec GraphSpec::free_group(int rank) {
  if (rank < 1 || rank > static_cast<int>(kFreeLetters.size()))
    fail(Errc::invalid_argument, "free-group rank must be in [1," +
                                     std::to_string(kFreeLetters.size()) + "]");
  GraphSpec s;
  s.kind_ = GraphKind::free_group;
  s.rank_ = rank;
  return s;
}

GraphSpec GraphSpec::free_product(int p, int q) {
  if (p < 2 || q < 2) fail(Errc::invalid_argument, "free-product orders must be >= 2");
  GraphSpec s;
  s.kind_ = GraphKind::free_product;
  s.p_ = p;
  s.q_ = q;
  return s;
}

GraphSpec GraphSpec::regular_tree(int degree) {
  if (degree < 1) fail(Errc::invalid_argument, "regular-tree degree must be >= 1");
  GraphSpec s;
  s.kind_ = GraphKind::regular_tree;
  s.degree_ = degree;
  return s;
}

GraphSpec GraphSpec::finite_file(const std::string& path) {
  GraphSpec s;
  s.kind_ = GraphKind::finite_file;
  s.table_ = load_adjacency_file(path);
  s.label_ = table_content_hash(*s.table_);
  return s;
}

GraphSpec GraphSpec::finite_edges(const std::vector<std::pair<VertexKey, VertexKey>>& edges,
                                  const std::string& label) {
  FiniteTable table;
  for (auto& [a, b] : edges) {
    if (a == b) continue;
    table[a].push_back(b);
    table[b].push_back(a);
  }
  for (auto& [key, nbrs] : table) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  GraphSpec s;
  s.kind_ = GraphKind::finite_file;
  s.table_ = std::make_shared<const FiniteTable>(std::move(table));
  s.label_ = label.empty() ? table_content_hash(*s.table_) : label;
  return s;
}

GraphSpec GraphSpec::adjacency_oracle(NeighborOracle oracle) {
  if (!oracle.neighbors) fail(Errc::invalid_argument, "oracle has no neighbor function");
  GraphSpec s;
  s.kind_ = GraphKind::adjacency_oracle;
  s.label_ = oracle.label.empty() ? "anonymous" : oracle.label;
  s.oracle_ = std::move(oracle);
  return s;
}

GraphSpec GraphSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "line") return line();
  if (head == "grid2d") return grid2d();
  if (head == "free-group")
    return free_group(static_cast<int>(parse_int(args, "free-group rank")));
  if (head == "regular-tree")
    return regular_tree(static_cast<int>(parse_int(args, "regular-tree degree")));
  if (head == "free-product") {
    auto comma = args.find(',');
    if (comma == std::string::npos)
      fail(Errc::parse_error, "free-product needs two orders, e.g. free-product:2,3");
    return free_product(static_cast<int>(parse_int(args.substr(0, comma), "order p")),
                        static_cast<int>(parse_int(args.substr(comma + 1), "order q")));
  }
  if (head == "finite-file") return finite_file(args);
  fail(Errc::parse_error, "unknown graph spec '" + text + "'");
}

bool GraphSpec::is_cayley() const {
  switch (kind_) {
    case GraphKind::line:
    case GraphKind::grid2d:
    case GraphKind::free_group:
    case GraphKind::free_product:
      return true;
    default:
      return false;
  }
}

VertexKey GraphSpec::canonical(const VertexKey& raw) const {
  switch (kind_) {
    case GraphKind::line:
      return std::to_string(parse_int(raw, "line key"));
    case GraphKind::grid2d: {
      auto [x, y] = parse_grid(raw);
      return grid_key(x, y);
    }
    case GraphKind::free_group: {
      if (raw == "e") return "e";
      std::string word = reduce_free(raw, rank_);
      return word.empty() ? "e" : word;
    }
    case GraphKind::free_product: {
      if (raw == "e") return "e";
      std::string word = reduce_product(raw, p_, q_);
      return word.empty() ? "e" : word;
    }
    case GraphKind::regular_tree:
      return tree_key(parse_tree_path(raw, degree_));
    case GraphKind::finite_file: {
      if (!table_->count(raw))
        fail(Errc::invalid_key, "vertex '" + raw + "' not in finite graph");
      return raw;
    }
    case GraphKind::adjacency_oracle: {
      if (oracle_.canonical) {
        auto c = oracle_.canonical(raw);
        if (!c) fail(Errc::invalid_key, "oracle rejected key '" + raw + "'");
        return *c;
      }
      return raw;
    }
  }
  fail(Errc::invalid_key, "unhandled kind");
}

std::vector<VertexKey> GraphSpec::neighbors(const VertexKey& v) const {
  VertexKey c = canonical(v);
  std::vector<VertexKey> out;
  switch (kind_) {
    case GraphKind::line: {
      long long n = parse_int(c, "line key");
      out = {std::to_string(n - 1), std::to_string(n + 1)};
      break;
    }
    case GraphKind::grid2d: {
      auto [x, y] = parse_grid(c);
      out = {grid_key(x - 1, y), grid_key(x + 1, y), grid_key(x, y - 1), grid_key(x, y + 1)};
      break;
    }
    case GraphKind::free_group:
    case GraphKind::free_product: {
      for (const auto& g : generators()) out.push_back(multiply(c, g));
      break;
    }
    case GraphKind::regular_tree: {
      auto path = parse_tree_path(c, degree_);
      if (!path.empty()) {
        auto parent = path;
        parent.pop_back();
        out.push_back(tree_key(parent));
      }
      int children = path.empty() ? degree_ : degree_ - 1;
      for (int i = 0; i < children; ++i) {
        auto child = path;
        child.push_back(i);
        out.push_back(tree_key(child));
      }
      break;
    }
    case GraphKind::finite_file:
      out = table_->at(c);
      break;
    case GraphKind::adjacency_oracle:
      out = oracle_.neighbors(c);
      for (auto& k : out) k = canonical(k);
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), c), out.end());
  return out;
}

VertexKey GraphSpec::identity() const {
  switch (kind_) {
    case GraphKind::line: return "0";
    case GraphKind::grid2d: return "(0,0)";
    case GraphKind::free_group:
    case GraphKind::free_product: return "e";
    default:
      fail(Errc::invalid_argument, std::string(kind_name(kind_)) + " is not a Cayley graph");
  }
}

VertexKey GraphSpec::multiply(const VertexKey& a, const VertexKey& b) const {
  VertexKey ca = canonical(a), cb = canonical(b);
  switch (kind_) {
    case GraphKind::line:
      return std::to_string(parse_int(ca, "line key") + parse_int(cb, "line key"));
    case GraphKind::grid2d: {
      auto [ax, ay] = parse_grid(ca);
      auto [bx, by] = parse_grid(cb);
      return grid_key(ax + bx, ay + by);
    }
    case GraphKind::free_group: {
      std::string word = (ca == "e" ? "" : ca) + (cb == "e" ? "" : cb);
      std::string r = reduce_free(word, rank_);
      return r.empty() ? "e" : r;
    }
    case GraphKind::free_product: {
      std::string word = (ca == "e" ? "" : ca) + (cb == "e" ? "" : cb);
      std::string r = reduce_product(word, p_, q_);
      return r.empty() ? "e" : r;
    }
    default:
      fail(Errc::invalid_argument, std::string(kind_name(kind_)) + " is not a Cayley graph");
  }
}

VertexKey GraphSpec::inverse(const VertexKey& a) const {
  VertexKey c = canonical(a);
  switch (kind_) {
    case GraphKind::line:
      return std::to_string(-parse_int(c, "line key"));
    case GraphKind::grid2d: {
      auto [x, y] = parse_grid(c);
      return grid_key(-x, -y);
    }
    case GraphKind::free_group: {
      if (c == "e") return "e";
      std::string r(c.rbegin(), c.rend());
      for (char& ch : r) ch = swap_case(ch);
      return r;
    }
    case GraphKind::free_product: {
      if (c == "e") return "e";
      std::string rev(c.rbegin(), c.rend());
      for (char& ch : rev) ch = swap_case(ch);
      std::string r = reduce_product(rev, p_, q_);
      return r.empty() ? "e" : r;
    }
    default:
      fail(Errc::invalid_argument, std::string(kind_name(kind_)) + " is not a Cayley graph");
  }
}

int GraphSpec::word_length(const VertexKey& a) const {
  VertexKey c = canonical(a);
  switch (kind_) {
    case GraphKind::line:
      return static_cast<int>(std::llabs(parse_int(c, "line key")));
    case GraphKind::grid2d: {
      auto [x, y] = parse_grid(c);
      return static_cast<int>(std::llabs(x) + std::llabs(y));
    }
    case GraphKind::free_group:
      return c == "e" ? 0 : static_cast<int>(c.size());
    case GraphKind::free_product:
      return c == "e" ? 0 : product_length(c, p_, q_);
    default:
      fail(Errc::invalid_argument, std::string(kind_name(kind_)) + " is not a Cayley graph");
  }
}

std::vector<VertexKey> GraphSpec::generators() const {
  std::vector<VertexKey> gens;
  switch (kind_) {
    case GraphKind::line:
      gens = {"1", "-1"};
      break;
    case GraphKind::grid2d:
      gens = {"(1,0)", "(-1,0)", "(0,1)", "(0,-1)"};
      break;
    case GraphKind::free_group:
      for (int i = 0; i < rank_; ++i) {
        gens.emplace_back(1, kFreeLetters[static_cast<std::size_t>(i)]);
        gens.emplace_back(1, swap_case(kFreeLetters[static_cast<std::size_t>(i)]));
      }
      break;
    case GraphKind::free_product:
      gens = {canonical("s"), canonical("S"), canonical("t"), canonical("T")};
      break;
    default:
      fail(Errc::invalid_argument, std::string(kind_name(kind_)) + " is not a Cayley graph");
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

VertexKey GraphSpec::default_basepoint() const {
  switch (kind_) {
    case GraphKind::regular_tree:
      return "e";
    case GraphKind::finite_file: {
      if (table_->empty()) fail(Errc::invalid_argument, "finite graph has no vertices");
      return table_->begin()->first;
    }
    case GraphKind::adjacency_oracle:
      fail(Errc::invalid_argument, "adjacency oracle needs an explicit basepoint");
    default:
      return identity();
  }
}

std::string GraphSpec::id() const {
  switch (kind_) {
    case GraphKind::line: return "line";
    case GraphKind::grid2d: return "grid2d";
    case GraphKind::free_group: return "free-group:" + std::to_string(rank_);
    case GraphKind::free_product:
      return "free-product:" + std::to_string(p_) + "," + std::to_string(q_);
    case GraphKind::regular_tree: return "regular-tree:" + std::to_string(degree_);
    case GraphKind::finite_file: return "finite-file:" + label_;
    case GraphKind::adjacency_oracle: return "adjacency-oracle:" + label_;
  }
  return "?";
}

std::optional<VertexId> Window::find(const VertexKey& canonical_key) const {
  auto it = index_.find(canonical_key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexId> Window::locate(const VertexKey& raw) const {
  return find(spec_.canonical(raw));
}

std::span<const std::pair<VertexId, EdgeId>> Window::adjacency(VertexId v) const {
  return {adj_flat_.data() + adj_offset_[v], adj_flat_.data() + adj_offset_[v + 1]};
}

std::optional<EdgeId> Window::edge_between(VertexId u, VertexId v) const {
  for (auto [n, e] : adjacency(u))
    if (n == v) return e;
  return std::nullopt;
}

Window materialize_window(const GraphSpec& spec, const VertexKey& basepoint, int radius,
                          const Limits& limits) {
  if (radius < 0) fail(Errc::invalid_argument, "radius must be >= 0");

  VertexKey base = spec.canonical(basepoint);
  std::unordered_map<VertexKey, VertexId> index;
  std::vector<VertexKey> keys;
  std::vector<int> dist;
  std::deque<VertexId> queue;

  auto add_vertex = [&](const VertexKey& k, int d) {
    if (keys.size() >= limits.vertex_budget)
      fail(Errc::budget_exceeded, "window exceeds vertex budget of " +
                                      std::to_string(limits.vertex_budget));
    VertexId id = static_cast<VertexId>(keys.size());
    index.emplace(k, id);
    keys.push_back(k);
    dist.push_back(d);
    return id;
  };

  queue.push_back(add_vertex(base, 0));
  std::vector<std::pair<VertexId, VertexId>> raw_edges;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    int dv = dist[v];
    auto nbrs = spec.neighbors(keys[v]);
    if (nbrs.size() > limits.degree_bound)
      fail(Errc::degree_overflow, "vertex '" + keys[v] + "' has degree " +
                                      std::to_string(nbrs.size()) + " > bound " +
                                      std::to_string(limits.degree_bound));
    for (const auto& nk : nbrs) {
      auto it = index.find(nk);
      if (it != index.end()) {
        raw_edges.emplace_back(v, it->second);
      } else if (dv < radius) {
        VertexId u = add_vertex(nk, dv + 1);
        queue.push_back(u);
        raw_edges.emplace_back(v, u);
      }
    }
  }

  // Reassign ids in (distance, key) order for deterministic iteration.
  std::vector<VertexId> order(keys.size());
  for (VertexId i = 0; i < keys.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return keys[a] < keys[b];
  });
  std::vector<VertexId> remap(keys.size());
  for (VertexId pos = 0; pos < order.size(); ++pos) remap[order[pos]] = pos;

  Window w;
  w.spec_ = spec;
  w.basepoint_ = base;
  w.radius_ = radius;
  w.keys_.resize(keys.size());
  w.dist_.resize(keys.size());
  for (VertexId i = 0; i < keys.size(); ++i) {
    w.keys_[remap[i]] = std::move(keys[i]);
    w.dist_[remap[i]] = dist[i];
  }
  w.index_.reserve(w.keys_.size());
  for (VertexId i = 0; i < w.keys_.size(); ++i) w.index_.emplace(w.keys_[i], i);

  w.edges_.reserve(raw_edges.size() / 2);
  for (auto& [a, b] : raw_edges) {
    VertexId u = remap[a], v = remap[b];
    if (u == v) continue;
    w.edges_.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(w.edges_.begin(), w.edges_.end());
  w.edges_.erase(std::unique(w.edges_.begin(), w.edges_.end()), w.edges_.end());

  // CSR adjacency carrying edge ids.
  std::vector<std::uint32_t> degree(w.keys_.size(), 0);
  for (auto& e : w.edges_) {
    ++degree[e.a];
    ++degree[e.b];
  }
  w.adj_offset_.assign(w.keys_.size() + 1, 0);
  for (VertexId i = 0; i < w.keys_.size(); ++i)
    w.adj_offset_[i + 1] = w.adj_offset_[i] + degree[i];
  w.adj_flat_.resize(w.adj_offset_.back());
  std::vector<std::uint32_t> cursor(w.adj_offset_.begin(), w.adj_offset_.end() - 1);
  for (EdgeId e = 0; e < w.edges_.size(); ++e) {
    auto [a, b] = w.edges_[e];
    w.adj_flat_[cursor[a]++] = {b, e};
    w.adj_flat_[cursor[b]++] = {a, e};
  }
  for (VertexId i = 0; i < w.keys_.size(); ++i)
    std::sort(w.adj_flat_.begin() + w.adj_offset_[i], w.adj_flat_.begin() + w.adj_offset_[i + 1]);

  int max_dist = w.dist_.empty() ? 0 : *std::max_element(w.dist_.begin(), w.dist_.end());
  w.exhausted_ = max_dist < radius;
  if (!w.exhausted_)
    for (VertexId i = 0; i < w.keys_.size(); ++i)
      if (w.dist_[i] == radius) w.frontier_.push_back(i);

  w.id_ = fnv1a_hex(spec.id() + "|" + base + "|" + std::to_string(radius));
  return w;
}

std::vector<VertexId> ball(const Window& w, std::span<const VertexId> a, int n,
                           Exactness mode) {
  if (n < 0) fail(Errc::invalid_argument, "ball radius must be >= 0");
  std::vector<char> seen(w.size(), 0);
  std::vector<VertexId> current(a.begin(), a.end());
  std::vector<VertexId> result;
  for (VertexId v : current) {
    if (v >= w.size()) fail(Errc::invalid_argument, "vertex id out of window");
    if (!seen[v]) {
      seen[v] = 1;
      result.push_back(v);
    }
  }
  for (int step = 0; step < n && !current.empty(); ++step) {
    std::vector<VertexId> next;
    for (VertexId v : current) {
      for (auto [u, e] : w.adjacency(v)) {
        (void)e;
        if (!seen[u]) {
          seen[u] = 1;
          result.push_back(u);
          next.push_back(u);
        }
      }
    }
    current = std::move(next);
  }
  if (mode == Exactness::exact)
    for (VertexId v : result)
      if (w.is_frontier(v))
        fail(Errc::horizon_escape,
             "ball reaches the window frontier at '" + w.key(v) + "'");
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace endscope
