#pragma once

// Quivers: parsing, doubling, adjacency counts and ADE classification.
//
// Vertex order everywhere is declaration order. Matrix entry (i, j) counts
// arrows from j to i. A loop contributes 2 to its diagonal entry of the
// doubled adjacency matrix (once as a, once as a*).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <string_view>
#include <vector>

#include "preproj/field.hpp"
#include "preproj/series.hpp"

namespace preproj {

struct QuiverArrow {
  std::string name;
  std::size_t tail = 0;
  std::size_t head = 0;
  bool operator==(const QuiverArrow&) const = default;
};

class Quiver {
 public:
  Quiver() = default;

  /// Validates names, endpoints, the white set and gamma keys/values.
  /// gamma keys are arrow names or arrow names with a trailing '*'.
  Quiver(std::vector<std::string> vertices, std::vector<QuiverArrow> arrows, std::vector<std::size_t> white = {},
         std::map<std::string, Rational> gamma = {})
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)), white_(vertices_.size(), 0), gamma_(std::move(gamma)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_) {
      if (v.empty()) throw InputError("empty vertex name");
      if (!seen.insert(v).second) throw InputError("duplicate vertex '" + v + "'");
    }
    std::set<std::string> names;
    for (const auto& a : arrows_) {
      if (a.name.empty() || a.name.back() == '*') throw InputError("bad arrow name '" + a.name + "'");
      if (!names.insert(a.name).second) throw InputError("duplicate arrow name '" + a.name + "'");
      if (a.tail >= vertices_.size() || a.head >= vertices_.size())
        throw InputError("arrow '" + a.name + "' has an unknown endpoint");
    }
    for (auto w : white) {
      if (w >= vertices_.size()) throw InputError("white vertex index out of range");
      white_[w] = 1;
    }
    for (const auto& [key, value] : gamma_) {
      std::string base = key;
      if (!base.empty() && base.back() == '*') base.pop_back();
      auto it = std::find_if(arrows_.begin(), arrows_.end(), [&](const auto& a) { return a.name == base; });
      if (it == arrows_.end()) throw InputError("gamma for unknown arrow '" + key + "'");
      if (is_white(it->tail) && is_white(it->head))
        throw InputError("gamma for arrow '" + key + "' which touches no black vertex");
      if (sgn(value) == 0) throw InputError("gamma for arrow '" + key + "' is zero");
    }
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<QuiverArrow>& arrows() const { return arrows_; }
  bool is_white(std::size_t v) const { return white_[v] != 0; }
  std::vector<std::size_t> white() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < white_.size(); ++v)
      if (white_[v]) out.push_back(v);
    return out;
  }
  const std::map<std::string, Rational>& gamma() const { return gamma_; }
  bool has_gamma() const { return !gamma_.empty(); }

  /// Field named by a "field:" line, if the file had one.
  const std::optional<FieldSpec>& declared_field() const { return field_; }
  void set_declared_field(std::optional<FieldSpec> f) { field_ = f; }

  std::optional<std::size_t> vertex_index(std::string_view name) const {
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (vertices_[v] == name) return v;
    return std::nullopt;
  }

  /// Same vertices and arrows with a different white set (gamma dropped).
  Quiver with_white(std::vector<std::size_t> white) const { return Quiver(vertices_, arrows_, std::move(white)); }

  /// Same quiver with gamma replaced.
  Quiver with_gamma(std::map<std::string, Rational> gamma) const {
    Quiver q(vertices_, arrows_, white(), std::move(gamma));
    q.field_ = field_;
    return q;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<QuiverArrow> arrows_;
  std::vector<std::uint8_t> white_;
  std::map<std::string, Rational> gamma_;
  std::optional<FieldSpec> field_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline Rational parse_rational(const std::string& text, std::size_t line) {
  auto bad = [&] { return InputError("line " + std::to_string(line) + ": bad number '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  auto check_int = [&](std::string_view t) {
    std::size_t k = (t.size() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (k == t.size()) throw bad();
    for (; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') throw bad();
  };
  auto num = text.substr(0, slash);
  check_int(num);
  BigInt n(num[0] == '+' ? num.substr(1) : num);
  BigInt d = 1;
  if (slash != std::string::npos) {
    auto den = text.substr(slash + 1);
    check_int(den);
    d = BigInt(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) throw bad();
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace detail

/// Parses the line-oriented quiver format:
///
///     vertices: v1 v2 ... vn
///     arrow <name>: <tail> -> <head>
///     white: vi vj ...
///     gamma <arrow or arrow*> = <num>/<den> | <integer>
///     field: q | f<p>
///
/// '#' starts a comment; ';' separates statements on one line.
inline Quiver parse_quiver(std::string_view text) {
  std::vector<std::string> vertices;
  bool have_vertices = false;
  std::vector<std::tuple<std::string, std::string, std::string, std::size_t>> raw_arrows;
  std::vector<std::pair<std::string, std::size_t>> raw_white;
  std::map<std::string, Rational> gamma;
  std::optional<FieldSpec> field;

  std::size_t lineno = 0;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::stringstream statements(line);
    std::string stmt_raw;
    while (std::getline(statements, stmt_raw, ';')) {
      std::string stmt = detail::trim(stmt_raw);
      if (stmt.empty()) continue;
      auto err = [&](const std::string& msg) { return InputError("line " + std::to_string(lineno) + ": " + msg); };
      if (stmt.rfind("vertices:", 0) == 0) {
        if (have_vertices) throw err("vertices declared twice");
        have_vertices = true;
        vertices = detail::split_ws(stmt.substr(9));
      } else if (stmt.rfind("white:", 0) == 0) {
        for (auto& w : detail::split_ws(stmt.substr(6))) raw_white.emplace_back(w, lineno);
      } else if (stmt.rfind("field:", 0) == 0) {
        auto toks = detail::split_ws(stmt.substr(6));
        if (toks.size() != 1) throw err("field declaration needs one value");
        try {
          field = FieldSpec::parse(toks[0]);
        } catch (const InputError& e) {
          throw err(e.what());
        }
      } else if (stmt.rfind("arrow", 0) == 0 && stmt.size() > 5 && (stmt[5] == ' ' || stmt[5] == '\t')) {
        auto colon = stmt.find(':');
        auto arrow = stmt.find("->");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
          throw err("expected 'arrow <name>: <tail> -> <head>'");
        auto name = detail::trim(stmt.substr(5, colon - 5));
        auto tail = detail::split_ws(stmt.substr(colon + 1, arrow - colon - 1));
        auto head = detail::split_ws(stmt.substr(arrow + 2));
        if (name.empty() || tail.size() != 1 || head.size() != 1 || name.find(' ') != std::string::npos)
          throw err("expected 'arrow <name>: <tail> -> <head>'");
        raw_arrows.emplace_back(name, tail[0], head[0], lineno);
      } else if (stmt.rfind("gamma", 0) == 0 && stmt.size() > 5 && (stmt[5] == ' ' || stmt[5] == '\t')) {
        auto eq = stmt.find('=');
        if (eq == std::string::npos) throw err("expected 'gamma <arrow> = <value>'");
        auto key = detail::split_ws(stmt.substr(5, eq - 5));
        auto val = detail::split_ws(stmt.substr(eq + 1));
        if (key.size() != 1 || val.size() != 1) throw err("expected 'gamma <arrow> = <value>'");
        if (gamma.count(key[0])) throw err("gamma for '" + key[0] + "' given twice");
        gamma[key[0]] = detail::parse_rational(val[0], lineno);
      } else {
        throw err("unrecognised statement '" + stmt + "'");
      }
    }
  }
  if (!have_vertices) throw InputError("missing 'vertices:' line");

  auto index_of = [&](const std::string& name, std::size_t line) {
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (vertices[v] == name) return v;
    throw InputError("line " + std::to_string(line) + ": unknown vertex '" + name + "'");
  };
  std::vector<QuiverArrow> arrows;
  for (const auto& [name, tail, head, line] : raw_arrows) arrows.push_back({name, index_of(tail, line), index_of(head, line)});
  std::vector<std::size_t> white;
  for (const auto& [name, line] : raw_white) white.push_back(index_of(name, line));
  Quiver q(std::move(vertices), std::move(arrows), std::move(white), std::move(gamma));
  q.set_declared_field(field);
  return q;
}

inline std::string to_text(const Quiver& q) {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& v : q.vertices()) os << ' ' << v;
  os << '\n';
  for (const auto& a : q.arrows()) os << "arrow " << a.name << ": " << q.vertices()[a.tail] << " -> " << q.vertices()[a.head] << '\n';
  if (auto w = q.white(); !w.empty()) {
    os << "white:";
    for (auto v : w) os << ' ' << q.vertices()[v];
    os << '\n';
  }
  for (const auto& [k, v] : q.gamma()) os << "gamma " << k << " = " << v.get_str() << '\n';
  if (q.declared_field()) os << "field: " << q.declared_field()->to_string() << '\n';
  return os.str();
}

/// Arrows of the double: the arrows of Q in order, then a* for each a in the
/// same order. star(k) maps an index to its partner.
struct DoubleQuiver {
  Quiver base;
  std::vector<QuiverArrow> arrows;

  std::size_t original_count() const { return base.arrows().size(); }
  bool is_star(std::size_t k) const { return k >= original_count(); }
  std::size_t star(std::size_t k) const { return is_star(k) ? k - original_count() : k + original_count(); }
};

inline DoubleQuiver double_quiver(const Quiver& q) {
  DoubleQuiver d{q, q.arrows()};
  for (const auto& a : q.arrows()) d.arrows.push_back({a.name + "*", a.head, a.tail});
  return d;
}

/// C_{ij} = number of arrows of the double from j to i.
inline IntMatrix adjacency_double(const Quiver& q) {
  IntMatrix c(q.vertex_count());
  for (const auto& a : q.arrows()) {
    c(a.head, a.tail) += 1;
    c(a.tail, a.head) += 1;
  }
  return c;
}

/// D_J: 1 on the diagonal at black vertices, 0 at white ones.
inline IntMatrix relation_count_matrix(const Quiver& q) {
  IntMatrix d(q.vertex_count());
  for (std::size_t v = 0; v < q.vertex_count(); ++v) d(v, v) = q.is_white(v) ? 0 : 1;
  return d;
}

// ---- classification ----

struct DynkinType {
  enum class Family { A, D, E, AffineA, AffineD, AffineE };
  Family family = Family::A;
  std::size_t index = 0;

  bool affine() const { return family == Family::AffineA || family == Family::AffineD || family == Family::AffineE; }
  bool operator==(const DynkinType&) const = default;

  std::string name() const {
    switch (family) {
      case Family::A: return "A_" + std::to_string(index);
      case Family::D: return "D_" + std::to_string(index);
      case Family::E: return "E_" + std::to_string(index);
      case Family::AffineA: return "Ã_" + std::to_string(index);
      case Family::AffineD: return "D̃_" + std::to_string(index);
      case Family::AffineE: return "Ẽ_" + std::to_string(index);
    }
    return "?";
  }
};

struct Classification {
  enum class Verdict { Dynkin, ExtendedDynkin, OtherNonDynkin };
  bool connected = false;
  /// Only set for connected quivers.
  std::optional<Verdict> verdict;
  /// Set for Dynkin and extended Dynkin verdicts.
  std::optional<DynkinType> type;

  bool operator==(const Classification&) const = default;

  std::string describe() const {
    if (!connected) return "disconnected";
    switch (*verdict) {
      case Verdict::Dynkin: return "connected, Dynkin (" + type->name() + ")";
      case Verdict::ExtendedDynkin: return "connected, extended Dynkin (" + type->name() + ")";
      case Verdict::OtherNonDynkin: return "connected, non-Dynkin (not extended Dynkin)";
    }
    return "?";
  }
};

namespace detail {

// Undirected multigraph view: neighbour lists with arrow ids.
struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;  // (neighbour, arrow)
  std::size_t loops = 0;
  std::size_t edges = 0;

  explicit Graph(const Quiver& q) : n(q.vertex_count()), adj(n) {
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
      const auto& a = q.arrows()[k];
      ++edges;
      if (a.tail == a.head) {
        ++loops;
        adj[a.tail].emplace_back(a.tail, k);
        continue;
      }
      adj[a.tail].emplace_back(a.head, k);
      adj[a.head].emplace_back(a.tail, k);
    }
  }

  std::size_t degree(std::size_t v) const { return adj[v].size(); }

  bool connected() const {
    if (n == 0) return false;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto [w, k] : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  }

  std::optional<std::size_t> parallel_pair_arrow(std::size_t& other) const {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> first;
    for (std::size_t v = 0; v < n; ++v)
      for (auto [w, k] : adj[v]) {
        if (v >= w) continue;
        auto [it, fresh] = first.emplace(std::make_pair(v, w), k);
        if (!fresh && it->second != k) {
          other = it->second;
          return k;
        }
      }
    return std::nullopt;
  }

  // Number of vertices on the arm leaving `centre` through `first`, walking
  // along degree-2 vertices.
  std::vector<std::size_t> arm(std::size_t centre, std::size_t first) const {
    std::vector<std::size_t> path{first};
    std::size_t prev = centre, cur = first;
    while (degree(cur) == 2) {
      std::size_t next = adj[cur][0].first == prev ? adj[cur][1].first : adj[cur][0].first;
      prev = cur;
      cur = next;
      path.push_back(cur);
    }
    return path;
  }
};

}  // namespace detail

/// Classification by the underlying undirected multigraph. Any loop or
/// multiple edge makes a graph non-Dynkin; a single loop on one vertex is
/// the extended type Ã_0 and a double edge on two vertices is Ã_1.
inline Classification classify(const Quiver& q) {
  using V = Classification::Verdict;
  using Fam = DynkinType::Family;
  detail::Graph g(q);
  Classification out;
  out.connected = g.connected();
  if (!out.connected) return out;
  auto set = [&](V v, std::optional<DynkinType> t = std::nullopt) {
    out.verdict = v;
    out.type = t;
    return out;
  };
  const std::size_t n = g.n;
  if (g.loops > 0) return (n == 1 && g.edges == 1) ? set(V::ExtendedDynkin, DynkinType{Fam::AffineA, 0}) : set(V::OtherNonDynkin);
  std::size_t other = 0;
  if (g.parallel_pair_arrow(other))
    return (n == 2 && g.edges == 2) ? set(V::ExtendedDynkin, DynkinType{Fam::AffineA, 1}) : set(V::OtherNonDynkin);
  if (g.edges >= n) {
    // Simple connected graph with a cycle: extended only if it is the cycle.
    return g.edges == n && std::all_of(g.adj.begin(), g.adj.end(), [](const auto& a) { return a.size() == 2; })
               ? set(V::ExtendedDynkin, DynkinType{Fam::AffineA, n - 1})
               : set(V::OtherNonDynkin);
  }
  // Tree.
  std::vector<std::size_t> branch;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.degree(v) >= 5) return set(V::OtherNonDynkin);
    if (g.degree(v) >= 3) branch.push_back(v);
  }
  if (branch.empty()) return set(V::Dynkin, DynkinType{Fam::A, n});
  if (branch.size() == 1 && g.degree(branch[0]) == 4) {
    bool leaves = std::all_of(g.adj[branch[0]].begin(), g.adj[branch[0]].end(), [&](auto e) { return g.degree(e.first) == 1; });
    return leaves ? set(V::ExtendedDynkin, DynkinType{Fam::AffineD, 4}) : set(V::OtherNonDynkin);
  }
  if (branch.size() == 2) {
    if (g.degree(branch[0]) != 3 || g.degree(branch[1]) != 3) return set(V::OtherNonDynkin);
    // Each branch vertex needs two leaf neighbours.
    for (auto b : branch) {
      std::size_t leaves = 0;
      for (auto [w, k] : g.adj[b]) leaves += g.degree(w) == 1;
      if (leaves < 2) return set(V::OtherNonDynkin);
    }
    return set(V::ExtendedDynkin, DynkinType{Fam::AffineD, n - 1});
  }
  if (branch.size() > 2) return set(V::OtherNonDynkin);
  std::vector<std::size_t> arms;
  for (auto [w, k] : g.adj[branch[0]]) arms.push_back(g.arm(branch[0], w).size());
  std::sort(arms.begin(), arms.end());
  const auto p = arms[0], qq = arms[1], r = arms[2];
  if (p == 1 && qq == 1) return set(V::Dynkin, DynkinType{Fam::D, n});
  if (p == 1 && qq == 2 && r <= 4) return set(V::Dynkin, DynkinType{Fam::E, n});
  if (p == 2 && qq == 2 && r == 2) return set(V::ExtendedDynkin, DynkinType{Fam::AffineE, 6});
  if (p == 1 && qq == 3 && r == 3) return set(V::ExtendedDynkin, DynkinType{Fam::AffineE, 7});
  if (p == 1 && qq == 2 && r == 5) return set(V::ExtendedDynkin, DynkinType{Fam::AffineE, 8});
  return set(V::OtherNonDynkin);
}

/// Vertex and arrow subsets (indices into the parent quiver, ascending).
struct Subquiver {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> arrows;

  Quiver as_quiver(const Quiver& parent) const {
    std::vector<std::string> names;
    std::map<std::size_t, std::size_t> remap;
    for (auto v : vertices) {
      remap[v] = names.size();
      names.push_back(parent.vertices()[v]);
    }
    std::vector<QuiverArrow> arrs;
    for (auto k : arrows) {
      const auto& a = parent.arrows()[k];
      arrs.push_back({a.name, remap.at(a.tail), remap.at(a.head)});
    }
    return Quiver(std::move(names), std::move(arrs));
  }
};

/// An extended Dynkin subquiver of a connected non-Dynkin quiver. Arrows
/// between selected vertices may be left out of the subquiver.
inline Subquiver find_extended_dynkin_subquiver(const Quiver& q) {
  auto cls = classify(q);
  if (!cls.connected) throw InputError("find_extended_dynkin_subquiver needs a connected quiver");
  if (*cls.verdict == Classification::Verdict::Dynkin) throw InputError("quiver is Dynkin; it has no extended Dynkin subquiver");
  detail::Graph g(q);
  auto finish = [](std::vector<std::size_t> vs, std::vector<std::size_t> as) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::sort(as.begin(), as.end());
    return Subquiver{std::move(vs), std::move(as)};
  };
  // Self-loop.
  for (std::size_t k = 0; k < q.arrows().size(); ++k)
    if (q.arrows()[k].tail == q.arrows()[k].head) return finish({q.arrows()[k].tail}, {k});
  // Parallel pair.
  std::size_t other = 0;
  if (auto k = g.parallel_pair_arrow(other)) return finish({q.arrows()[*k].tail, q.arrows()[*k].head}, {other, *k});
  // Shortest undirected cycle (simple graph): for each edge u-v, the shortest
  // u-v path avoiding it.
  if (g.edges >= g.n) {
    std::optional<Subquiver> best;
    for (std::size_t e = 0; e < q.arrows().size(); ++e) {
      const auto u = q.arrows()[e].tail, v = q.arrows()[e].head;
      std::vector<std::int64_t> dist(g.n, -1);
      std::vector<std::size_t> parent(g.n), parent_arrow(g.n);
      std::vector<std::size_t> queue{u};
      dist[u] = 0;
      for (std::size_t h = 0; h < queue.size(); ++h)
        for (auto [w, k] : g.adj[queue[h]])
          if (k != e && dist[w] < 0) {
            dist[w] = dist[queue[h]] + 1;
            parent[w] = queue[h];
            parent_arrow[w] = k;
            queue.push_back(w);
          }
      if (dist[v] < 0) continue;
      std::vector<std::size_t> vs{v}, as{e};
      for (auto x = v; x != u; x = parent[x]) {
        as.push_back(parent_arrow[x]);
        vs.push_back(parent[x]);
      }
      if (!best || vs.size() < best->vertices.size()) best = finish(vs, as);
    }
    if (best) return *best;
  }
  // Tree from here on.
  auto arrow_between = [&](std::size_t u, std::size_t v) {
    for (auto [w, k] : g.adj[u])
      if (w == v) return k;
    throw std::logic_error("missing edge");
  };
  for (std::size_t v = 0; v < g.n; ++v)
    if (g.degree(v) >= 4) {
      std::vector<std::size_t> vs{v}, as;
      for (std::size_t t = 0; t < 4; ++t) {
        vs.push_back(g.adj[v][t].first);
        as.push_back(g.adj[v][t].second);
      }
      return finish(vs, as);
    }
  std::vector<std::size_t> branch;
  for (std::size_t v = 0; v < g.n; ++v)
    if (g.degree(v) == 3) branch.push_back(v);
  if (branch.size() >= 2) {
    // Closest pair of branch vertices: path between them has no other branch vertex.
    std::optional<std::vector<std::size_t>> best_path;
    for (auto s : branch) {
      std::vector<std::int64_t> dist(g.n, -1);
      std::vector<std::size_t> parent(g.n);
      std::vector<std::size_t> queue{s};
      dist[s] = 0;
      for (std::size_t h = 0; h < queue.size(); ++h)
        for (auto [w, k] : g.adj[queue[h]])
          if (dist[w] < 0) {
            dist[w] = dist[queue[h]] + 1;
            parent[w] = queue[h];
            queue.push_back(w);
          }
      for (auto t : branch) {
        if (t == s) continue;
        std::vector<std::size_t> path{t};
        while (path.back() != s) path.push_back(parent[path.back()]);
        if (!best_path || path.size() < best_path->size()) best_path = path;
      }
    }
    auto path = *best_path;
    std::vector<std::size_t> vs(path.begin(), path.end()), as;
    for (std::size_t t = 0; t + 1 < path.size(); ++t) as.push_back(arrow_between(path[t], path[t + 1]));
    for (auto end : {path.front(), path.back()}) {
      std::size_t inner = end == path.front() ? path[1] : path[path.size() - 2];
      for (auto [w, k] : g.adj[end])
        if (w != inner) {
          vs.push_back(w);
          as.push_back(k);
        }
    }
    return finish(vs, as);
  }
  if (branch.size() == 1) {
    const auto c = branch[0];
    std::vector<std::vector<std::size_t>> arms;
    for (auto [w, k] : g.adj[c]) arms.push_back(g.arm(c, w));
    std::sort(arms.begin(), arms.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
    std::vector<std::size_t> lengths;
    if (arms[0].size() >= 2)
      lengths = {2, 2, 2};
    else if (arms[1].size() >= 3)
      lengths = {1, 3, 3};
    else if (arms[1].size() == 2 && arms[2].size() >= 5)
      lengths = {1, 2, 5};
    if (!lengths.empty()) {
      std::vector<std::size_t> vs{c}, as;
      for (std::size_t t = 0; t < 3; ++t) {
        std::size_t prev = c;
        for (std::size_t s = 0; s < lengths[t]; ++s) {
          vs.push_back(arms[t][s]);
          as.push_back(arrow_between(prev, arms[t][s]));
          prev = arms[t][s];
        }
      }
      return finish(vs, as);
    }
  }
  throw std::logic_error("no extended Dynkin subquiver found in a non-Dynkin quiver");
}

}  // namespace preproj
