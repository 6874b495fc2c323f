#include "plumb/plumbing.hpp"

#include "plumb/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace plumb {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

PlumbingGraph::PlumbingGraph(std::vector<Vertex> vertices,
                             std::vector<std::pair<std::size_t, std::size_t>> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw PreconditionError("plumbing graph has no vertices");
  std::set<std::string> ids;
  for (const auto& v : vertices_) {
    if (v.id.empty()) throw PreconditionError("empty vertex id");
    if (!ids.insert(v.id).second) throw PreconditionError("duplicate vertex id '" + v.id + "'");
  }
  DisjointSets components(vertices_.size());
  for (const auto& [a, b] : edges_) {
    if (a >= vertices_.size() || b >= vertices_.size())
      throw PreconditionError("edge endpoint out of range");
    if (a == b) throw PreconditionError("not a tree: self-loop at '" + vertices_[a].id + "'");
    if (!components.unite(a, b))
      throw PreconditionError("not a tree: edge " + vertices_[a].id + "-" + vertices_[b].id +
                              " closes a cycle");
  }
  for (std::size_t v = 1; v < vertices_.size(); ++v)
    if (components.find(v) != components.find(0))
      throw PreconditionError("not a tree: vertex '" + vertices_[v].id +
                              "' is disconnected from '" + vertices_[0].id + "'");
}

std::optional<std::size_t> PlumbingGraph::find(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  return std::nullopt;
}

std::size_t PlumbingGraph::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw PreconditionError("unknown vertex '" + std::string(id) + "'");
}

std::vector<std::size_t> PlumbingGraph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  return out;
}

int PlumbingGraph::degree(std::size_t v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [v](const auto& e) { return e.first == v || e.second == v; }));
}

bool PlumbingGraph::adjacent(std::size_t a, std::size_t b) const {
  return std::any_of(edges_.begin(), edges_.end(), [a, b](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

bool PlumbingGraph::same_as(const PlumbingGraph& other) const {
  if (size() != other.size() || edges_.size() != other.edges_.size()) return false;
  for (const auto& v : vertices_) {
    auto j = other.find(v.id);
    if (!j || other.vertices_[*j].weight != v.weight) return false;
  }
  for (const auto& [a, b] : edges_) {
    if (!other.adjacent(other.index_of(vertices_[a].id), other.index_of(vertices_[b].id)))
      return false;
  }
  return true;
}

std::string PlumbingGraph::to_dsl() const {
  std::ostringstream out;
  for (const auto& v : vertices_) out << "v " << v.id << ' ' << v.weight << ";\n";
  for (const auto& [a, b] : edges_) out << "e " << vertices_[a].id << ' ' << vertices_[b].id << ";\n";
  return out.str();
}

PlumbingGraph parse_graph(std::string_view text) {
  struct Token {
    std::string text;
    std::size_t line, column;
  };
  std::vector<std::vector<Token>> statements(1);
  std::size_t line = 1, column = 1;
  std::string current;
  std::size_t tok_line = 0, tok_col = 0;
  bool in_comment = false;

  auto flush_token = [&] {
    if (!current.empty()) statements.back().push_back({current, tok_line, tok_col});
    current.clear();
  };
  auto end_statement = [&] {
    flush_token();
    if (!statements.back().empty()) statements.emplace_back();
  };

  for (char c : text) {
    if (in_comment) {
      if (c == '\n') {
        in_comment = false;
        end_statement();
      }
    } else if (c == '#') {
      flush_token();
      in_comment = true;
    } else if (c == ';' || c == '\n') {
      end_statement();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush_token();
    } else {
      if (current.empty()) {
        tok_line = line;
        tok_col = column;
      }
      current.push_back(c);
    }
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  end_statement();

  std::vector<Vertex> vertices;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::pair<const Token*, const Token*>> pending_edges;

  auto declare_vertex = [&](const Token& id, const Token& weight) {
    auto w = parse_int(weight.text);
    if (!w) throw ParseError("expected integer weight, got '" + weight.text + "'", weight.line, weight.column);
    if (index.count(id.text)) throw ParseError("duplicate vertex '" + id.text + "'", id.line, id.column);
    index[id.text] = vertices.size();
    vertices.push_back({id.text, *w});
  };

  for (const auto& st : statements) {
    if (st.empty()) continue;
    if (st.size() == 3 && st[0].text == "e") {
      pending_edges.emplace_back(&st[1], &st[2]);
    } else if (st.size() == 3 && st[0].text == "v") {
      declare_vertex(st[1], st[2]);
    } else if (st.size() == 2 && parse_int(st[1].text)) {
      declare_vertex(st[0], st[1]);
    } else {
      throw ParseError("unrecognized statement starting with '" + st[0].text + "'", st[0].line,
                       st[0].column);
    }
  }
  for (const auto& [a, b] : pending_edges) {
    auto ia = index.find(a->text);
    if (ia == index.end()) throw ParseError("edge references unknown vertex '" + a->text + "'", a->line, a->column);
    auto ib = index.find(b->text);
    if (ib == index.end()) throw ParseError("edge references unknown vertex '" + b->text + "'", b->line, b->column);
    for (const auto& [x, y] : edges)
      if ((x == ia->second && y == ib->second) || (x == ib->second && y == ia->second))
        throw PreconditionError("not a tree: repeated edge " + a->text + "-" + b->text);
    edges.emplace_back(ia->second, ib->second);
  }
  if (vertices.empty()) throw ParseError("no vertices declared");
  return PlumbingGraph(std::move(vertices), std::move(edges));
}

std::string_view role_name(VertexRole role) {
  switch (role) {
    case VertexRole::Node: return "node";
    case VertexRole::Leaf: return "leaf";
    case VertexRole::Joint: return "joint";
    case VertexRole::Isolated: return "isolated";
  }
  return "?";
}

VertexClassification classify_and_order(const PlumbingGraph& g) {
  auto role_of = [](int d) {
    if (d >= 3) return VertexRole::Node;
    if (d == 1) return VertexRole::Leaf;
    if (d == 2) return VertexRole::Joint;
    return VertexRole::Isolated;
  };
  VertexClassification out;
  for (VertexRole wanted : {VertexRole::Node, VertexRole::Leaf, VertexRole::Joint, VertexRole::Isolated}) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      const int d = g.degree(v);
      if (role_of(d) != wanted) continue;
      out.order.push_back(v);
      out.degrees.push_back(d);
      out.roles.push_back(wanted);
    }
  }
  return out;
}

Eigen::Index PlumbingMatrix::position_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<Eigen::Index>(i);
  throw PreconditionError("unknown vertex '" + std::string(id) + "'");
}

PlumbingMatrix plumbing_matrix(const PlumbingGraph& g, const VertexClassification& cls) {
  const auto s = static_cast<Eigen::Index>(cls.order.size());
  if (static_cast<std::size_t>(s) != g.size()) throw PreconditionError("vertex order does not cover the graph");
  PlumbingMatrix pm;
  pm.entries = IntMatrix::Zero(s, s);
  pm.weights = IntVector(s);
  pm.degrees = IntVector(s);
  pm.ones = IntVector::Ones(s);
  pm.roles = cls.roles;
  for (Eigen::Index i = 0; i < s; ++i) {
    const auto vi = cls.order[static_cast<std::size_t>(i)];
    pm.ids.push_back(g.vertices()[vi].id);
    pm.weights(i) = g.vertices()[vi].weight;
    pm.degrees(i) = cls.degrees[static_cast<std::size_t>(i)];
    pm.entries(i, i) = g.vertices()[vi].weight;
    for (Eigen::Index j = 0; j < s; ++j)
      if (i != j && g.adjacent(vi, cls.order[static_cast<std::size_t>(j)])) pm.entries(i, j) = 1;
  }
  return pm;
}

PlumbingMatrix plumbing_matrix(const PlumbingGraph& g) { return plumbing_matrix(g, classify_and_order(g)); }

bool is_negative_definite(const IntMatrix& m) {
  const IntMatrix neg = -m;
  for (const auto& minor : leading_principal_minors(neg))
    if (minor <= 0) return false;
  return true;
}

AdjugateData det_and_adjugate(const IntMatrix& m) {
  const Integer det = bareiss_determinant(m);
  IntMatrix adj = adjugate(m);
  const IntMatrix check = m * adj;
  if (check != IntMatrix(det * IntMatrix::Identity(m.rows(), m.cols())))
    throw ConsistencyError("M * adj(M) != det(M) * I");
  if (m.rows() % 2 == 1) adj = -adj;
  return {det, det < 0 ? Integer(-det) : det, adj};
}

std::vector<SpinCClass> enumerate_spinc(const IntMatrix& m, const IntVector& degrees) {
  if (bareiss_determinant(m) == 0) throw PreconditionError("plumbing matrix is singular");
  // Z^s / M Z^s ~ (+) Z/d_i via U M V = D; coset representatives U^{-1} y, 0 <= y_i < d_i.
  const auto snf = smith_normal_form(m);
  const IntMatrix u_inv = adjugate(snf.u) * bareiss_determinant(snf.u);  // det U = +-1
  const auto factors = snf.invariant_factors();
  const auto s = m.rows();
  std::vector<SpinCClass> classes;
  IntVector y = IntVector::Zero(s);
  while (true) {
    classes.push_back({IntVector(degrees + 2 * (u_inv * y)), classes.size()});
    Eigen::Index i = 0;
    for (; i < s; ++i) {
      y(i) += 1;
      if (y(i) < factors[static_cast<std::size_t>(i)]) break;
      y(i) = 0;
    }
    if (i == s) break;
  }
  return classes;
}

bool coset_membership(const IntVector& l, const SpinCClass& cls, const IntMatrix& m,
                      const IntVector& degrees) {
  for (Eigen::Index i = 0; i < l.size(); ++i)
    if ((l(i) - degrees(i)) % 2 != 0) throw PreconditionError("wrong parity: l is not congruent to delta mod 2");
  const IntVector diff = l - cls.representative;
  RatVector half(diff.size());
  for (Eigen::Index i = 0; i < diff.size(); ++i) half(i) = Rational(diff(i), Integer(2));
  const RatVector x = exact_solve(to_rational(m), half);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!is_integer(x(i))) return false;
  return true;
}

PlumbingGraph neumann_move(const PlumbingGraph& g, NeumannMove kind, const MoveSite& site) {
  std::vector<Vertex> vertices = g.vertices();
  auto edges = g.edges();
  auto fresh_id = [&] {
    for (std::size_t k = vertices.size();; ++k) {
      std::string id = "x" + std::to_string(k);
      if (!g.find(id)) return id;
    }
  };
  auto locate = [&](const std::string& id) {
    if (auto i = g.find(id)) return *i;
    throw PreconditionError("invalid site: unknown vertex '" + id + "'");
  };

  switch (kind) {
    case NeumannMove::BlowupLeaf: {
      const auto v = locate(site.vertex);
      vertices[v].weight -= 1;
      vertices.push_back({fresh_id(), -1});
      edges.emplace_back(v, vertices.size() - 1);
      break;
    }
    case NeumannMove::BlowupEdge: {
      const auto v = locate(site.vertex);
      const auto w = locate(site.other);
      auto it = std::find_if(edges.begin(), edges.end(), [v, w](const auto& e) {
        return (e.first == v && e.second == w) || (e.first == w && e.second == v);
      });
      if (it == edges.end())
        throw PreconditionError("invalid site: no edge " + site.vertex + "-" + site.other);
      edges.erase(it);
      vertices[v].weight -= 1;
      vertices[w].weight -= 1;
      vertices.push_back({fresh_id(), -1});
      edges.emplace_back(v, vertices.size() - 1);
      edges.emplace_back(vertices.size() - 1, w);
      break;
    }
    case NeumannMove::Blowdown: {
      const auto x = locate(site.vertex);
      const auto e = vertices[x].weight;
      if (e != 1 && e != -1)
        throw PreconditionError("invalid site: blowdown needs weight +-1 at '" + site.vertex + "'");
      const auto nbrs = g.neighbors(x);
      if (nbrs.empty() || nbrs.size() > 2)
        throw PreconditionError("invalid site: blowdown needs degree 1 or 2 at '" + site.vertex + "'");
      for (auto n : nbrs) vertices[n].weight -= e;
      std::vector<std::pair<std::size_t, std::size_t>> kept;
      for (const auto& [a, b] : edges)
        if (a != x && b != x) kept.emplace_back(a, b);
      if (nbrs.size() == 2) kept.emplace_back(nbrs[0], nbrs[1]);
      // reindex past the removed vertex
      for (auto& [a, b] : kept) {
        if (a > x) --a;
        if (b > x) --b;
      }
      vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(x));
      edges = std::move(kept);
      break;
    }
  }
  return PlumbingGraph(std::move(vertices), std::move(edges));
}

}  // namespace plumb
