#pragma once

// Plumbing trees, their intersection matrices, spin^c cosets and the
// blow-up/blow-down calculus on negative definite plumbings.

#include "plumb/exact_linalg.hpp"
#include "plumb/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plumb {

struct Vertex {
  std::string id;
  std::int64_t weight = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Weighted tree. Edges are stored as index pairs into vertices().
class PlumbingGraph {
 public:
  PlumbingGraph() = default;
  /// Validates ids and the tree property; throws PreconditionError.
  PlumbingGraph(std::vector<Vertex> vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // throws PreconditionError
  std::vector<std::size_t> neighbors(std::size_t v) const;
  int degree(std::size_t v) const;
  bool adjacent(std::size_t a, std::size_t b) const;

  /// Same vertex set (ids and weights) and same edge set, in any order.
  bool same_as(const PlumbingGraph& other) const;
  /// DSL text that parse_graph maps back to this graph.
  std::string to_dsl() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Statements separated by ';' or newlines, '#' comments:
///   v <id> <weight>   or   <id> <weight>   declares a vertex
///   e <id> <id>                            declares an edge
PlumbingGraph parse_graph(std::string_view text);

enum class VertexRole { Node, Leaf, Joint, Isolated };

std::string_view role_name(VertexRole role);

struct VertexClassification {
  std::vector<std::size_t> order;  // graph vertex indices: nodes, leaves, joints, isolated
  std::vector<int> degrees;        // degrees[i] belongs to order[i]
  std::vector<VertexRole> roles;   // roles[i] belongs to order[i]
};

VertexClassification classify_and_order(const PlumbingGraph& g);

struct PlumbingMatrix {
  IntMatrix entries;
  IntVector weights;
  IntVector degrees;
  IntVector ones;
  std::vector<VertexRole> roles;
  std::vector<std::string> ids;  // ids[i] labels row/column i

  Eigen::Index size() const noexcept { return entries.rows(); }
  Eigen::Index position_of(std::string_view id) const;
};

PlumbingMatrix plumbing_matrix(const PlumbingGraph& g, const VertexClassification& order);
PlumbingMatrix plumbing_matrix(const PlumbingGraph& g);

/// Sylvester's criterion on -M with exact minors.
bool is_negative_definite(const IntMatrix& m);

struct AdjugateData {
  Integer det;
  Integer order;        // |det M| = |H_1|
  IntMatrix adjugate;   // (-1)^s adj(M)
};

/// Checks M * adj(M) = det(M) * I before returning.
AdjugateData det_and_adjugate(const IntMatrix& m);

struct SpinCClass {
  IntVector representative;  // in delta + 2 Z^s
  std::size_t index = 0;
};

/// The |det M| cosets of (delta + 2Z^s) / (2M Z^s).
std::vector<SpinCClass> enumerate_spinc(const IntMatrix& m, const IntVector& degrees);

/// True iff l - representative lies in 2M Z^s. Throws PreconditionError on parity mismatch.
bool coset_membership(const IntVector& l, const SpinCClass& cls, const IntMatrix& m,
                      const IntVector& degrees);

enum class NeumannMove { BlowupLeaf, BlowupEdge, Blowdown };

struct MoveSite {
  std::string vertex;
  std::string other;  // second endpoint, BlowupEdge only
};

/// BlowupLeaf: new (-1)-leaf on `vertex`, whose weight drops by one.
/// BlowupEdge: (-1)-vertex inserted on an edge, both endpoints drop by one.
/// Blowdown: removes a (+-1)-vertex of degree 1 or 2, inverting the above.
PlumbingGraph neumann_move(const PlumbingGraph& g, NeumannMove kind, const MoveSite& site);

}  // namespace plumb
