#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "slp/signal.hpp"

namespace slp {

/// Undirected weighted edge as it appears in the input edge list.
struct WeightedPair {
  std::size_t i;
  std::size_t j;
  double weight;

  bool operator==(const WeightedPair&) const = default;
};

struct OrientedEdge {
  std::size_t head;
  std::size_t tail;
  double weight;
};

/// One entry of a node's adjacency index. `is_head` tells whether the node is
/// the head (N+) or the tail (N-) of `edge`.
struct Incidence {
  std::size_t edge;
  std::size_t neighbor;
  bool is_head;
};

enum class Orientation {
  Canonical,  // head = min(i, j)
  AsGiven,    // head = i, tail = j as listed
};

/// Connected, loop-free weighted graph with a fixed edge orientation.
///
/// Edges are stored sorted by their (min, max) node pair regardless of the
/// orientation, so edge indices do not depend on orientation. Per-node
/// incidence lists are sorted by edge index; every reduction over a
/// neighbourhood walks them in that order.
///
/// Immutable after construction.
class EmpiricalGraph {
 public:
  /// Validates and builds the graph. `num_nodes` overrides the node count
  /// that would otherwise be inferred as 1 + max index.
  ///
  /// Throws GraphError naming the offending input element.
  static EmpiricalGraph build(std::span<const WeightedPair> edges,
                              std::optional<std::size_t> num_nodes = std::nullopt,
                              Orientation orientation = Orientation::Canonical);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const OrientedEdge> edges() const noexcept { return edges_; }
  const OrientedEdge& edge(std::size_t e) const { return edges_.at(e); }

  std::span<const Incidence> incidences(std::size_t node) const;

  double degree(std::size_t node) const { return degrees_.at(node); }
  std::span<const double> degrees() const noexcept { return degrees_; }
  double max_degree() const noexcept { return max_degree_; }

  /// Same graph with the orientation of the listed edges reversed.
  EmpiricalGraph with_flipped(std::span<const std::size_t> edge_ids) const;

  /// Undirected pairs with their weights, in edge order and orientation.
  std::vector<WeightedPair> edge_list() const;

 private:
  EmpiricalGraph() = default;
  void index();

  std::size_t num_nodes_ = 0;
  std::vector<OrientedEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidences_;
  std::vector<double> degrees_;
  double max_degree_ = 0.0;
};

inline EmpiricalGraph build_graph(std::span<const WeightedPair> edges,
                                  std::optional<std::size_t> num_nodes = std::nullopt,
                                  Orientation orientation = Orientation::Canonical) {
  return EmpiricalGraph::build(edges, num_nodes, orientation);
}

/// d_i: sum of the weights of the edges incident to node i.
double weighted_degree(const EmpiricalGraph& g, std::size_t node);
double max_degree(const EmpiricalGraph& g);

/// (Dx)[e] = W_e (x[head] - x[tail]); D is never materialized.
EdgeSignal apply_incidence(const EmpiricalGraph& g, const NodeSignal& x);

/// D^T y, accumulated per node over its incidence list in edge order.
NodeSignal apply_incidence_adjoint(const EmpiricalGraph& g, const EdgeSignal& y);

/// Graph total variation: sum over edges of W_e |x[tail] - x[head]|.
/// Bit-identical to l1_norm(apply_incidence(g, x)).
double tv_norm(const EmpiricalGraph& g, const NodeSignal& x);

double l1_norm(const EdgeSignal& y);

/// Hop distance of every node to the nearest source (multi-source BFS).
std::vector<std::size_t> hop_distances(const EmpiricalGraph& g,
                                       std::span<const std::size_t> sources);

}  // namespace slp
