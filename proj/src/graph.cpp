#include "slp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <tuple>

namespace slp {

namespace {

std::string pair_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw SizeMismatch(std::string(what) + ": expected length " + std::to_string(want) +
                       ", got " + std::to_string(got));
  }
}

}  // namespace

EmpiricalGraph EmpiricalGraph::build(std::span<const WeightedPair> input,
                                     std::optional<std::size_t> num_nodes,
                                     Orientation orientation) {
  using Kind = GraphError::Kind;

  std::size_t inferred = 0;
  for (const auto& p : input) inferred = std::max({inferred, p.i + 1, p.j + 1});
  const std::size_t n = num_nodes.value_or(inferred);
  if (n < 2) {
    throw GraphError(Kind::TooFewNodes,
                     "graph needs at least 2 nodes, got " + std::to_string(n));
  }

  struct Keyed {
    std::size_t lo, hi;
    OrientedEdge edge;
    std::size_t position;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(input.size());
  for (std::size_t k = 0; k < input.size(); ++k) {
    const auto& p = input[k];
    const std::string where = "edge #" + std::to_string(k) + " " + pair_str(p.i, p.j);
    if (p.i >= n || p.j >= n) {
      throw GraphError(Kind::NodeOutOfRange,
                       where + ": node index out of range for " + std::to_string(n) + " nodes");
    }
    if (p.i == p.j) throw GraphError(Kind::SelfLoop, where + ": self-loop");
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
      throw GraphError(Kind::NonPositiveWeight,
                       where + ": weight must be positive and finite");
    }
    OrientedEdge e{std::min(p.i, p.j), std::max(p.i, p.j), p.weight};
    if (orientation == Orientation::AsGiven) e = {p.i, p.j, p.weight};
    keyed.push_back({std::min(p.i, p.j), std::max(p.i, p.j), e, k});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.lo, a.hi, a.position) < std::tie(b.lo, b.hi, b.position);
  });
  for (std::size_t k = 1; k < keyed.size(); ++k) {
    if (keyed[k].lo == keyed[k - 1].lo && keyed[k].hi == keyed[k - 1].hi) {
      throw GraphError(Kind::DuplicateEdge,
                       "edge #" + std::to_string(keyed[k].position) + " " +
                           pair_str(input[keyed[k].position].i, input[keyed[k].position].j) +
                           ": duplicates edge #" + std::to_string(keyed[k - 1].position));
    }
  }

  EmpiricalGraph g;
  g.num_nodes_ = n;
  g.edges_.reserve(keyed.size());
  for (const auto& k : keyed) g.edges_.push_back(k.edge);
  g.index();

  const auto hops = hop_distances(g, std::vector<std::size_t>{0});
  for (std::size_t v = 0; v < n; ++v) {
    if (hops[v] == std::numeric_limits<std::size_t>::max()) {
      throw GraphError(Kind::DisconnectedGraph,
                       "graph is disconnected: node " + std::to_string(v) +
                           " is not reachable from node 0");
    }
  }
  return g;
}

void EmpiricalGraph::index() {
  offsets_.assign(num_nodes_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.head + 1];
    ++offsets_[e.tail + 1];
  }
  for (std::size_t v = 0; v < num_nodes_; ++v) offsets_[v + 1] += offsets_[v];

  // Filling in edge order keeps each node's list sorted by edge index.
  incidences_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    incidences_[cursor[edge.head]++] = {e, edge.tail, true};
    incidences_[cursor[edge.tail]++] = {e, edge.head, false};
  }

  degrees_.assign(num_nodes_, 0.0);
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    for (const auto& inc : incidences(v)) degrees_[v] += edges_[inc.edge].weight;
  }
  max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());
}

std::span<const Incidence> EmpiricalGraph::incidences(std::size_t node) const {
  if (node >= num_nodes_) throw std::out_of_range("node index out of range");
  return std::span<const Incidence>(incidences_).subspan(offsets_[node],
                                                         offsets_[node + 1] - offsets_[node]);
}

EmpiricalGraph EmpiricalGraph::with_flipped(std::span<const std::size_t> edge_ids) const {
  EmpiricalGraph g = *this;
  for (std::size_t e : edge_ids) {
    auto& edge = g.edges_.at(e);
    std::swap(edge.head, edge.tail);
  }
  g.index();
  return g;
}

std::vector<WeightedPair> EmpiricalGraph::edge_list() const {
  std::vector<WeightedPair> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back({e.head, e.tail, e.weight});
  return out;
}

double weighted_degree(const EmpiricalGraph& g, std::size_t node) {
  if (node >= g.num_nodes()) throw std::out_of_range("node index out of range");
  return g.degree(node);
}

double max_degree(const EmpiricalGraph& g) { return g.max_degree(); }

EdgeSignal apply_incidence(const EmpiricalGraph& g, const NodeSignal& x) {
  check_size(x.size(), g.num_nodes(), "apply_incidence");
  EdgeSignal out(g.num_edges());
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[e] = edges[e].weight * (x[edges[e].head] - x[edges[e].tail]);
  }
  return out;
}

NodeSignal apply_incidence_adjoint(const EmpiricalGraph& g, const EdgeSignal& y) {
  check_size(y.size(), g.num_edges(), "apply_incidence_adjoint");
  NodeSignal out(g.num_nodes());
  const auto edges = g.edges();
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    double acc = 0.0;
    for (const auto& inc : g.incidences(v)) {
      const double flow = edges[inc.edge].weight * y[inc.edge];
      acc += inc.is_head ? flow : -flow;
    }
    out[v] = acc;
  }
  return out;
}

double tv_norm(const EmpiricalGraph& g, const NodeSignal& x) {
  check_size(x.size(), g.num_nodes(), "tv_norm");
  double tv = 0.0;
  for (const auto& e : g.edges()) tv += std::abs(e.weight * (x[e.head] - x[e.tail]));
  return tv;
}

double l1_norm(const EdgeSignal& y) {
  double s = 0.0;
  for (double v : y) s += std::abs(v);
  return s;
}

std::vector<std::size_t> hop_distances(const EmpiricalGraph& g,
                                       std::span<const std::size_t> sources) {
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.num_nodes(), kUnreached);
  std::deque<std::size_t> queue;
  for (std::size_t s : sources) {
    if (s >= g.num_nodes()) throw std::out_of_range("source node out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& inc : g.incidences(v)) {
      if (dist[inc.neighbor] == kUnreached) {
        dist[inc.neighbor] = dist[v] + 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
  return dist;
}

}  // namespace slp
