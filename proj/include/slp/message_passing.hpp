#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "slp/graph.hpp"
#include "slp/solver.hpp"

namespace slp {

/// A node's view of one incident edge. The head endpoint owns the dual value
/// and updates it; the tail keeps the copy it last received.
struct Port {
  std::size_t edge;
  std::size_t neighbor;
  double weight;
  double lambda;
  bool is_head;
  double dual = 0.0;
};

/// Local state of the computational unit attached to one node.
struct NodeUnit {
  std::size_t id = 0;
  double x_curr = 0.0;
  double x_prev = 0.0;
  double x_avg = 0.0;
  double gamma = 0.0;
  std::optional<double> label;
  std::vector<Port> ports;  // sorted by edge index
};

struct Message {
  std::size_t edge;
  double value;
};

/// In-process transport. Messages posted during a half-step become readable
/// after deliver().
class Mailbox {
 public:
  explicit Mailbox(std::size_t num_nodes) : pending_(num_nodes), inbox_(num_nodes) {}

  void post(std::size_t to, Message m);
  void deliver();
  std::span<const Message> inbox(std::size_t node) const { return inbox_.at(node); }
  std::size_t posted() const noexcept { return posted_; }

 private:
  std::vector<std::vector<Message>> pending_;
  std::vector<std::vector<Message>> inbox_;
  std::size_t posted_ = 0;
};

struct RoundStats {
  std::size_t round = 0;
  std::size_t messages = 0;
  std::vector<std::size_t> node_ops;  // arithmetic operations per node
};

/// Units for every node of `g`, zero-initialized, with their labels and
/// preconditioners filled in from local information only.
std::vector<NodeUnit> make_units(const EmpiricalGraph& g, const SamplingSet& s);

/// One synchronous round: extrapolate, tail -> head exchange of the
/// extrapolated value, dual update and clipping at the head, head -> tail
/// exchange of the dual value, primal update, label re-imposition, running
/// average. `round` is the 1-based index of the round being executed.
///
/// Throws NonFiniteIterate.
RoundStats mp_round(std::span<NodeUnit> units, std::size_t round);

/// Owns the units and drives rounds.
class MessagePassingNetwork {
 public:
  MessagePassingNetwork(const EmpiricalGraph& g, const SamplingSet& s);

  RoundStats step();
  std::size_t rounds() const noexcept { return rounds_; }
  std::span<const NodeUnit> units() const noexcept { return units_; }

  NodeSignal iterate() const;
  NodeSignal average() const;
  EdgeSignal dual() const;
  /// Gathers the distributed state into the centralized layout.
  SolverState state() const;

 private:
  std::size_t num_edges_;
  std::vector<NodeUnit> units_;
  std::size_t rounds_ = 0;
};

/// Nodes at hop distance > K from every labeled node whose value in `x` is
/// not exactly zero. Empty for K rounds started from zero.
std::vector<std::size_t> locality_violations(const EmpiricalGraph& g, const SamplingSet& s,
                                             const NodeSignal& x, std::size_t K);

}  // namespace slp
