#include "slp/message_passing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slp {

void Mailbox::post(std::size_t to, Message m) {
  pending_.at(to).push_back(m);
  ++posted_;
}

void Mailbox::deliver() {
  for (std::size_t v = 0; v < inbox_.size(); ++v) {
    inbox_[v].swap(pending_[v]);
    pending_[v].clear();
  }
}

std::vector<NodeUnit> make_units(const EmpiricalGraph& g, const SamplingSet& s) {
  s.validate_for(g);
  std::vector<NodeUnit> units(g.num_nodes());
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    auto& u = units[v];
    u.id = v;
    for (const auto& inc : g.incidences(v)) {
      const double w = g.edge(inc.edge).weight;
      u.ports.push_back({inc.edge, inc.neighbor, w, 1.0 / (2.0 * w), inc.is_head, 0.0});
    }
    // d_i is a sum over the node's own edges, in edge order.
    double degree = 0.0;
    for (const auto& port : u.ports) degree += port.weight;
    u.gamma = 1.0 / (2.0 * degree);
  }
  for (const auto& l : s.labels()) units[l.node].label = l.value;
  return units;
}

namespace {

Port& port_for(NodeUnit& u, std::size_t edge) {
  auto it = std::lower_bound(u.ports.begin(), u.ports.end(), edge,
                             [](const Port& p, std::size_t e) { return p.edge < e; });
  if (it == u.ports.end() || it->edge != edge) {
    throw std::logic_error("message for a non-incident edge at node " + std::to_string(u.id));
  }
  return *it;
}

}  // namespace

RoundStats mp_round(std::span<NodeUnit> units, std::size_t round) {
  Mailbox mailbox(units.size());
  RoundStats stats;
  stats.round = round;
  stats.node_ops.assign(units.size(), 0);
  bool bad = false;

  // Extrapolate locally; tails send theirs to the head of each edge.
  std::vector<double> extrapolated(units.size());
  for (auto& u : units) {
    extrapolated[u.id] = 2.0 * u.x_curr - u.x_prev;
    stats.node_ops[u.id] += 2;
    for (const auto& port : u.ports) {
      if (!port.is_head) mailbox.post(port.neighbor, {port.edge, extrapolated[u.id]});
    }
  }
  mailbox.deliver();

  // Heads update and clip the dual value, then send it back to the tail.
  for (auto& u : units) {
    for (const auto& msg : mailbox.inbox(u.id)) {
      Port& port = port_for(u, msg.edge);
      const double raw =
          port.dual + port.lambda * (port.weight * (extrapolated[u.id] - msg.value));
      port.dual = raw / std::max(1.0, std::abs(raw));
      bad = bad || !std::isfinite(port.dual);
      stats.node_ops[u.id] += 6;
      mailbox.post(port.neighbor, {port.edge, port.dual});
    }
  }
  mailbox.deliver();

  for (auto& u : units) {
    for (const auto& msg : mailbox.inbox(u.id)) port_for(u, msg.edge).dual = msg.value;
  }

  // Primal update from the signed sum over N+(i) and N-(i), walked in edge
  // order.
  const double k = static_cast<double>(round);
  for (auto& u : units) {
    double acc = 0.0;
    for (const auto& port : u.ports) {
      const double flow = port.weight * port.dual;
      acc += port.is_head ? flow : -flow;
    }
    double next = u.x_curr - u.gamma * acc;
    bad = bad || !std::isfinite(next);
    if (u.label) next = *u.label;
    u.x_prev = u.x_curr;
    u.x_curr = next;
    u.x_avg += (u.x_curr - u.x_avg) / k;
    stats.node_ops[u.id] += 2 * u.ports.size() + 6;
  }

  stats.messages = mailbox.posted();
  if (bad) {
    throw NonFiniteIterate(round, "non-finite iterate in round " + std::to_string(round));
  }
  return stats;
}

MessagePassingNetwork::MessagePassingNetwork(const EmpiricalGraph& g, const SamplingSet& s)
    : num_edges_(g.num_edges()), units_(make_units(g, s)) {}

RoundStats MessagePassingNetwork::step() { return mp_round(units_, ++rounds_); }

NodeSignal MessagePassingNetwork::iterate() const {
  NodeSignal x(units_.size());
  for (const auto& u : units_) x[u.id] = u.x_curr;
  return x;
}

NodeSignal MessagePassingNetwork::average() const {
  NodeSignal x(units_.size());
  for (const auto& u : units_) x[u.id] = u.x_avg;
  return x;
}

EdgeSignal MessagePassingNetwork::dual() const {
  EdgeSignal y(num_edges_);
  for (const auto& u : units_) {
    for (const auto& port : u.ports) {
      if (port.is_head) y[port.edge] = port.dual;
    }
  }
  return y;
}

SolverState MessagePassingNetwork::state() const {
  SolverState st{NodeSignal(units_.size()), iterate(), dual(), average(), rounds_};
  for (const auto& u : units_) st.x_prev[u.id] = u.x_prev;
  return st;
}

std::vector<std::size_t> locality_violations(const EmpiricalGraph& g, const SamplingSet& s,
                                             const NodeSignal& x, std::size_t K) {
  if (x.size() != g.num_nodes()) throw SizeMismatch("locality_violations: length mismatch");
  const auto sources = s.nodes();
  const auto hops = hop_distances(g, sources);
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    if (hops[v] > K && x[v] != 0.0) out.push_back(v);
  }
  return out;
}

}  // namespace slp
