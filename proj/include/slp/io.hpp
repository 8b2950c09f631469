#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slp/graph.hpp"
#include "slp/message_passing.hpp"
#include "slp/solver.hpp"

namespace slp {

/// Contents of an edge-list file: `i<TAB>j<TAB>w` per line, `#` comments,
/// optional `#nodes N` header.
struct EdgeListFile {
  std::vector<WeightedPair> edges;
  std::optional<std::size_t> num_nodes;
};

/// Parsers throw ParseError carrying the 1-based line number. Fields may be
/// separated by tabs or spaces.
EdgeListFile parse_edge_list(std::istream& in);
std::vector<Label> parse_labels(std::istream& in);
/// Reads `i<TAB>value` lines; every node 0..N-1 must appear exactly once.
NodeSignal parse_signal(std::istream& in);

/// File variants; a missing or unreadable file is a ParseError with line 0.
EdgeListFile read_edge_list(const std::filesystem::path& path);
std::vector<Label> read_labels(const std::filesystem::path& path);
NodeSignal read_signal(const std::filesystem::path& path);

/// 17 significant digits; enough to round-trip any double.
std::string format_real(double v);

void write_signal(std::ostream& out, const NodeSignal& x);
void write_edge_list(std::ostream& out, const EmpiricalGraph& g);

/// One JSON object per line: {k, tv_iterate, tv_average, bound, gap, residual}.
/// Missing values are written as null.
std::string trace_record_line(const TraceRecord& r);
std::string round_stats_line(const RoundStats& r);

}  // namespace slp
