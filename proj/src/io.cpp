#include "slp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace slp {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == '\t' || line[pos] == ' ')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != '\t' && line[end] != ' ') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

std::size_t parse_index(std::string_view field, std::size_t line_no, const char* what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line_no, "line " + std::to_string(line_no) + ": invalid " + what + " '" +
                                  std::string(field) + "'");
  }
  return v;
}

double parse_real(std::string_view field, std::size_t line_no, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line_no, "line " + std::to_string(line_no) + ": invalid " + what + " '" +
                                  std::string(field) + "'");
  }
  return v;
}

/// Calls fn(line_no, fields) for every non-comment, non-blank line and
/// on_comment(line_no, text) for comment lines.
template <class Fn, class CommentFn>
void for_each_record(std::istream& in, Fn&& fn, CommentFn&& on_comment) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.front().front() == '#') {
      on_comment(line_no, fields);
      continue;
    }
    fn(line_no, fields);
  }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

EdgeListFile parse_edge_list(std::istream& in) {
  EdgeListFile out;
  for_each_record(
      in,
      [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 3) {
          throw ParseError(line_no, "line " + std::to_string(line_no) +
                                        ": expected 'i<TAB>j<TAB>w', got " +
                                        std::to_string(f.size()) + " fields");
        }
        out.edges.push_back({parse_index(f[0], line_no, "node index"),
                             parse_index(f[1], line_no, "node index"),
                             parse_real(f[2], line_no, "weight")});
      },
      [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.front() == "#nodes") {
          if (f.size() != 2) {
            throw ParseError(line_no, "line " + std::to_string(line_no) +
                                          ": expected '#nodes N'");
          }
          out.num_nodes = parse_index(f[1], line_no, "node count");
        }
      });
  return out;
}

std::vector<Label> parse_labels(std::istream& in) {
  std::vector<Label> out;
  for_each_record(
      in,
      [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 2) {
          throw ParseError(line_no, "line " + std::to_string(line_no) +
                                        ": expected 'i<TAB>value', got " +
                                        std::to_string(f.size()) + " fields");
        }
        out.push_back(
            {parse_index(f[0], line_no, "node index"), parse_real(f[1], line_no, "value")});
      },
      [](std::size_t, const std::vector<std::string_view>&) {});
  return out;
}

NodeSignal parse_signal(std::istream& in) {
  std::vector<std::pair<std::size_t, double>> entries;
  std::vector<std::size_t> line_of;
  for_each_record(
      in,
      [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        if (f.size() != 2) {
          throw ParseError(line_no, "line " + std::to_string(line_no) +
                                        ": expected 'i<TAB>value'");
        }
        entries.emplace_back(parse_index(f[0], line_no, "node index"),
                             parse_real(f[1], line_no, "value"));
        line_of.push_back(line_no);
      },
      [](std::size_t, const std::vector<std::string_view>&) {});
  std::vector<double> values(entries.size(), 0.0);
  std::vector<bool> seen(entries.size(), false);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto [i, v] = entries[k];
    if (i >= entries.size() || seen[i]) {
      throw ParseError(line_of[k], "line " + std::to_string(line_of[k]) + ": node " +
                                       std::to_string(i) + " is out of range or repeated");
    }
    seen[i] = true;
    values[i] = v;
  }
  return NodeSignal(std::move(values));
}

EdgeListFile read_edge_list(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_edge_list(in);
}

std::vector<Label> read_labels(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_labels(in);
}

NodeSignal read_signal(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_signal(in);
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_signal(std::ostream& out, const NodeSignal& x) {
  for (std::size_t i = 0; i < x.size(); ++i) out << i << '\t' << format_real(x[i]) << '\n';
}

void write_edge_list(std::ostream& out, const EmpiricalGraph& g) {
  out << "#nodes " << g.num_nodes() << '\n';
  for (const auto& e : g.edges()) {
    out << e.head << '\t' << e.tail << '\t' << format_real(e.weight) << '\n';
  }
}

namespace {

std::string json_real(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "null";
  return format_real(*v);
}

}  // namespace

std::string trace_record_line(const TraceRecord& r) {
  std::ostringstream os;
  os << "{\"k\":" << r.k << ",\"tv_iterate\":" << json_real(r.tv_iterate)
     << ",\"tv_average\":" << json_real(r.tv_average) << ",\"bound\":" << json_real(r.bound)
     << ",\"gap\":" << json_real(r.gap) << ",\"residual\":" << json_real(r.residual) << '}';
  return os.str();
}

std::string round_stats_line(const RoundStats& r) {
  std::ostringstream os;
  os << "{\"round\":" << r.round << ",\"messages\":" << r.messages << ",\"node_ops\":[";
  for (std::size_t i = 0; i < r.node_ops.size(); ++i) {
    if (i) os << ',';
    os << r.node_ops[i];
  }
  os << "]}";
  return os.str();
}

}  // namespace slp
