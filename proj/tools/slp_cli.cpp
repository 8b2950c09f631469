#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "slp/baselines.hpp"
#include "slp/bench.hpp"
#include "slp/certificates.hpp"
#include "slp/io.hpp"
#include "slp/message_passing.hpp"
#include "slp/solver.hpp"

#ifndef SLP_VERSION
#define SLP_VERSION "0.0.0"
#endif

namespace {

using namespace slp;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kParse = 1,
  kValidation = 2,
  kNumeric = 3,
  kBound = 4,
  kUsage = 64,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  std::string graph;
  std::string labels;
  std::string algorithm = "slp";
  std::optional<std::size_t> iters;
  double tol = 0.0;
  int threads = 1;
  std::string signal = "average";
  std::string output;
  std::string trace;
  std::size_t trace_stride = 1;
  std::string certificate;
  std::string round_stats;
  std::string manifest;
};

// Writes to `path`, or stdout when the path is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::optional<Sink> maybe_sink(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return std::optional<Sink>(std::in_place, path);
}

EmpiricalGraph load_graph(const std::string& path) {
  const auto file = read_edge_list(path);
  return build_graph(file.edges, file.num_nodes);
}

json certificate_json(const EmpiricalGraph& g, const SamplingSet& s, const SolverState& st,
                      const NodeSignal& reference) {
  const auto p = make_preconditioners(g);
  const NodeSignal x0(g.num_nodes());
  const EdgeSignal y0(g.num_edges());
  Certificate c;
  c.K = st.k;
  c.convergence_bound = convergence_bound(g, p, x0, y0, reference, st.x_avg, st.k);
  c.reference = ReferenceKind::LongRun;
  c.primal_value = tv_norm(g, st.x_avg);
  c.dual = dual_value(g, s, st.y_curr);
  const auto gap = duality_gap(g, s, st.x_curr, st.y_curr);
  if (gap.feasible) c.gap = gap.gap;
  c.kappa_estimate = kappa_estimate(g, p).value;

  json j;
  j["K"] = c.K;
  j["convergence_bound"] = *c.convergence_bound;
  j["reference"] = std::string(to_string(c.reference));
  j["primal_value"] = c.primal_value;
  j["reference_value"] = tv_norm(g, reference);
  j["dual_feasible"] = c.dual.feasible;
  j["dual_value"] = c.dual.feasible ? json(c.dual.value) : json(nullptr);
  j["dual_violation"] = c.dual.violation;
  j["gap"] = c.gap ? json(*c.gap) : json(nullptr);
  j["kappa_estimate"] = c.kappa_estimate;
  return j;
}

json manifest_json(const SolveOptions& o, std::size_t iters) {
  return {{"command", "solve"},
          {"version", SLP_VERSION},
          {"seed", nullptr},
          {"inputs", {{"graph", o.graph}, {"labels", o.labels}}},
          {"config",
           {{"algorithm", o.algorithm},
            {"iters", iters},
            {"tol", o.tol},
            {"threads", o.threads},
            {"signal", o.signal},
            {"trace_stride", o.trace_stride}}},
          {"outputs",
           {{"output", o.output},
            {"trace", o.trace},
            {"certificate", o.certificate},
            {"round_stats", o.round_stats}}}};
}

int run_solve(const SolveOptions& o) {
  if (o.algorithm == "lp" && (!o.trace.empty() || !o.certificate.empty() || o.signal != "average")) {
    throw UsageError("--trace, --certificate and --signal apply to slp and slp-mp only");
  }
  if (o.algorithm != "slp-mp" && !o.round_stats.empty()) {
    throw UsageError("--round-stats applies to slp-mp only");
  }
  if (o.algorithm == "slp-mp" && o.tol > 0.0) {
    throw UsageError("--tol is not supported with slp-mp");
  }

  const auto g = load_graph(o.graph);
  const SamplingSet s(read_labels(o.labels));
  s.validate_for(g);
  const std::size_t iters = o.iters.value_or(10 * g.num_nodes());
  if (iters == 0) throw UsageError("--iters must be at least 1");

  NodeSignal result;
  std::optional<SolverState> final_state;
  if (o.algorithm == "lp") {
    LpConfig cfg;
    cfg.max_iters = iters;
    if (o.tol > 0.0) cfg.tol = o.tol;
    const auto r = lp_solve(g, s, cfg);
    if (!r.converged) {
      std::cerr << "warning: label propagation stopped after " << r.iterations
                << " sweeps without reaching the tolerance\n";
    }
    result = r.signal;
  } else if (o.algorithm == "slp") {
    SolverConfig cfg;
    cfg.max_iters = iters;
    cfg.tol = o.tol;
    cfg.threads = o.threads;
    cfg.record_trace = !o.trace.empty();
    cfg.trace_stride = o.trace_stride;
    auto r = solve(g, s, cfg);
    if (auto sink = maybe_sink(o.trace)) {
      for (const auto& rec : r.trace) sink->stream() << trace_record_line(rec) << '\n';
    }
    final_state = SolverState{NodeSignal(g.num_nodes()), r.iterate, r.dual, r.average,
                              r.iterations};
    result = o.signal == "iterate" ? r.iterate : r.average;
  } else {
    MessagePassingNetwork net(g, s);
    const auto p = make_preconditioners(g);
    const NodeSignal x0(g.num_nodes());
    const EdgeSignal y0(g.num_edges());
    auto trace = maybe_sink(o.trace);
    auto stats = maybe_sink(o.round_stats);
    for (std::size_t k = 1; k <= iters; ++k) {
      const auto rs = net.step();
      if (stats) stats->stream() << round_stats_line(rs) << '\n';
      if (trace && (k % o.trace_stride == 0 || k == iters)) {
        trace->stream() << trace_record_line(make_trace_record(g, p, s, net.state(), x0, y0,
                                                               std::nullopt))
                        << '\n';
      }
    }
    final_state = net.state();
    result = o.signal == "iterate" ? net.iterate() : net.average();
  }

  {
    Sink out(o.output);
    write_signal(out.stream(), result);
  }
  if (!o.certificate.empty()) {
    SolverConfig ref_cfg;
    ref_cfg.max_iters = 10 * final_state->k;
    ref_cfg.threads = o.threads;
    const auto reference = solve(g, s, ref_cfg).iterate;
    Sink sink(o.certificate);
    sink.stream() << certificate_json(g, s, *final_state, reference).dump(2) << '\n';
  }
  if (!o.manifest.empty()) {
    Sink sink(o.manifest);
    sink.stream() << manifest_json(o, iters).dump(2) << '\n';
  }
  return kOk;
}

SolveOptions options_from_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  json m;
  try {
    m = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, "manifest '" + path + "': " + e.what());
  }
  try {
    if (m.at("command") != "solve") throw UsageError("manifest is not a solve run");
    SolveOptions o;
    o.graph = m.at("inputs").at("graph");
    o.labels = m.at("inputs").at("labels");
    const auto& c = m.at("config");
    o.algorithm = c.at("algorithm");
    o.iters = c.at("iters").get<std::size_t>();
    o.tol = c.at("tol");
    o.threads = c.at("threads");
    o.signal = c.at("signal");
    o.trace_stride = c.at("trace_stride");
    const auto& out = m.at("outputs");
    o.output = out.at("output");
    o.trace = out.at("trace");
    o.certificate = out.at("certificate");
    o.round_stats = out.at("round_stats");
    return o;
  } catch (const json::exception& e) {
    throw ParseError(0, "manifest '" + path + "': " + e.what());
  }
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      grid.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("invalid K in --grid: '" + item + "'");
    }
  }
  if (grid.empty()) throw UsageError("--grid is empty");
  return grid;
}

int run_bench(std::size_t n, const std::string& grid_text, const std::string& report_path,
              const std::string& table_path, int threads) {
  if (n < 3) throw UsageError("N must be at least 3");
  const auto grid = grid_text.empty() ? default_k_grid(n) : parse_grid(grid_text);
  for (std::size_t k : grid) {
    if (k >= n) throw UsageError("every K must satisfy 1 <= K < N; got K = " + std::to_string(k));
  }
  const auto report = run_rate_experiment({n}, grid, threads);
  {
    Sink table(table_path);
    table.stream() << to_table(report);
  }
  if (!report_path.empty()) {
    Sink out(report_path);
    out.stream() << to_json(report).dump(2) << '\n';
  }
  std::cerr << "slope " << format_real(report.slope) << '\n';
  require_no_violations(report);
  return kOk;
}

int run_certify(const std::string& path, bool strict) {
  const auto g = load_graph(path);
  const auto est = kappa_estimate(g, make_preconditioners(g));
  const double limit = strict ? kKappaStatedLimit : kKappaGuaranteedLimit;
  std::cout << "nodes\t" << g.num_nodes() << '\n'
            << "edges\t" << g.num_edges() << '\n'
            << "max_degree\t" << format_real(max_degree(g)) << '\n'
            << "kappa\t" << format_real(est.value) << '\n'
            << "kappa_converged\t" << (est.converged ? "true" : "false") << '\n'
            << "kappa_limit_stated\t" << format_real(kKappaStatedLimit) << '\n'
            << "kappa_limit_guaranteed\t" << format_real(kKappaGuaranteedLimit) << '\n';
  if (est.value > limit + 1e-6) {
    std::cerr << "error: kappa " << format_real(est.value) << " exceeds " << format_real(limit)
              << '\n';
    return kBound;
  }
  return kOk;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const SizeMismatch& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const NonFiniteIterate& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const BoundViolation& e) {
    std::cerr << "bound violation: " << e.what() << '\n';
    return kBound;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse label propagation: total variation minimization on graphs"};
  app.set_version_flag("--version", SLP_VERSION);
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve_cmd = app.add_subcommand("solve", "Recover a graph signal from a few labels");
  solve_cmd->add_option("graph", so.graph, "Edge list (i<TAB>j<TAB>w)")->required();
  solve_cmd->add_option("labels", so.labels, "Labels (i<TAB>value)")->required();
  solve_cmd->add_option("--algorithm", so.algorithm, "slp, slp-mp or lp")
      ->check(CLI::IsMember({"slp", "slp-mp", "lp"}));
  solve_cmd->add_option("--iters", so.iters, "Iterations (default 10 N)");
  solve_cmd->add_option("--tol", so.tol, "Early-stop tolerance on the running average")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--threads", so.threads, "Worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--signal", so.signal, "Which signal to write: average or iterate")
      ->check(CLI::IsMember({"average", "iterate"}));
  solve_cmd->add_option("-o,--output", so.output, "Recovered signal (default stdout)");
  solve_cmd->add_option("--trace", so.trace, "Line-delimited trace records");
  solve_cmd->add_option("--trace-stride", so.trace_stride, "Iterations between trace records")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--certificate", so.certificate, "Certificate JSON");
  solve_cmd->add_option("--round-stats", so.round_stats, "Per-round message statistics");
  solve_cmd->add_option("--manifest", so.manifest, "Run manifest JSON");

  std::string manifest_path, replay_output;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a solve from its manifest");
  replay_cmd->add_option("manifest", manifest_path, "Manifest written by solve")->required();
  replay_cmd->add_option("-o,--output", replay_output, "Override the signal output path");

  std::size_t bench_n = 0;
  std::string grid, report, table;
  int bench_threads = 1;
  auto* bench_cmd = app.add_subcommand("bench-chain", "Rate experiment on the weighted chain");
  bench_cmd->add_option("N", bench_n, "Number of nodes")->required();
  bench_cmd->add_option("--grid", grid, "Comma-separated K values");
  bench_cmd->add_option("--report", report, "RateReport JSON");
  bench_cmd->add_option("--table", table, "Plain-text table (default stdout)");
  bench_cmd->add_option("--threads", bench_threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string certify_graph;
  bool strict = false;
  auto* certify_cmd = app.add_subcommand("certify", "Estimate the preconditioned operator norm");
  certify_cmd->add_option("graph", certify_graph, "Edge list")->required();
  certify_cmd->add_flag("--strict", strict, "Compare against 1/2 instead of 1/sqrt(2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*solve_cmd) return guarded([&] { return run_solve(so); });
  if (*replay_cmd) {
    return guarded([&] {
      auto o = options_from_manifest(manifest_path);
      if (!replay_output.empty()) o.output = replay_output;
      o.manifest.clear();
      return run_solve(o);
    });
  }
  if (*bench_cmd) {
    return guarded([&] { return run_bench(bench_n, grid, report, table, bench_threads); });
  }
  return guarded([&] { return run_certify(certify_graph, strict); });
}
