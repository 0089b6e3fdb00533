// patopt: command-line front end for the measurement-pattern toolkit.
//
// Subcommands:
//   classify    correction structure (flow/gflow/none), depth, map, levels
//   optimize    optimized pattern via the accumulation or the rules engine
//   rewrite     rules pipeline with optional trace dump and final pattern
//   simulate    branch table, determinism verdicts, small linear maps
//   diff        engine-vs-engine comparison plus semantic equivalence
//   gen         seeded random geometries (flow or gflow-only structure)
//   export-dot  Graphviz view with correction arcs overlaid
//
// Exit codes: 0 success (and, for diff, equivalence); 1 unsupported geometry,
// divergence, or runtime failure; 2 file or usage errors.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mbqc/direct_optimizer.hpp"
#include "mbqc/flow.hpp"
#include "mbqc/generator.hpp"
#include "mbqc/geometry_io.hpp"
#include "mbqc/open_graph.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/rewrite_engine.hpp"
#include "mbqc/simulator.hpp"

namespace {

using mbqc::OpenGraph;
using mbqc::Pattern;
using mbqc::QubitId;
using mbqc::Signal;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

// Parses the geometry file, printing any error to stderr. Empty on failure.
std::optional<OpenGraph> load_geometry(const std::string& path) {
  const auto text = read_file(path);
  if (!text) {
    std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
    return std::nullopt;
  }
  mbqc::ParseResult parsed = mbqc::parse_geometry(*text);
  if (!parsed.ok()) {
    std::fprintf(stderr, "error: %s: %s: %s\n", path.c_str(),
                 std::string(mbqc::to_string(parsed.error)).c_str(),
                 parsed.message.c_str());
    return std::nullopt;
  }
  return std::move(parsed.graph);
}

std::string geometry_id(const std::string& path) {
  const std::string::size_type slash = path.find_last_of("/\\");
  std::string name =
      slash == std::string::npos ? path : path.substr(slash + 1);
  const std::string::size_type dot = name.rfind('.');
  if (dot != std::string::npos && dot > 0) name.resize(dot);
  return name;
}

// Correction levels are 0-based internally and 1-based in every report.
std::map<QubitId, int> displayed_levels(const std::map<QubitId, int>& raw) {
  std::map<QubitId, int> out;
  for (auto [q, level] : raw) out.emplace(q, level + 1);
  return out;
}

// Depth = measurement levels plus the closing correction layer.
int report_depth(const std::map<QubitId, int>& displayed) {
  int depth = 1;
  for (auto [q, level] : displayed) depth = std::max(depth, level + 1);
  return depth;
}

std::string join_ids(const std::vector<QubitId>& ids, const char* sep) {
  std::string out;
  for (QubitId id : ids) {
    if (!out.empty()) out += sep;
    out += std::to_string(id);
  }
  return out;
}

std::string brace_list(const Signal& signal) {
  return "{" + signal.to_string() + "}";
}

nlohmann::ordered_json command_counts(const Pattern& pattern) {
  std::size_t entangle = 0;
  std::size_t measure = 0;
  std::size_t correct_x = 0;
  std::size_t correct_z = 0;
  for (const mbqc::Command& c : pattern.commands) {
    switch (c.kind) {
      case mbqc::CommandKind::entangle: ++entangle; break;
      case mbqc::CommandKind::measure: ++measure; break;
      case mbqc::CommandKind::correct_x: ++correct_x; break;
      case mbqc::CommandKind::correct_z: ++correct_z; break;
      case mbqc::CommandKind::shift: break;
    }
  }
  nlohmann::ordered_json counts;
  counts["entangle"] = entangle;
  counts["measure"] = measure;
  counts["correct_x"] = correct_x;
  counts["correct_z"] = correct_z;
  return counts;
}

void print_levels(const std::map<QubitId, int>& displayed) {
  std::map<int, std::vector<QubitId>> by_level;
  for (auto [q, level] : displayed) by_level[level].push_back(q);
  for (const auto& [level, qubits] : by_level) {
    std::printf("level %d: %s\n", level, join_ids(qubits, " ").c_str());
  }
}

void print_trace(const mbqc::RewriteTrace& trace) {
  std::printf("rewrite trace (%zu steps):\n", trace.size());
  for (const mbqc::RewriteStep& step : trace) {
    std::printf("  %s @ %zu\n", mbqc::to_string(step.rule).c_str(),
                step.position);
  }
}

std::string format_complex(mbqc::Amplitude z) {
  const auto clean = [](double x) { return std::abs(x) < 5e-7 ? 0.0 : x; };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", clean(z.real()),
                clean(z.imag()));
  return buf;
}

int cmd_classify(const std::string& path) {
  const auto graph = load_geometry(path);
  if (!graph) return 2;
  const mbqc::Classification cls = mbqc::classify_geometry(*graph);
  if (cls.kind == mbqc::GeometryClass::no_determinism) {
    std::printf("%s\n", std::string(mbqc::to_string(cls.kind)).c_str());
    std::fprintf(stderr,
                 "error: geometry admits no deterministic correction "
                 "strategy\n");
    return 1;
  }
  mbqc::QList qlist = mbqc::build_qlist(*graph, cls);
  const mbqc::OptimizedPattern optimized = mbqc::optimize_qlist(*graph, qlist);
  const auto levels = displayed_levels(optimized.levels);
  std::printf("%s, depth %d\n", std::string(mbqc::to_string(cls.kind)).c_str(),
              report_depth(levels));
  if (cls.kind == mbqc::GeometryClass::has_flow) {
    for (auto [i, v] : cls.flow->f) {
      std::printf("f(%u) = %u\n", i, v);
    }
  } else {
    for (const auto& [i, set] : cls.gflow->g) {
      std::printf("g(%u) = {%s}\n", i, join_ids(set, ", ").c_str());
    }
  }
  print_levels(levels);
  return 0;
}

int cmd_optimize(const std::string& path, const std::string& engine,
                 const std::string& format) {
  const auto graph = load_geometry(path);
  if (!graph) return 2;
  const mbqc::Classification cls = mbqc::classify_geometry(*graph);
  if (cls.kind == mbqc::GeometryClass::no_determinism) {
    std::fprintf(stderr,
                 "error: geometry admits no deterministic correction "
                 "strategy\n");
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  mbqc::OptimizedPattern optimized;
  if (engine == "direct") {
    mbqc::QList qlist = mbqc::build_qlist(*graph, cls);
    optimized = mbqc::optimize_qlist(*graph, qlist);
  } else {
    optimized = mbqc::optimize_by_rules(*graph, cls).optimized;
  }
  const auto stop = std::chrono::steady_clock::now();
  const double ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  const Pattern pattern = optimized.to_pattern();
  if (format == "text") {
    std::printf("%s\n", mbqc::render_pattern(pattern).c_str());
    return 0;
  }

  // The rules engine does not track levels; re-derive them for the report
  // from the accumulation pass (both engines share the dependency structure).
  std::map<QubitId, int> raw_levels = optimized.levels;
  if (raw_levels.empty() && !graph->measured_vertices().empty()) {
    mbqc::QList qlist = mbqc::build_qlist(*graph, cls);
    raw_levels = mbqc::optimize_qlist(*graph, qlist).levels;
  }
  const auto levels = displayed_levels(raw_levels);

  nlohmann::ordered_json doc;
  doc["geometry"] = geometry_id(path);
  doc["engine"] = engine;
  doc["classification"] = std::string(mbqc::to_string(cls.kind));
  doc["depth"] = report_depth(levels);
  auto& level_doc = doc["levels"] = nlohmann::ordered_json::object();
  for (auto [q, level] : levels) level_doc[std::to_string(q)] = level;
  doc["pattern"] = mbqc::render_pattern(pattern);
  doc["counts"] = command_counts(pattern);
  doc["timing_ms"] = ms;
  std::printf("%s\n", doc.dump(2).c_str());
  return 0;
}

int cmd_rewrite(const std::string& path, bool show_trace, bool emit) {
  const auto graph = load_geometry(path);
  if (!graph) return 2;
  const mbqc::Classification cls = mbqc::classify_geometry(*graph);
  if (cls.kind == mbqc::GeometryClass::no_determinism) {
    std::fprintf(stderr,
                 "error: geometry admits no deterministic correction "
                 "strategy\n");
    return 1;
  }
  const mbqc::RulesEngineResult result = mbqc::optimize_by_rules(*graph, cls);
  if (show_trace) {
    for (const mbqc::RewriteStep& step : result.trace) {
      std::printf("%s @ %zu\n", mbqc::to_string(step.rule).c_str(),
                  step.position);
    }
  }
  std::printf("steps: %zu\n", result.trace.size());
  if (emit) {
    std::printf("%s\n", mbqc::render_pattern(result.rewritten).c_str());
  }
  return 0;
}

int cmd_simulate(const std::string& path) {
  const auto graph = load_geometry(path);
  if (!graph) return 2;
  const mbqc::Classification cls = mbqc::classify_geometry(*graph);
  if (cls.kind == mbqc::GeometryClass::no_determinism) {
    std::fprintf(stderr,
                 "error: geometry admits no deterministic correction "
                 "strategy\n");
    return 1;
  }
  const Pattern pattern = mbqc::standard_pattern(*graph, cls);
  const std::size_t measured = graph->measured_vertices().size();
  std::printf("pattern: %s\n", mbqc::render_pattern(pattern).c_str());

  const std::size_t dimension = std::size_t{1} << graph->inputs.size();
  mbqc::StateVector zero_input(dimension, mbqc::Amplitude(0.0, 0.0));
  zero_input[0] = mbqc::Amplitude(1.0, 0.0);
  std::printf("input: |%s>\n",
              std::string(graph->inputs.size(), '0').c_str());

  if (measured <= 6) {
    const auto branches = mbqc::enumerate_branches(pattern, zero_input);
    for (std::size_t key = 0; key < branches.size(); ++key) {
      const mbqc::RunResult& branch = branches[key];
      std::string outcomes;
      for (auto [q, bit] : branch.outcomes) {
        outcomes += " " + std::to_string(q) + "=" + (bit ? "1" : "0");
      }
      std::printf("branch %zu: p=%.6f outcomes%s\n", key, branch.probability,
                  outcomes.c_str());
    }
  } else {
    std::printf("branches: 2^%zu (not listed)\n", measured);
  }

  if (measured > 12) {
    std::printf("determinism check skipped (too many measurements)\n");
    return 0;
  }
  const mbqc::DeterminismReport det = mbqc::check_determinism(pattern);
  if (det.deterministic) {
    std::printf("deterministic: yes\n");
  } else {
    std::printf("deterministic: no (%s)\n", det.detail.c_str());
  }
  const mbqc::DeterminismReport uniform =
      mbqc::check_uniform_determinism(pattern);
  if (uniform.deterministic) {
    std::printf("uniform: yes\n");
  } else {
    std::printf("uniform: no (%s)\n", uniform.detail.c_str());
  }
  if (det.deterministic && graph->inputs.size() <= 3 &&
      graph->outputs.size() <= 3) {
    const mbqc::LinearMap map = mbqc::extract_linear_map(pattern);
    std::printf("map:\n");
    for (const auto& row : map) {
      std::string line = "  [";
      for (const mbqc::Amplitude& z : row) {
        line += " " + format_complex(z);
      }
      line += " ]";
      std::printf("%s\n", line.c_str());
    }
  }
  return det.deterministic && uniform.deterministic ? 0 : 1;
}

int cmd_diff(const std::string& path) {
  const auto graph = load_geometry(path);
  if (!graph) return 2;
  const mbqc::Classification cls = mbqc::classify_geometry(*graph);
  if (cls.kind == mbqc::GeometryClass::no_determinism) {
    std::fprintf(stderr,
                 "error: geometry admits no deterministic correction "
                 "strategy\n");
    return 1;
  }

  mbqc::QList qlist = mbqc::build_qlist(*graph, cls);
  const mbqc::OptimizedPattern direct = mbqc::optimize_qlist(*graph, qlist);
  const mbqc::RulesEngineResult rules = mbqc::optimize_by_rules(*graph, cls);

  std::map<QubitId, const mbqc::OptimizedMeasurement*> direct_meas;
  for (const auto& m : direct.measurements) direct_meas[m.qubit] = &m;
  std::map<QubitId, const mbqc::OptimizedMeasurement*> rules_meas;
  for (const auto& m : rules.optimized.measurements) rules_meas[m.qubit] = &m;

  for (QubitId q : graph->measured_vertices()) {
    const mbqc::OptimizedMeasurement& d = *direct_meas.at(q);
    const mbqc::OptimizedMeasurement& r = *rules_meas.at(q);
    const Signal& direct_z = qlist.record(q).z_list;
    const auto shifted = rules.shifted.find(q);
    const Signal rules_z =
        shifted == rules.shifted.end() ? Signal{} : shifted->second;
    if (d.angle == r.angle && d.s == r.s && direct_z == rules_z) continue;
    std::printf("DIVERGENT at qubit %u\n", q);
    std::printf("  direct: angle %s, s %s, t %s\n",
                d.angle.to_string().c_str(), brace_list(d.s).c_str(),
                brace_list(direct_z).c_str());
    std::printf("  rules:  angle %s, s %s, t %s\n",
                r.angle.to_string().c_str(), brace_list(r.s).c_str(),
                brace_list(rules_z).c_str());
    print_trace(rules.trace);
    return 1;
  }

  const auto correction_map =
      [](const std::vector<mbqc::OutputCorrection>& list) {
        std::map<QubitId, Signal> out;
        for (const auto& c : list) out[c.qubit] = c.s;
        return out;
      };
  const auto direct_x = correction_map(direct.x_corrections);
  const auto direct_z = correction_map(direct.z_corrections);
  const auto rules_x = correction_map(rules.optimized.x_corrections);
  const auto rules_z = correction_map(rules.optimized.z_corrections);
  const auto get = [](const std::map<QubitId, Signal>& m, QubitId q) {
    const auto it = m.find(q);
    return it == m.end() ? Signal{} : it->second;
  };
  for (QubitId q : graph->outputs) {
    const Signal dx = get(direct_x, q);
    const Signal dz = get(direct_z, q);
    const Signal rx = get(rules_x, q);
    const Signal rz = get(rules_z, q);
    if (dx == rx && dz == rz) continue;
    std::printf("DIVERGENT at output %u\n", q);
    std::printf("  direct: X %s, Z %s\n", brace_list(dx).c_str(),
                brace_list(dz).c_str());
    std::printf("  rules:  X %s, Z %s\n", brace_list(rx).c_str(),
                brace_list(rz).c_str());
    print_trace(rules.trace);
    return 1;
  }

  const std::size_t measured = graph->measured_vertices().size();
  if (graph->inputs.size() <= 5 && measured <= 10) {
    const Pattern standard = mbqc::standard_pattern(*graph, cls);
    const Pattern direct_pattern = direct.to_pattern();
    try {
      const auto baseline =
          mbqc::patterns_equivalent(standard, direct_pattern);
      if (!baseline.equivalent) {
        std::printf("SEMANTIC DIVERGENCE: standard vs direct: %s\n",
                    baseline.detail.c_str());
        return 1;
      }
      const auto engines =
          mbqc::patterns_equivalent(direct_pattern, rules.rewritten);
      if (!engines.equivalent) {
        std::printf("SEMANTIC DIVERGENCE: direct vs rules: %s\n",
                    engines.detail.c_str());
        print_trace(rules.trace);
        return 1;
      }
    } catch (const std::domain_error& error) {
      std::fprintf(stderr, "error: %s\n", error.what());
      return 1;
    }
  } else {
    std::printf("semantic check skipped (geometry too large to enumerate)\n");
  }
  std::printf("EQUIVALENT\n");
  return 0;
}

int cmd_gen(std::size_t qubits, std::uint64_t seed, const std::string& kind,
            std::size_t io_count, bool non_pauli, const std::string& out) {
  mbqc::GeneratorOptions options;
  options.qubits = qubits;
  options.seed = seed;
  options.kind = kind == "flow" ? mbqc::GeneratorKind::flow
                                : mbqc::GeneratorKind::gflow_only;
  options.io_count = io_count;
  options.non_pauli_angles = non_pauli;
  const OpenGraph graph = mbqc::generate_geometry(options);
  const std::string text = mbqc::serialize_geometry(graph);
  if (out.empty()) {
    std::printf("%s\n", text.c_str());
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::fprintf(stderr, "error: cannot write %s\n", out.c_str());
    return 2;
  }
  file << text << '\n';
  return 0;
}

int cmd_export_dot(const std::string& path) {
  const auto graph = load_geometry(path);
  if (!graph) return 2;
  const mbqc::Classification cls = mbqc::classify_geometry(*graph);

  std::string out = "graph geometry {\n";
  for (QubitId v : graph->vertices) {
    const bool in = graph->is_input(v);
    const bool is_out = graph->is_output(v);
    out += "  " + std::to_string(v);
    if (in && is_out) {
      out += " [shape=box, peripheries=2]";
    } else if (in) {
      out += " [shape=box]";
    } else if (is_out) {
      out += " [peripheries=2]";
    }
    out += ";\n";
  }
  for (auto [u, v] : graph->edges) {
    out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
  }
  const auto arc = [&out](QubitId from, QubitId to) {
    out += "  " + std::to_string(from) + " -- " + std::to_string(to) +
           " [dir=forward, style=dashed, constraint=false];\n";
  };
  if (cls.kind == mbqc::GeometryClass::has_flow) {
    for (auto [i, v] : cls.flow->f) arc(i, v);
  } else if (cls.kind == mbqc::GeometryClass::gflow_only) {
    for (const auto& [i, set] : cls.gflow->g) {
      for (QubitId v : set) arc(i, v);
    }
  }
  out += "}\n";
  std::fputs(out.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patopt: geometry-to-measurement-pattern toolkit"};
  app.require_subcommand(1);

  std::string classify_path;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Report the correction structure, depth, and levels");
  classify_cmd->add_option("file", classify_path, "geometry JSON file")
      ->required();

  std::string optimize_path;
  std::string engine = "direct";
  std::string format = "text";
  CLI::App* optimize_cmd =
      app.add_subcommand("optimize", "Emit the optimized measurement pattern");
  optimize_cmd->add_option("file", optimize_path, "geometry JSON file")
      ->required();
  optimize_cmd->add_option("--engine", engine, "optimizer engine")
      ->check(CLI::IsMember({"direct", "rules"}))
      ->capture_default_str();
  optimize_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::string rewrite_path;
  bool show_trace = false;
  bool emit = false;
  CLI::App* rewrite_cmd = app.add_subcommand(
      "rewrite", "Run the rewrite pipeline and report its steps");
  rewrite_cmd->add_option("file", rewrite_path, "geometry JSON file")
      ->required();
  rewrite_cmd->add_flag("--trace", show_trace,
                        "print every rule application as `rule @ position`");
  rewrite_cmd->add_flag("--emit", emit, "print the final rewritten pattern");

  std::string simulate_path;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Enumerate branches and check determinism");
  simulate_cmd->add_option("file", simulate_path, "geometry JSON file")
      ->required();

  std::string diff_path;
  CLI::App* diff_cmd = app.add_subcommand(
      "diff", "Compare both engines and verify semantic equivalence");
  diff_cmd->add_option("file", diff_path, "geometry JSON file")->required();

  std::size_t gen_qubits = 8;
  std::uint64_t gen_seed = 1;
  std::string gen_kind = "flow";
  std::size_t gen_io = 0;
  bool gen_non_pauli = false;
  std::string gen_out;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Generate a seeded random geometry");
  gen_cmd->add_option("--qubits", gen_qubits, "number of qubits")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "generator seed")
      ->capture_default_str();
  gen_cmd->add_option("--kind", gen_kind, "geometry family")
      ->check(CLI::IsMember({"flow", "gflow"}))
      ->capture_default_str();
  gen_cmd->add_option("--io-count", gen_io,
                      "inputs/outputs per side (flow kind; 0 = pick)")
      ->capture_default_str();
  gen_cmd->add_flag("--non-pauli", gen_non_pauli,
                    "exclude angles 0 and ±1/2");
  gen_cmd->add_option("-o,--output", gen_out, "write to file instead of stdout");

  std::string dot_path;
  CLI::App* dot_cmd = app.add_subcommand(
      "export-dot", "Emit Graphviz DOT with correction arcs overlaid");
  dot_cmd->add_option("file", dot_path, "geometry JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify_cmd) return cmd_classify(classify_path);
    if (*optimize_cmd) return cmd_optimize(optimize_path, engine, format);
    if (*rewrite_cmd) return cmd_rewrite(rewrite_path, show_trace, emit);
    if (*simulate_cmd) return cmd_simulate(simulate_path);
    if (*diff_cmd) return cmd_diff(diff_path);
    if (*gen_cmd) {
      return cmd_gen(gen_qubits, gen_seed, gen_kind, gen_io, gen_non_pauli,
                     gen_out);
    }
    if (*dot_cmd) return cmd_export_dot(dot_path);
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
  return 2;
}
