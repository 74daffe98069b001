// vflow: command-line driver.
//
//   vflow analyze <file.vf> [--client npd|taint --spec f] [--mode segment|naive]
//   vflow generate --shape wide --functions 8 --branching 2 --seed 1
//   vflow bench <file.vf> --threads 1,2,4
//   vflow dump gvfg|segments|vfsg|segment-paths <file.vf>
//
// Exit status: 0 ran clean, 2 alarms reported, 1 error.

#include "vflow/bench.hpp"
#include "vflow/generator.hpp"
#include "vflow/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace vflow;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

struct Common {
  std::string file;
  std::string client = "npd";
  std::string spec;
  std::optional<int> threads;
  int unroll = kDefaultUnroll;
  long budget_ms = logic::kDefaultBudget.count();
  int depth = kDefaultContextDepth;
  int max_segments = Bounds{}.max_segments;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("file", file, "input program (.vf)")->required();
    app->add_option("--client", client, "npd or taint")->check(CLI::IsMember({"npd", "taint"}));
    app->add_option("--spec", spec, "taint specification file");
    app->add_option("--threads", threads, "worker threads (default: VFLOW_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    app->add_option("--unroll", unroll, "loop unrolling depth")->check(CLI::NonNegativeNumber);
    app->add_option("--budget-ms", budget_ms, "solver budget per condition in ms; 0 treats every check as timed out");
    app->add_option("--depth", depth, "call-context depth bound")->check(CLI::PositiveNumber);
    app->add_option("--max-segments", max_segments, "segments per path bound")->check(CLI::PositiveNumber);
    app->add_option("--out", out, "write output to a file instead of stdout");
  }

  ClientSpec client_spec() const {
    if (client == "npd") return npd_spec();
    if (spec.empty()) throw std::runtime_error("--client taint requires --spec <file>");
    return taint_spec_file(spec);
  }

  AnalyzeOptions options() const {
    AnalyzeOptions o;
    o.unroll = unroll;
    o.budget = logic::Budget(budget_ms);
    o.bounds.context_depth = depth;
    o.bounds.max_segments = max_segments;
    return o;
  }
};

std::vector<int> parse_thread_list(const std::string& s) {
  std::vector<int> r;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int t = std::stoi(item);
    if (t < 1) throw std::runtime_error("thread counts must be >= 1");
    r.push_back(t);
  }
  if (r.empty()) throw std::runtime_error("empty thread list");
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{"Parallel path-sensitive value-flow analysis"};
  app.require_subcommand(1);

  Common analyze_args;
  std::string mode = "segment";
  bool timing = false;
  auto* analyze = app.add_subcommand("analyze", "analyze a program and print a JSON report");
  analyze_args.add_to(analyze);
  analyze->add_option("--mode", mode, "segment or naive")->check(CLI::IsMember({"segment", "naive"}));
  analyze->add_flag("--timing", timing, "include phase timings in the report");

  std::string shape = "wide";
  ShapeOptions gen;
  std::optional<uint64_t> random_seed;
  std::string gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "emit a synthetic program");
  generate_cmd->add_option("--shape", shape, "chain, wide or diamond")
      ->check(CLI::IsMember({"chain", "wide", "diamond"}));
  generate_cmd->add_option("--functions,-n", gen.functions, "shape size")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--branching,-b", gen.branching, "branch diamonds per function")
      ->check(CLI::NonNegativeNumber);
  generate_cmd->add_option("--seed", gen.seed, "random seed");
  generate_cmd->add_option("--random", random_seed, "emit a random program for this seed instead of a shape");
  generate_cmd->add_option("--out", gen_out, "write output to a file instead of stdout");

  Common bench_args;
  std::string thread_list = "1,2,4";
  int runs = kDefaultBenchRuns;
  auto* bench_cmd = app.add_subcommand("bench", "measure self-speedup of the segment engine");
  bench_args.add_to(bench_cmd);
  bench_cmd->remove_option(bench_cmd->get_option("--threads"));
  bench_cmd->add_option("--threads", thread_list, "comma-separated thread counts");
  bench_cmd->add_option("--runs", runs, "runs per setting (median reported)")->check(CLI::PositiveNumber);

  Common dump_args;
  std::string what;
  auto* dump = app.add_subcommand("dump", "print an intermediate structure");
  dump->add_option("what", what, "gvfg, segments, vfsg or segment-paths")
      ->required()
      ->check(CLI::IsMember({"gvfg", "segments", "vfsg", "segment-paths"}));
  dump_args.add_to(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*analyze) {
      ClientSpec client = analyze_args.client_spec();
      AnalyzeOptions opts = analyze_args.options();
      opts.mode = mode == "naive" ? Mode::Naive : Mode::Segment;
      opts.timing = timing;
      ThreadPool pool(resolve_thread_count(analyze_args.threads));
      Analysis a = run_analysis(read_file(analyze_args.file), client, opts, pool);
      write_output(analyze_args.out, render_report(a, client, opts));
      return exit_code_for(a);
    }
    if (*generate_cmd) {
      if (random_seed) {
        write_output(gen_out, random_program(*random_seed));
      } else {
        gen.shape = *parse_shape(shape);
        write_output(gen_out, generate(gen));
      }
      return 0;
    }
    if (*bench_cmd) {
      auto rows = bench(read_file(bench_args.file), bench_args.client_spec(), parse_thread_list(thread_list), runs,
                        bench_args.options());
      write_output(bench_args.out, render_bench_table(rows));
      return 0;
    }
    if (*dump) {
      ClientSpec client = dump_args.client_spec();
      AnalyzeOptions opts = dump_args.options();
      std::ostringstream os;
      std::string source = read_file(dump_args.file);
      if (what == "gvfg") {
        Program prog = parse(source);
        Frontend fe;
        fe.program = resolve_pointers(to_ssa(unroll_loops(prog, opts.unroll)));
        fe.call_graph = build_call_graph(fe.program);
        write_gvfg(os, *build_marked_gvfg(fe, client));
      } else {
        ThreadPool pool(resolve_thread_count(dump_args.threads));
        Analysis a = run_analysis(source, client, opts, pool);
        if (what == "segments") write_segments(os, *a.gvfg, a.vfsg->segments);
        if (what == "vfsg") write_dot(os, *a.vfsg);
        if (what == "segment-paths") write_segment_paths(os, a.explored);
      }
      write_output(dump_args.out, os.str());
      return 0;
    }
  } catch (const FrontendError& e) {
    std::cerr << "vflow: " << analyze_args.file << dump_args.file << bench_args.file << ":" << e.line() << ":"
              << e.column() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "vflow: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
