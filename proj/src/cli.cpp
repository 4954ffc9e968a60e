#include "dsicut/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dsicut/baselines.hpp"
#include "dsicut/bench.hpp"
#include "dsicut/fetch.hpp"
#include "dsicut/generators.hpp"
#include "dsicut/io.hpp"
#include "dsicut/oracle.hpp"
#include "dsicut/report.hpp"
#include "dsicut/solver.hpp"

#ifndef DSICUT_VERSION
#define DSICUT_VERSION "0.0.0"
#endif
#ifndef DSICUT_DEFAULT_REGISTRY
#define DSICUT_DEFAULT_REGISTRY "data/registry/networks.tsv"
#endif

namespace dsicut::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_raw(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// A graph argument is either "fixture:<kind>" or a file path.
struct LoadedGraph {
  DirectedGraph graph;
  json descriptor;
};

LoadedGraph load_input(const std::string& arg) {
  LoadedGraph in;
  if (arg.rfind("fixture:", 0) == 0) {
    try {
      in.graph = canonical(arg.substr(8));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    in.descriptor = {{"fixture", arg.substr(8)}};
  } else {
    in.graph = load_graph_file(arg);
    in.descriptor = {{"path", arg}, {"sha256", sha256_hex(read_raw(arg))}};
  }
  in.descriptor["vertices"] = in.graph.vertex_count();
  in.descriptor["arcs"] = in.graph.arc_count();
  return in;
}

std::string registry_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* r = std::getenv("DSICUT_REGISTRY"); r && *r) return r;
  return DSICUT_DEFAULT_REGISTRY;
}

/// Records how an output was produced, next to it, as "<output>.manifest.json".
class Manifest {
public:
  Manifest(std::string command, const std::vector<std::string>& args) : command_(std::move(command)), args_(args) {}

  json& input() { return input_; }
  json& config() { return config_; }
  void add_seed(std::uint64_t s) { seeds_.push_back(s); }
  void add_output(const fs::path& p) { outputs_.push_back(p); }

  void write() const {
    if (outputs_.empty()) return;
    json m;
    m["schema"] = manifest_schema;
    m["tool"] = "dsicut";
    m["version"] = DSICUT_VERSION;
    m["command"] = command_;
    m["argv"] = args_;
    m["input"] = input_;
    m["config"] = config_;
    m["seeds"] = seeds_;
    m["report_schema"] = report_schema;
    m["bench_schema"] = bench_schema;
    json outs = json::array();
    for (const auto& p : outputs_) outs.push_back({{"path", p.string()}, {"sha256", sha256_hex(read_raw(p))}});
    m["outputs"] = outs;
    write_file(manifest_path(outputs_.front()), dump(m));
  }

  static fs::path manifest_path(const fs::path& output) { return output.string() + ".manifest.json"; }

private:
  std::string command_;
  std::vector<std::string> args_;
  json input_ = json::object();
  json config_ = json::object();
  std::vector<std::uint64_t> seeds_;
  std::vector<fs::path> outputs_;
};

void emit(const std::string& text, const std::string& path, std::ostream& out, Manifest& manifest) {
  if (path.empty()) {
    out << text;
    return;
  }
  write_file(path, text);
  manifest.add_output(path);
}

json solver_config_json(const SolverConfig& c) {
  return {{"max_iters", c.max_iters},
          {"restarts", c.restarts},
          {"init", to_string(c.init)},
          {"seed", c.seed},
          {"threads", c.threads},
          {"pivot", c.pivot == PivotRule::smallest_id ? "smallest" : "random"},
          {"zero_tol", c.zero_tol.rel},
          {"descent_rel", c.descent_rel},
          {"spectral_max_iters", c.spectral_max_iters},
          {"spectral_tol", c.spectral_tol}};
}

struct SolverFlags {
  int restarts = 4;
  int max_iters = 1000;
  std::uint64_t seed = 0;
  std::string init = "spectral";
  std::string pivot = "smallest";
  int threads = 1;

  void attach(CLI::App* app) {
    app->add_option("--restarts", restarts, "Number of initial vectors")->check(CLI::PositiveNumber);
    app->add_option("--max-iters", max_iters, "Iteration budget T per restart")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Seed for random restarts and random pivots");
    app->add_option("--init", init, "First initial vector")
        ->check(CLI::IsMember({"spectral", "sweep", "imbalance", "random"}));
    app->add_option("--pivot", pivot, "Choice within V_b")->check(CLI::IsMember({"smallest", "random"}));
    app->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  }

  SolverConfig config() const {
    SolverConfig c;
    c.restarts = restarts;
    c.max_iters = max_iters;
    c.seed = seed;
    c.init = parse_init_strategy(init);
    c.pivot = pivot == "random" ? PivotRule::seeded_random : PivotRule::smallest_id;
    c.threads = threads;
    return c;
  }
};

std::vector<RealInstance> resolve_real_inputs(const std::string& list, const std::string& registry, std::ostream& err) {
  std::vector<RealInstance> out;
  std::optional<std::vector<RegistryEntry>> entries;
  std::istringstream in(list);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (tok.empty()) continue;
    RealInstance r;
    if (const auto eq = tok.find('='); eq != std::string::npos) {
      r.name = tok.substr(0, eq);
      r.path = tok.substr(eq + 1);
    } else if (fs::exists(tok)) {
      r.path = tok;
      r.name = fs::path(tok).filename().string();
      r.name = r.name.substr(0, r.name.find('.'));
    } else {
      if (!entries) entries = load_registry(registry);
      const auto it = std::find_if(entries->begin(), entries->end(), [&](const auto& e) { return e.name == tok; });
      if (it == entries->end()) throw DataError("'" + tok + "' is neither a file nor a registry entry");
      const FetchResult f = fetch(*it, cache_dir());
      if (f.downloaded) err << "fetched " << it->name << " -> " << f.path.string() << "\n";
      r.name = tok;
      r.path = f.path;
    }
    out.push_back(std::move(r));
  }
  if (out.empty()) throw UsageError("bench --suite real needs at least one network in --grid");
  return out;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(argc, argv, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return size_limit;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return data_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

namespace {

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directed graph conductance minimization by the DSI iteration", "dsicut"};
  app.set_version_flag("--version", DSICUT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  std::string graph_arg, out_path;
  bool no_timing = false;

  // solve
  auto* solve = app.add_subcommand("solve", "Minimize directed conductance with multi-start DSI");
  SolverFlags solver_flags;
  std::string trace_path;
  solve->add_option("graph", graph_arg, "Edge list, MatrixMarket file, or fixture:<c3|p2|p3|b2|dicycle:N|dipath:N>")
      ->required();
  solver_flags.attach(solve);
  solve->add_option("--out", out_path, "Write the JSON report here instead of stdout");
  solve->add_option("--trace-csv", trace_path, "Write the r trace as CSV");
  solve->add_flag("--no-timing", no_timing, "Write wall_time as 0 for byte-identical reports");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact minimum by exhaustive enumeration");
  Index limit = default_oracle_limit;
  oracle->add_option("graph", graph_arg, "Graph file or fixture")->required();
  oracle->add_option("--limit", limit, "Refuse graphs with more vertices")->check(CLI::Range(2, 62));
  oracle->add_option("--out", out_path, "Write the JSON result here instead of stdout");

  // gen-dsbm
  auto* gen = app.add_subcommand("gen-dsbm", "Sample a two-block directed stochastic block model");
  DsbmParams dsbm_params;
  gen->add_option("--n", dsbm_params.n, "Block size (2n vertices)")->required()->check(CLI::PositiveNumber);
  gen->add_option("--p", dsbm_params.p, "Within-block arc probability")->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--q", dsbm_params.q, "Cross-block arc probability")->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--eta", dsbm_params.eta, "Probability that a cross arc points C1 -> C2")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", dsbm_params.seed, "RNG seed")->required();
  gen->add_option("--out", out_path, "Output graph (.mtx keeps isolated vertices; .gz compresses)")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Symmetrized spectral sweep cut baseline");
  sweep->add_option("graph", graph_arg, "Graph file or fixture")->required();
  sweep->add_option("--out", out_path, "Write the JSON result here instead of stdout");

  // bench
  auto* bench = app.add_subcommand("bench", "Batch experiments with CSV output");
  std::string suite = "dsbm", grid, registry_flag;
  BenchConfig bench_cfg;
  SolverFlags bench_solver;
  bench->add_option("--suite", suite, "dsbm or real")->check(CLI::IsMember({"dsbm", "real"}));
  bench->add_option("--grid", grid,
                    "dsbm: \"p=q=0.02;eta=0,0.05,...,0.3;n=200;seeds=5\"; real: comma list of files, name=path "
                    "pairs or registry names")
      ->required();
  bench->add_option("--out-csv", out_path, "CSV output (stdout when omitted)");
  bench->add_flag("--oracle", bench_cfg.oracle, "Add the exhaustive oracle column where the size allows");
  bench->add_option("--oracle-limit", bench_cfg.oracle_limit, "Largest graph given to the oracle")
      ->check(CLI::Range(2, 30));
  bench->add_option("--cells", bench_cfg.threads, "Cells evaluated concurrently")->check(CLI::PositiveNumber);
  bench->add_option("--registry", registry_flag, "Dataset registry for named real networks");
  bench->add_flag("--no-timing", no_timing, "Write wall_time as 0 for byte-identical output");
  bench_solver.attach(bench);

  // fetch
  auto* fetch_cmd = app.add_subcommand("fetch", "Download a registered dataset into the cache");
  std::string dataset, cache_flag;
  fetch_cmd->add_option("dataset", dataset, "Registry name")->required();
  fetch_cmd->add_option("--registry", registry_flag, "Registry file (default: DSICUT_REGISTRY or the bundled one)");
  fetch_cmd->add_option("--cache", cache_flag, "Cache directory (default: DSICUT_CACHE or ~/.cache/dsicut)");

  // convert
  auto* convert = app.add_subcommand("convert", "Convert between edge list and MatrixMarket, optionally gzip");
  std::string convert_in;
  convert->add_option("input", convert_in, "Input graph")->required();
  convert->add_option("output", out_path, "Output graph; format from suffix")->required();

  // replay
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string manifest_arg;
  bool check = false;
  replay->add_option("manifest", manifest_arg, "A *.manifest.json file")->required();
  replay->add_flag("--check", check, "Compare regenerated outputs with the recorded checksums");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << DSICUT_VERSION << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << "run '" << argv[0] << " " << app.get_subcommands().front()->get_name()
                                            << " --help' for usage\n";
    return usage;
  }

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  CLI::App* cmd = app.get_subcommands().front();
  Manifest manifest(cmd->get_name(), args);

  if (cmd == solve) {
    const LoadedGraph in = load_input(graph_arg);
    const SolverConfig cfg = solver_flags.config();
    const SolveReport rep = dsi_solve(in.graph, cfg);
    manifest.input() = in.descriptor;
    manifest.config() = solver_config_json(cfg);
    manifest.config()["timing"] = !no_timing;
    manifest.add_seed(cfg.seed);
    emit(dump(to_json(in.graph, rep, !no_timing)), out_path, out, manifest);
    if (!trace_path.empty()) {
      write_file(trace_path, trace_csv(rep));
      manifest.add_output(trace_path);
    }
  } else if (cmd == oracle) {
    const LoadedGraph in = load_input(graph_arg);
    const OracleResult res = brute_conductance(in.graph, limit);
    manifest.input() = in.descriptor;
    manifest.config() = {{"limit", limit}};
    emit(dump(to_json(in.graph, res)), out_path, out, manifest);
  } else if (cmd == gen) {
    const DsbmInstance inst = dsbm(dsbm_params);
    save_graph_file(out_path, inst.graph);
    std::string labels = "vertex block\n";
    for (Index v = 0; v < inst.graph.vertex_count(); ++v)
      labels += inst.graph.label(v) + " " + (inst.block[static_cast<std::size_t>(v)] == 0 ? "C1" : "C2") + "\n";
    const std::string sidecar = out_path + ".labels";
    write_file(sidecar, labels);
    manifest.input() = {{"generator", "dsbm"}};
    manifest.config() = {{"n", dsbm_params.n}, {"p", dsbm_params.p}, {"q", dsbm_params.q}, {"eta", dsbm_params.eta}};
    manifest.add_seed(dsbm_params.seed);
    manifest.add_output(out_path);
    manifest.add_output(sidecar);
    err << "wrote " << inst.graph.vertex_count() << " vertices, " << inst.graph.arc_count() << " arcs to " << out_path
        << "\n";
  } else if (cmd == sweep) {
    const LoadedGraph in = load_input(graph_arg);
    const SweepResult res = baseline_sweep(in.graph);
    manifest.input() = in.descriptor;
    emit(dump(to_json(in.graph, res)), out_path, out, manifest);
  } else if (cmd == bench) {
    bench_cfg.solver = bench_solver.config();
    bench_cfg.timing = !no_timing;
    std::vector<BenchRow> rows;
    if (suite == "dsbm") {
      rows = run_dsbm_bench(parse_dsbm_grid(grid), bench_cfg);
      manifest.input() = {{"suite", "dsbm"}, {"grid", grid}};
    } else {
      const auto inputs = resolve_real_inputs(grid, registry_path(registry_flag), err);
      rows = run_real_bench(inputs, bench_cfg);
      json files = json::array();
      for (const auto& r : inputs) files.push_back({{"name", r.name}, {"path", r.path.string()}, {"sha256", sha256_hex(read_raw(r.path))}});
      manifest.input() = {{"suite", "real"}, {"networks", files}};
    }
    manifest.config() = solver_config_json(bench_cfg.solver);
    manifest.config()["oracle"] = bench_cfg.oracle;
    manifest.config()["oracle_limit"] = bench_cfg.oracle_limit;
    manifest.config()["timing"] = bench_cfg.timing;
    manifest.add_seed(bench_cfg.solver.seed);
    emit(bench_csv(rows), out_path, out, manifest);
  } else if (cmd == fetch_cmd) {
    const auto entries = load_registry(registry_path(registry_flag));
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.name == dataset; });
    if (it == entries.end()) throw DataError("dataset '" + dataset + "' is not in the registry");
    const FetchResult res = fetch(*it, cache_flag.empty() ? cache_dir() : fs::path(cache_flag));
    out << it->name << " " << res.path.string() << " " << res.sha256 << " " << (res.downloaded ? "downloaded" : "cached")
        << "\n";
  } else if (cmd == convert) {
    const DirectedGraph g = load_graph_file(convert_in);
    save_graph_file(out_path, g);
    manifest.input() = {{"path", convert_in}, {"sha256", sha256_hex(read_raw(convert_in))}};
    manifest.add_output(out_path);
  } else if (cmd == replay) {
    const json m = json::parse(read_raw(manifest_arg), nullptr, false);
    if (m.is_discarded() || !m.contains("argv") || m.value("schema", "") != manifest_schema)
      throw DataError(manifest_arg + " is not a dsicut manifest");
    if (m["input"].contains("sha256") && m["input"].contains("path")) {
      const std::string path = m["input"]["path"];
      if (sha256_hex(read_raw(path)) != m["input"]["sha256"]) throw DataError("input " + path + " changed since the manifest was written");
    }
    std::vector<std::string> rargs{"dsicut"};
    for (const auto& a : m["argv"]) rargs.push_back(a.get<std::string>());
    std::vector<const char*> rargv;
    for (const auto& a : rargs) rargv.push_back(a.c_str());
    const int rc = run(static_cast<int>(rargv.size()), rargv.data(), out, err);
    if (rc != ok || !check) return rc;
    bool same = true;
    for (const auto& o : m["outputs"]) {
      const std::string path = o["path"];
      const bool match = fs::exists(path) && sha256_hex(read_raw(path)) == o["sha256"];
      err << (match ? "identical " : "DIFFERENT ") << path << "\n";
      same = same && match;
    }
    return same ? ok : data_error;
  }
  manifest.write();
  return ok;
}

}  // namespace

}  // namespace dsicut::cli
