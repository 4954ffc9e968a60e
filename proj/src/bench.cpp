#include "dsicut/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dsicut/baselines.hpp"
#include "dsicut/generators.hpp"
#include "dsicut/io.hpp"
#include "dsicut/oracle.hpp"

namespace dsicut {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double parse_number(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != tok.size() || !std::isfinite(v)) throw std::invalid_argument("bad number '" + tok + "'");
  return v;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_phi(const std::optional<double>& v) { return v ? fmt("%.12g", *v) : std::string(); }

void run_cells(std::size_t count, int threads, const std::function<void(std::size_t)>& cell) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) cell(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < count;) {
      try {
        cell(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto width = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<std::string> toks;
  for (const auto& t : split(text, ',')) toks.push_back(strip(t));
  if (toks.empty()) throw std::invalid_argument("empty value list");
  std::vector<double> out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i] != "...") {
      out.push_back(parse_number(toks[i]));
      continue;
    }
    if (out.size() < 2 || i + 1 != toks.size() - 1)
      throw std::invalid_argument("'...' needs two leading values and one final value: '" + text + "'");
    const double a = out[out.size() - 2], step = out.back() - a, last = parse_number(toks[i + 1]);
    if (!(step > 0.0) || last < out.back()) throw std::invalid_argument("'...' needs an increasing progression");
    const auto steps = static_cast<long>(std::llround((last - a) / step));
    if (std::abs(a + static_cast<double>(steps) * step - last) > 1e-9 * std::max(1.0, std::abs(last)))
      throw std::invalid_argument("'" + text + "' does not land on its final value");
    out.resize(out.size() - 1);
    // Multiply instead of accumulating, then round away binary noise (0.15000000000000002).
    for (long k = 1; k <= steps; ++k) out.push_back(std::round((a + static_cast<double>(k) * step) * 1e12) / 1e12);
    break;
  }
  return out;
}

DsbmGrid parse_dsbm_grid(const std::string& spec) {
  DsbmGrid grid;
  for (const auto& raw : split(spec, ';')) {
    const std::string part = strip(raw);
    if (part.empty()) continue;
    const auto eq = part.rfind('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid entry '" + part + "' has no '='");
    const std::string key = strip(part.substr(0, eq)), value = strip(part.substr(eq + 1));
    if (key == "p=q" || key == "q=p") {
      grid.p = parse_value_list(value);
      grid.p_equals_q = true;
    } else if (key == "p") {
      grid.p = parse_value_list(value);
    } else if (key == "q") {
      grid.q = parse_value_list(value);
    } else if (key == "eta") {
      grid.eta = parse_value_list(value);
    } else if (key == "n") {
      for (double v : parse_value_list(value)) {
        if (v < 1 || v != std::floor(v)) throw std::invalid_argument("n must be a positive integer");
        grid.n.push_back(static_cast<Index>(v));
      }
    } else if (key == "seeds") {
      const double k = parse_number(value);
      if (k < 1 || k != std::floor(k)) throw std::invalid_argument("seeds must be a positive count");
      grid.seeds.clear();
      for (std::uint64_t s = 1; s <= static_cast<std::uint64_t>(k); ++s) grid.seeds.push_back(s);
    } else if (key == "seed") {
      grid.seeds.clear();
      for (double v : parse_value_list(value)) {
        if (v < 0 || v != std::floor(v)) throw std::invalid_argument("seed values must be nonnegative integers");
        grid.seeds.push_back(static_cast<std::uint64_t>(v));
      }
    } else if (key == "oracle") {
      if (value != "0" && value != "1") throw std::invalid_argument("oracle must be 0 or 1");
      grid.oracle = value == "1";
    } else {
      throw std::invalid_argument("unknown grid key '" + key + "'");
    }
  }
  if (grid.p.empty()) throw std::invalid_argument("grid needs p (or p=q)");
  if (!grid.p_equals_q && grid.q.empty()) throw std::invalid_argument("grid needs q (or p=q)");
  if (grid.p_equals_q && !grid.q.empty()) throw std::invalid_argument("grid sets both p=q and q");
  if (grid.eta.empty()) throw std::invalid_argument("grid needs eta");
  if (grid.n.empty()) throw std::invalid_argument("grid needs n");
  if (grid.seeds.empty()) grid.seeds.push_back(1);
  return grid;
}

std::vector<BenchRow> run_dsbm_bench(const DsbmGrid& grid, const BenchConfig& cfg) {
  std::vector<DsbmParams> cells;
  for (double p : grid.p)
    for (double q : grid.p_equals_q ? std::vector<double>{p} : grid.q)
      for (double eta : grid.eta)
        for (Index n : grid.n)
          for (std::uint64_t seed : grid.seeds) {
            DsbmParams prm{n, p, q, eta, seed};
            validate(prm);
            cells.push_back(prm);
          }

  std::vector<BenchRow> rows(cells.size());
  const bool oracle = cfg.oracle || grid.oracle;
  run_cells(cells.size(), cfg.threads, [&](std::size_t k) {
    const DsbmParams& prm = cells[k];
    const DsbmInstance inst = dsbm(prm);
    BenchRow& row = rows[k];
    std::ostringstream name, params;
    name << "dsbm-n" << prm.n << "-p" << prm.p << "-q" << prm.q << "-eta" << prm.eta << "-s" << prm.seed;
    params << "n=" << prm.n << ";p=" << prm.p << ";q=" << prm.q << ";eta=" << prm.eta << ";seed=" << prm.seed;
    row.instance = name.str();
    row.params = params.str();
    if (inst.graph.arc_count() == 0) throw DegenerateError(row.instance + ": realization has no arcs");
    const SolveReport rep = dsi_solve(inst.graph, cfg.solver);
    row.dsi_phi = rep.best_r;
    row.iters = rep.iterations;
    row.wall_time = cfg.timing ? rep.wall_time : 0.0;
    row.certificate = to_string(rep.certificate);
    row.initialization = rep.initialization;
    row.sweep_phi = baseline_sweep(inst.graph, cfg.solver.spectral_max_iters, cfg.solver.spectral_tol).phi;
    try {
      row.planted_phi = conductance_set(inst.graph, inst.first_block()).phi_d;
    } catch (const DegenerateError&) {
    }
    if (oracle && inst.graph.vertex_count() <= cfg.oracle_limit)
      row.oracle_phi = brute_conductance(inst.graph, cfg.oracle_limit).phi_d_min;
  });
  return rows;
}

std::vector<BenchRow> run_real_bench(const std::vector<RealInstance>& inputs, const BenchConfig& cfg) {
  std::vector<BenchRow> rows(inputs.size());
  run_cells(inputs.size(), cfg.threads, [&](std::size_t k) {
    const DirectedGraph full = load_graph_file(inputs[k].path);
    const Subgraph comp = largest_weak_component(full);
    const DirectedGraph& g = comp.graph;
    BenchRow& row = rows[k];
    row.instance = inputs[k].name;
    std::ostringstream params;
    params << "n=" << full.vertex_count() << ";m=" << full.arc_count() << ";c_n=" << g.vertex_count()
           << ";c_m=" << g.arc_count() << ";component=weak";
    row.params = params.str();
    const SolveReport rep = dsi_solve(g, cfg.solver);
    row.dsi_phi = rep.best_r;
    row.iters = rep.iterations;
    row.wall_time = cfg.timing ? rep.wall_time : 0.0;
    row.certificate = to_string(rep.certificate);
    row.initialization = rep.initialization;
    row.sweep_phi = baseline_sweep(g, cfg.solver.spectral_max_iters, cfg.solver.spectral_tol).phi;
    if (cfg.oracle && g.vertex_count() <= cfg.oracle_limit)
      row.oracle_phi = brute_conductance(g, cfg.oracle_limit).phi_d_min;
  });
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out =
      "instance,params,dsi_phi,sweep_phi,oracle_phi,planted_phi,iters,wall_time,certificate,initialization\n";
  for (const BenchRow& r : rows) {
    out += r.instance + "," + r.params + "," + fmt("%.12g", r.dsi_phi) + "," + fmt("%.12g", r.sweep_phi) + "," +
           fmt_phi(r.oracle_phi) + "," + fmt_phi(r.planted_phi) + "," + std::to_string(r.iters) + "," +
           fmt("%.6f", r.wall_time) + "," + r.certificate + "," + r.initialization + "\n";
  }
  return out;
}

}  // namespace dsicut
