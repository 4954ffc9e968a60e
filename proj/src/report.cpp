#include "dsicut/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include <openssl/evp.h>

namespace dsicut {

namespace {

bool as_integer(std::string_view s, long long& v) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

nlohmann::json label_array(const DirectedGraph& g, const VertexSubset& s) {
  return nlohmann::json(sorted_labels(g, s));
}

}  // namespace

bool label_less(std::string_view a, std::string_view b) {
  long long x = 0, y = 0;
  const bool ia = as_integer(a, x), ib = as_integer(b, y);
  if (ia && ib) return x != y ? x < y : a < b;
  if (ia != ib) return ia;
  return a < b;
}

std::vector<std::string> sorted_labels(const DirectedGraph& g, const VertexSubset& s) {
  std::vector<std::string> out;
  for (Index v : s.members()) out.push_back(g.label(v));
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) { return label_less(a, b); });
  return out;
}

nlohmann::json to_json(const DirectedGraph& g, const SolveReport& rep, bool timing) {
  nlohmann::json j;
  j["schema"] = report_schema;
  j["kind"] = "solve";
  j["vertices"] = g.vertex_count();
  j["arcs"] = g.arc_count();
  j["best_r"] = rep.best_r;
  j["best_set"] = label_array(g, rep.best_set);
  j["complement_size"] = g.vertex_count() - rep.best_set.size();
  j["certificate"] = to_string(rep.certificate);
  j["is_flip_local_opt"] = rep.is_flip_local_opt;
  j["iterations"] = rep.iterations;
  j["r_trace"] = rep.r_trace;
  j["initialization"] = rep.initialization;
  j["restart_index"] = rep.restart_index;
  j["zero_entries"] = rep.zero_entries;
  nlohmann::json x = nlohmann::json::object();
  std::vector<Index> order(static_cast<std::size_t>(g.vertex_count()));
  for (Index v = 0; v < g.vertex_count(); ++v) order[static_cast<std::size_t>(v)] = v;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return label_less(g.label(a), g.label(b)); });
  nlohmann::json labels = nlohmann::json::array(), values = nlohmann::json::array();
  for (Index v : order) {
    labels.push_back(g.label(v));
    values.push_back(rep.best_x.size() == g.vertex_count() ? rep.best_x[v] : 0.0);
  }
  j["best_x"] = {{"labels", labels}, {"values", values}};
  j["wall_time"] = timing ? rep.wall_time : 0.0;
  return j;
}

nlohmann::json to_json(const DirectedGraph& g, const OracleResult& res) {
  nlohmann::json j;
  j["schema"] = report_schema;
  j["kind"] = "oracle";
  j["vertices"] = g.vertex_count();
  j["arcs"] = g.arc_count();
  j["phi_d_min"] = res.phi_d_min;
  j["phi_plus_min"] = res.phi_plus_min;
  j["phi_minus_min"] = res.phi_minus_min;
  j["argmin_d"] = label_array(g, res.argmin_d);
  j["argmin_plus"] = label_array(g, res.argmin_plus);
  j["argmin_minus"] = label_array(g, res.argmin_minus);
  j["subsets_enumerated"] = res.subsets_enumerated;
  return j;
}

nlohmann::json to_json(const DirectedGraph& g, const SweepResult& res) {
  nlohmann::json j;
  j["schema"] = report_schema;
  j["kind"] = "sweep";
  j["embedding"] = "symmetrized-spectral";
  j["vertices"] = g.vertex_count();
  j["arcs"] = g.arc_count();
  j["phi"] = res.phi;
  j["set"] = label_array(g, res.set);
  return j;
}

std::string trace_csv(const SolveReport& rep) {
  std::string out = "k,r\n";
  char buf[64];
  for (std::size_t k = 0; k < rep.r_trace.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k + 1, rep.r_trace[k]);
    out += buf;
  }
  return out;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

}  // namespace dsicut
