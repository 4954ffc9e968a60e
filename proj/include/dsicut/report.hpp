#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dsicut/baselines.hpp"
#include "dsicut/oracle.hpp"
#include "dsicut/solver.hpp"

namespace dsicut {

inline constexpr const char* report_schema = "dsicut.report/1";
inline constexpr const char* bench_schema = "dsicut.bench/1";
inline constexpr const char* manifest_schema = "dsicut.manifest/1";

/// Natural order: labels that parse as integers compare numerically and sort
/// before all other labels, which compare lexicographically.
bool label_less(std::string_view a, std::string_view b);

/// Original labels of the members of s, naturally sorted.
std::vector<std::string> sorted_labels(const DirectedGraph& g, const VertexSubset& s);

/// SolveReport as JSON.  With timing off, wall_time is written as 0 so the
/// document is reproducible byte for byte.
nlohmann::json to_json(const DirectedGraph& g, const SolveReport& rep, bool timing = true);
nlohmann::json to_json(const DirectedGraph& g, const OracleResult& res);
nlohmann::json to_json(const DirectedGraph& g, const SweepResult& res);

/// "k,r" rows of the r trace, k starting at 1.
std::string trace_csv(const SolveReport& rep);

/// Pretty JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace dsicut
