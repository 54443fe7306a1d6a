#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "genfloor/eval.hpp"
#include "genfloor/extend.hpp"
#include "genfloor/model.hpp"
#include "genfloor/placement.hpp"
#include "genfloor/search.hpp"
#include "genfloor/tree.hpp"

namespace genfloor {

using Json = nlohmann::ordered_json;

// Lengths are written as decimals in input units and read back through
// to_micro, so a write/read cycle is exact.

Json problem_to_json(const Problem& problem);
/// Throws ValidationError on schema or semantic errors.
Problem problem_from_json(const Json& j);

/// Binary: {label, id, left, right}; n-ary: {label, id, children}. The n-ary
/// root has label null. `reqs` supplies ids and may be empty.
Json tree_to_json(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs = {});
LayoutTree tree_from_json(const Json& j, TreeKind kind, int n);

Json floorplan_to_json(const Floorplan& fp);
Floorplan floorplan_from_json(const Json& j);

/// {adjacency:{count, required, per_goal}, bounding:{x, y, w, h, area},
///  distances:{id: gap to the nearest goal partner}, inside: bool|null}
Json evaluation_report(const Floorplan& fp, const Problem& problem, Priority level = Priority::L1);

Json extended_to_json(const ExtendedLayout& ex);
Json allocated_to_json(const AllocatedLayout& layout);

Json config_to_json(const GAConfig& config);
/// Missing keys keep their defaults.
GAConfig config_from_json(const Json& j);

Json history_to_json(const std::vector<GenerationStats>& history);
std::string history_csv(const std::vector<GenerationStats>& history);
Json solution_to_json(const Solution& s);

/// Writes config.json, history.csv and pareto/NNN.json under `dir`.
void write_run_artifacts(const std::filesystem::path& dir, const Problem& problem, const GAConfig& config,
                         const RunResult& result);

/// Problem from a requirements CSV, with the given representation.
Problem problem_from_csv(std::string_view content, Method representation = Method::bstar_available_nodes);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
/// Parses a JSON document, mapping parse errors to ValidationError.
Json parse_json(std::string_view text);

}  // namespace genfloor
