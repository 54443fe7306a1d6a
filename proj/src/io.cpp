#include "genfloor/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

namespace genfloor {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what)
{
    throw ValidationError(where + ": " + what);
}

template <class T>
T get_or(const Json& j, const char* key, T fallback)
{
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        schema_error(key, "has the wrong type");
    }
}

const Json& require(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) schema_error(where, std::string("missing '") + key + "'");
    return j.at(key);
}

Length length_from(const Json& v, const std::string& where)
{
    if (!v.is_number()) schema_error(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) schema_error(where, "expected a finite number");
    return to_micro(d);
}

std::optional<Edge> edge_from(const Json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_string()) schema_error(key, "expected a string");
    return parse_edge(j.at(key).get<std::string>());
}

Json edge_json(const std::optional<Edge>& e) { return e ? Json(std::string(to_string(*e))) : Json(nullptr); }

Json rect_json(const Rect& r) { return Json{{"x", r.x0}, {"y", r.y0}, {"w", r.width()}, {"h", r.height()}}; }

// Infinity and NaN have no JSON spelling.
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

// ---------------------------------------------------------------------------
// Problem

Json problem_to_json(const Problem& problem)
{
    Json reqs = Json::array();
    for (const auto& r : problem.requirements) {
        reqs.push_back({{"id", r.id},
                        {"name", r.name},
                        {"width", from_micro(r.width)},
                        {"height", from_micro(r.height)},
                        {"rotatable", r.rotatable},
                        {"flexible", r.flexible},
                        {"anchor_edge", edge_json(r.anchor_edge)},
                        {"facing", edge_json(r.facing)}});
    }
    Json goals = Json::array();
    for (const auto& g : problem.goals.pairs()) {
        goals.push_back({{"a", problem.requirements[g.a].id},
                         {"b", problem.requirements[g.b].id},
                         {"priority", std::string(to_string(g.priority))}});
    }
    Json j{{"requirements", reqs}, {"goals", goals}};
    if (!problem.boundary) {
        j["boundary"] = nullptr;
    } else if (problem.boundary->is_rectangle) {
        j["boundary"] = {{"rect", {problem.boundary->width(), problem.boundary->height()}}};
    } else {
        Json poly = Json::array();
        for (const auto& p : problem.boundary->polygon) poly.push_back({p.x, p.y});
        j["boundary"] = {{"polygon", poly}};
    }
    j["representation"] = std::string(to_string(problem.representation));
    j["use_rotation_genes"] = problem.use_rotation_genes;
    return j;
}

Problem problem_from_json(const Json& j)
{
    if (!j.is_object()) schema_error("problem", "expected an object");
    Problem p;
    const Json& reqs = require(j, "requirements", "problem");
    if (!reqs.is_array()) schema_error("requirements", "expected an array");
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        const Json& r = reqs[i];
        const std::string where = fmt::format("requirements[{}]", i);
        if (!r.is_object()) schema_error(where, "expected an object");
        SpatialRequirement q;
        const Json& id = require(r, "id", where);
        if (!id.is_string()) schema_error(where + ".id", "expected a string");
        q.id = id.get<std::string>();
        q.name = get_or<std::string>(r, "name", q.id);
        q.width = length_from(require(r, "width", where), where + ".width");
        q.height = length_from(require(r, "height", where), where + ".height");
        q.rotatable = get_or<bool>(r, "rotatable", false);
        q.flexible = get_or<bool>(r, "flexible", true);
        q.anchor_edge = edge_from(r, "anchor_edge");
        q.facing = edge_from(r, "facing");
        p.requirements.push_back(std::move(q));
    }
    if (j.contains("goals") && !j.at("goals").is_null()) {
        const Json& goals = j.at("goals");
        if (!goals.is_array()) schema_error("goals", "expected an array");
        for (std::size_t i = 0; i < goals.size(); ++i) {
            const Json& g = goals[i];
            const std::string where = fmt::format("goals[{}]", i);
            if (!g.is_object() || !g.contains("a") || !g.contains("b") || !g.at("a").is_string() || !g.at("b").is_string())
                schema_error(where, "expected {a, b, priority} with string ids");
            const int a = p.index_of(g.at("a").get<std::string>());
            const int b = p.index_of(g.at("b").get<std::string>());
            if (a < 0 || b < 0) schema_error(where, "references an unknown requirement");
            if (a == b) schema_error(where, "a space cannot be its own adjacency goal");
            p.goals.declare(a, b, parse_priority(get_or<std::string>(g, "priority", "L1")));
        }
    }
    if (j.contains("boundary") && !j.at("boundary").is_null()) {
        const Json& b = j.at("boundary");
        if (b.contains("rect")) {
            const Json& r = b.at("rect");
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
                schema_error("boundary.rect", "expected [width, height]");
            const double w = r[0].get<double>(), h = r[1].get<double>();
            if (!(w > 0) || !(h > 0)) schema_error("boundary.rect", "width and height must be positive");
            p.boundary = Boundary::rectangle(w, h);
        } else if (b.contains("polygon")) {
            Boundary poly;
            for (const auto& pt : b.at("polygon")) {
                if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
                    schema_error("boundary.polygon", "expected [[x, y], ...]");
                poly.polygon.push_back({pt[0].get<double>(), pt[1].get<double>()});
            }
            p.boundary = std::move(poly);
        } else {
            schema_error("boundary", "expected {rect: [w, h]} or {polygon: [[x, y], ...]}");
        }
    }
    p.representation = parse_method(get_or<std::string>(j, "representation", "bstar_available_nodes"));
    p.use_rotation_genes = get_or<bool>(j, "use_rotation_genes", false);
    p.validate();
    return p;
}

Problem problem_from_csv(std::string_view content, Method representation)
{
    auto table = load_requirements_csv(content);
    Problem p;
    p.requirements = std::move(table.requirements);
    p.goals = std::move(table.goals);
    p.representation = representation;
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// Trees

namespace {

Json node_json(const LayoutTree& t, NodeId id, const std::vector<SpatialRequirement>& reqs)
{
    Json j;
    const bool synthetic = t.kind() == TreeKind::nary && id == t.root();
    j["label"] = synthetic ? Json(nullptr) : Json(LayoutTree::requirement_index(id));
    const int idx = LayoutTree::requirement_index(id);
    j["id"] = !synthetic && idx < static_cast<int>(reqs.size()) ? Json(reqs[idx].id) : Json(nullptr);
    if (t.kind() == TreeKind::binary) {
        j["left"] = t.left(id) == kNoNode ? Json(nullptr) : node_json(t, t.left(id), reqs);
        j["right"] = t.right(id) == kNoNode ? Json(nullptr) : node_json(t, t.right(id), reqs);
    } else {
        Json kids = Json::array();
        for (NodeId c : t.children(id)) kids.push_back(node_json(t, c, reqs));
        j["children"] = std::move(kids);
    }
    return j;
}

struct Links {
    std::vector<NodeId> parent, left, right;
    std::vector<std::vector<NodeId>> children;
    std::vector<bool> seen;
};

NodeId read_node(const Json& j, TreeKind kind, int n, NodeId parent, Links& links, int depth)
{
    if (depth > 4 * n + 8) schema_error("tree", "nesting is deeper than the node count allows");
    if (!j.is_object() || !j.contains("label")) schema_error("tree", "node without a label");
    NodeId id;
    if (j.at("label").is_null()) {
        if (kind != TreeKind::nary || parent != kNoNode) schema_error("tree", "only the n-ary root may be unlabeled");
        id = 0;
    } else {
        if (!j.at("label").is_number_integer()) schema_error("tree", "label must be an integer");
        const int label = j.at("label").get<int>();
        if (label < 0 || label >= n) schema_error("tree", fmt::format("label {} is out of range", label));
        id = LayoutTree::node_for(label);
    }
    if (links.seen[id]) schema_error("tree", "node appears twice");
    links.seen[id] = true;
    links.parent[id] = parent;
    if (kind == TreeKind::binary) {
        for (const char* side : {"left", "right"}) {
            if (!j.contains(side) || j.at(side).is_null()) continue;
            NodeId c = read_node(j.at(side), kind, n, id, links, depth + 1);
            (side[0] == 'l' ? links.left : links.right)[id] = c;
        }
    } else if (j.contains("children")) {
        for (const auto& c : j.at("children")) links.children[id].push_back(read_node(c, kind, n, id, links, depth + 1));
    }
    return id;
}

}  // namespace

Json tree_to_json(const LayoutTree& tree, const std::vector<SpatialRequirement>& reqs)
{
    if (tree.root() == kNoNode) return nullptr;
    return node_json(tree, tree.root(), reqs);
}

LayoutTree tree_from_json(const Json& j, TreeKind kind, int n)
{
    if (n < 1) schema_error("tree", "empty tree");
    Links links;
    links.parent.assign(n + 1, kNoNode);
    links.left.assign(n + 1, kNoNode);
    links.right.assign(n + 1, kNoNode);
    links.children.assign(n + 1, {});
    links.seen.assign(n + 1, false);
    const NodeId root = read_node(j, kind, n, kNoNode, links, 0);
    return tree_from_links(kind, root, links.parent, links.left, links.right, links.children);
}

// ---------------------------------------------------------------------------
// Floorplans

Json floorplan_to_json(const Floorplan& fp)
{
    Json blocks = Json::array();
    for (const auto& b : fp.blocks) {
        Json o;
        o["id"] = b.id;
        o["label"] = b.label;
        o["x"] = from_micro(b.x);
        o["y"] = from_micro(b.y);
        o["w"] = from_micro(b.w);
        o["h"] = from_micro(b.h);
        o["rotated"] = b.rotated;
        blocks.push_back(std::move(o));
    }
    Json j;
    j["representation"] = std::string(to_string(fp.representation));
    j["blocks"] = std::move(blocks);
    j["tree"] = tree_to_json(fp.tree);
    return j;
}

Floorplan floorplan_from_json(const Json& j)
{
    if (!j.is_object()) schema_error("floorplan", "expected an object");
    Floorplan fp;
    fp.representation = parse_method(get_or<std::string>(j, "representation", "bstar_available_nodes"));
    const Json& blocks = require(j, "blocks", "floorplan");
    if (!blocks.is_array()) schema_error("blocks", "expected an array");
    std::vector<bool> used(blocks.size(), false);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Json& b = blocks[i];
        const std::string where = fmt::format("blocks[{}]", i);
        SpatialBlock s;
        s.id = get_or<std::string>(b, "id", "");
        s.label = get_or<int>(b, "label", static_cast<int>(i));
        if (s.label < 0 || s.label >= static_cast<int>(blocks.size()) || used[s.label])
            schema_error(where, "label is out of range or repeated");
        used[s.label] = true;
        s.x = length_from(require(b, "x", where), where + ".x");
        s.y = length_from(require(b, "y", where), where + ".y");
        s.w = length_from(require(b, "w", where), where + ".w");
        s.h = length_from(require(b, "h", where), where + ".h");
        if (s.w <= 0 || s.h <= 0) schema_error(where, "block dimensions must be positive");
        s.rotated = get_or<bool>(b, "rotated", false);
        fp.blocks.push_back(std::move(s));
    }
    if (j.contains("tree") && !j.at("tree").is_null() && !fp.blocks.empty())
        fp.tree = tree_from_json(j.at("tree"), tree_kind_for(fp.representation), static_cast<int>(fp.blocks.size()));
    return fp;
}

// ---------------------------------------------------------------------------
// Reports

Json evaluation_report(const Floorplan& fp, const Problem& problem, Priority level)
{
    for (const auto& b : fp.blocks)
        if (b.label < 0 || b.label >= static_cast<int>(problem.size()))
            throw ValidationError("layout block '" + b.id + "' has no requirement in the problem");
    const auto entries = problem.goals.entries(level);
    const auto report = adjacency_check(resulted_adjacency(fp), entries);

    Json per_goal = Json::array();
    for (const auto& c : report.per_goal) {
        if (c.goal.a > c.goal.b) continue;  // one row per pair; the count still covers both entries
        per_goal.push_back({{"a", problem.requirements[c.goal.a].id},
                            {"b", problem.requirements[c.goal.b].id},
                            {"priority", std::string(to_string(c.goal.priority))},
                            {"achieved", c.achieved}});
    }
    const auto box = bounding_area(fp);
    Json distances = Json::object();
    for (const auto& b : fp.blocks) {
        std::vector<SpatialBlock> partners;
        for (const auto& g : entries)
            if (g.a == b.label)
                if (const auto* o = fp.find(g.b)) partners.push_back(*o);
        if (!partners.empty()) distances[b.id] = closest_distance(b, partners);
    }
    Json j{{"adjacency", {{"count", report.achieved_count}, {"required", entries.size()}, {"per_goal", per_goal}}},
           {"bounding",
            {{"x", from_micro(box.x0)},
             {"y", from_micro(box.y0)},
             {"w", from_micro(box.width())},
             {"h", from_micro(box.height())},
             {"area", box.area()}}},
           {"distances", distances}};
    j["inside"] = problem.boundary ? Json(within_boundary(fp, problem.boundary->polygon).all_inside) : Json(nullptr);
    return j;
}

Json extended_to_json(const ExtendedLayout& ex)
{
    Json blocks = Json::array();
    for (const auto& b : ex.blocks) {
        Json r = rect_json(b.rect);
        r["id"] = b.id;
        r["label"] = b.label;
        blocks.push_back(std::move(r));
    }
    return Json{{"boundary", {{"w", ex.boundary.width()}, {"h", ex.boundary.height()}}},
                {"scale", {ex.sx, ex.sy}},
                {"penalty", ex.penalty},
                {"coverage", ex.penalty ? Json(nullptr) : Json(ex.coverage())},
                {"blocks", blocks}};
}

Json allocated_to_json(const AllocatedLayout& layout)
{
    Json blocks = Json::array();
    for (const auto& b : layout.blocks) {
        Json r = rect_json(b.rect);
        r["id"] = b.id;
        r["label"] = b.label;
        r["flexible"] = b.flexible;
        r["feasible"] = b.feasible;
        r["facing"] = edge_json(b.facing);
        blocks.push_back(std::move(r));
    }
    return Json{{"boundary", {{"w", layout.boundary.width()}, {"h", layout.boundary.height()}}}, {"blocks", blocks}};
}

// ---------------------------------------------------------------------------
// Search configuration and runs

Json config_to_json(const GAConfig& c)
{
    Json objectives = Json::array();
    for (auto o : c.objectives) objectives.push_back(std::string(to_string(o)));
    return Json{{"population", c.population},
                {"generations", c.generations},
                {"crossover_rate", c.crossover_rate},
                {"mutation_rate", c.mutation_rate},
                {"seed", c.seed},
                {"objectives", objectives},
                {"constraints", {{"fit_boundary", c.constraints.fit_boundary}, {"no_penalty", c.constraints.no_penalty}}},
                {"goal_level", std::string(to_string(c.goal_level))},
                {"workers", c.workers}};
}

GAConfig config_from_json(const Json& j)
{
    if (j.is_null()) return {};
    if (!j.is_object()) schema_error("config", "expected an object");
    GAConfig c;
    c.population = get_or<int>(j, "population", c.population);
    c.generations = get_or<int>(j, "generations", c.generations);
    c.crossover_rate = get_or<double>(j, "crossover_rate", c.crossover_rate);
    c.mutation_rate = get_or<double>(j, "mutation_rate", c.mutation_rate);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    if (j.contains("objectives") && !j.at("objectives").is_null()) {
        c.objectives.clear();
        for (const auto& o : j.at("objectives")) {
            if (!o.is_string()) schema_error("objectives", "expected strings");
            c.objectives.push_back(parse_objective(o.get<std::string>()));
        }
    }
    if (j.contains("constraints") && j.at("constraints").is_object()) {
        c.constraints.fit_boundary = get_or<bool>(j.at("constraints"), "fit_boundary", false);
        c.constraints.no_penalty = get_or<bool>(j.at("constraints"), "no_penalty", false);
    }
    c.goal_level = parse_priority(get_or<std::string>(j, "goal_level", "L1"));
    c.workers = get_or<int>(j, "workers", c.workers);
    c.validate();
    return c;
}

Json history_to_json(const std::vector<GenerationStats>& history)
{
    Json out = Json::array();
    for (const auto& h : history)
        out.push_back({{"generation", h.generation}, {"best_adjacency", h.best_adjacency}, {"min_area", number_or_null(h.min_area)}});
    return out;
}

std::string history_csv(const std::vector<GenerationStats>& history)
{
    std::string out = "generation,best_adjacency,min_area\n";
    for (const auto& h : history) {
        out += fmt::format("{},{},{}\n", h.generation, h.best_adjacency,
                           std::isfinite(h.min_area) ? fmt::format("{}", h.min_area) : std::string("inf"));
    }
    return out;
}

Json solution_to_json(const Solution& s)
{
    Json objectives = Json::array();
    for (double v : s.objectives) objectives.push_back(number_or_null(v));
    return Json{{"genome", s.genome},
                {"objectives", objectives},
                {"violation", s.violation},
                {"adjacency", s.adjacency},
                {"area", s.area},
                {"distance", s.distance},
                {"rank", s.rank},
                {"crowding", number_or_null(s.crowding)},
                {"floorplan", floorplan_to_json(s.floorplan)}};
}

void write_run_artifacts(const std::filesystem::path& dir, const Problem& problem, const GAConfig& config,
                         const RunResult& result)
{
    std::filesystem::create_directories(dir / "pareto");
    Json cfg = config_to_json(config);
    cfg["problem"] = problem_to_json(problem);
    write_text_file(dir / "config.json", cfg.dump(2) + "\n");
    write_text_file(dir / "history.csv", history_csv(result.history));
    for (std::size_t i = 0; i < result.pareto.size(); ++i)
        write_text_file(dir / "pareto" / fmt::format("{:03}.json", i), solution_to_json(result.pareto[i]).dump(2) + "\n");
}

}  // namespace genfloor
