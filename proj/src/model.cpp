#include "genfloor/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

namespace genfloor {

Length to_micro(double units) { return static_cast<Length>(std::llround(units * static_cast<double>(kMicro))); }

double from_micro(Length micro) { return static_cast<double>(micro) / static_cast<double>(kMicro); }

std::string_view to_string(Edge e)
{
    switch (e) {
    case Edge::north: return "north";
    case Edge::south: return "south";
    case Edge::east: return "east";
    case Edge::west: return "west";
    }
    return "?";
}

std::string_view to_string(Priority p)
{
    switch (p) {
    case Priority::L1: return "L1";
    case Priority::L2: return "L2";
    case Priority::L3: return "L3";
    }
    return "?";
}

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::otree_proceeding: return "otree_proceeding";
    case Method::bstar_ascend_descend: return "bstar_ascend_descend";
    case Method::bstar_available_nodes: return "bstar_available_nodes";
    }
    return "?";
}

Edge parse_edge(std::string_view s)
{
    if (s == "north" || s == "N" || s == "n") return Edge::north;
    if (s == "south" || s == "S" || s == "s") return Edge::south;
    if (s == "east" || s == "E" || s == "e") return Edge::east;
    if (s == "west" || s == "W" || s == "w") return Edge::west;
    throw ValidationError("unknown edge '" + std::string(s) + "'");
}

Priority parse_priority(std::string_view s)
{
    if (s == "L1" || s == "l1" || s == "1") return Priority::L1;
    if (s == "L2" || s == "l2" || s == "2") return Priority::L2;
    if (s == "L3" || s == "l3" || s == "3") return Priority::L3;
    throw ValidationError("unknown priority '" + std::string(s) + "'");
}

Method parse_method(std::string_view s)
{
    if (s == "otree_proceeding" || s == "proceeding") return Method::otree_proceeding;
    if (s == "bstar_ascend_descend" || s == "ascend_descend") return Method::bstar_ascend_descend;
    if (s == "bstar_available_nodes" || s == "available_nodes") return Method::bstar_available_nodes;
    throw ValidationError("unknown method '" + std::string(s) + "'");
}

TreeKind tree_kind_for(Method m) { return m == Method::otree_proceeding ? TreeKind::nary : TreeKind::binary; }

// ---------------------------------------------------------------------------
// GoalSet

void GoalSet::declare(int a, int b, Priority priority)
{
    if (a == b) throw ValidationError("adjacency goal from a space to itself");
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{a, b},
                               [](const AdjacencyGoal& g, const std::pair<int, int>& key) {
                                   return std::pair{g.a, g.b} < key;
                               });
    if (it != pairs_.end() && it->a == a && it->b == b) {
        it->priority = std::max(it->priority, priority);
        return;
    }
    pairs_.insert(it, AdjacencyGoal{a, b, priority});
}

std::vector<AdjacencyGoal> GoalSet::pairs(Priority level) const
{
    std::vector<AdjacencyGoal> out;
    for (const auto& g : pairs_)
        if (g.priority >= level) out.push_back(g);
    return out;
}

std::vector<AdjacencyGoal> GoalSet::entries(Priority level) const
{
    std::vector<AdjacencyGoal> out;
    for (const auto& g : pairs(level)) {
        out.push_back(g);
        out.push_back(AdjacencyGoal{g.b, g.a, g.priority});
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return std::pair{l.a, l.b} < std::pair{r.a, r.b}; });
    return out;
}

std::vector<AdjacencyGoal> prune_transitive_pairs(const std::vector<AdjacencyGoal>& pairs)
{
    std::vector<AdjacencyGoal> sorted = pairs;
    for (auto& g : sorted)
        if (g.a > g.b) std::swap(g.a, g.b);
    std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return std::pair{l.a, l.b} < std::pair{r.a, r.b}; });

    std::set<std::pair<int, int>> kept;
    auto linked = [&](int u, int v) { return kept.count({std::min(u, v), std::max(u, v)}) > 0; };
    std::set<int> nodes;
    for (const auto& g : sorted) nodes.insert({g.a, g.b});
    std::vector<AdjacencyGoal> out;
    for (const auto& g : sorted) {
        bool closes_triangle = std::any_of(nodes.begin(), nodes.end(), [&](int w) {
            return w != g.a && w != g.b && linked(w, g.a) && linked(w, g.b);
        });
        if (!closes_triangle) {
            kept.insert({g.a, g.b});
            out.push_back(g);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Boundary / polygon

Boundary Boundary::rectangle(double width, double height)
{
    return Boundary{{{0, 0}, {width, 0}, {width, height}, {0, height}}, true};
}

double Boundary::width() const
{
    auto [lo, hi] = std::minmax_element(polygon.begin(), polygon.end(), [](auto& l, auto& r) { return l.x < r.x; });
    return polygon.empty() ? 0.0 : hi->x - lo->x;
}

double Boundary::height() const
{
    auto [lo, hi] = std::minmax_element(polygon.begin(), polygon.end(), [](auto& l, auto& r) { return l.y < r.y; });
    return polygon.empty() ? 0.0 : hi->y - lo->y;
}

namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(Point p, Point a, Point b)
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2)
{
    double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2), d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    if (d1 == 0 && on_segment(p1, q1, q2)) return true;
    if (d2 == 0 && on_segment(p2, q1, q2)) return true;
    if (d3 == 0 && on_segment(q1, p1, p2)) return true;
    if (d4 == 0 && on_segment(q2, p1, p2)) return true;
    return false;
}

}  // namespace

bool polygon_is_simple(const std::vector<Point>& polygon)
{
    const std::size_t n = polygon.size();
    if (n < 3) return false;
    double area2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = polygon[i];
        const auto& q = polygon[(i + 1) % n];
        area2 += p.x * q.y - q.x * p.y;
    }
    if (area2 == 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool neighbours = j == i + 1 || (i == 0 && j == n - 1);
            if (neighbours) continue;
            if (segments_intersect(polygon[i], polygon[(i + 1) % n], polygon[j], polygon[(j + 1) % n])) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Problem

int Problem::index_of(std::string_view id) const
{
    for (std::size_t i = 0; i < requirements.size(); ++i)
        if (requirements[i].id == id) return static_cast<int>(i);
    return -1;
}

void Problem::validate() const
{
    if (requirements.empty()) throw ValidationError("problem has no spatial requirements");
    std::unordered_set<std::string> ids;
    for (const auto& r : requirements) {
        if (r.id.empty()) throw ValidationError("requirement with empty id");
        if (!ids.insert(r.id).second) throw ValidationError("duplicate requirement id '" + r.id + "'");
        if (r.width <= 0 || r.height <= 0) throw ValidationError("requirement '" + r.id + "' has a non-positive dimension");
        if (r.flexible && (r.anchor_edge || r.facing))
            throw ValidationError("requirement '" + r.id + "' is flexible but carries anchor_edge/facing");
    }
    const int n = static_cast<int>(requirements.size());
    for (const auto& g : goals.pairs()) {
        if (g.a < 0 || g.b < 0 || g.a >= n || g.b >= n) throw ValidationError("adjacency goal references an unknown requirement");
    }
    if (boundary && !polygon_is_simple(boundary->polygon)) throw ValidationError("boundary polygon is degenerate or self-intersecting");
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string row_error(int line, std::string_view column, std::string_view what)
{
    std::ostringstream os;
    os << "row " << line << ", column '" << column << "': " << what;
    return os.str();
}

bool parse_bool(const std::string& s, int line, std::string_view column)
{
    std::string v;
    for (char c : s) v += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "true" || v == "1" || v == "yes" || v == "y") return true;
    if (v == "false" || v == "0" || v == "no" || v == "n") return false;
    throw ValidationError(row_error(line, column, "expected a boolean, got '" + s + "'"));
}

Length parse_length(const std::string& s, int line, std::string_view column)
{
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
        throw ValidationError(row_error(line, column, "expected a decimal length, got '" + s + "'"));
    Length micro = to_micro(value);
    if (micro <= 0) throw ValidationError(row_error(line, column, "dimension must be positive, got '" + s + "'"));
    return micro;
}

std::string format_length(Length micro)
{
    std::ostringstream os;
    os << (micro / kMicro);
    Length frac = micro % kMicro;
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, 6 - digits.size(), '0');
        while (!digits.empty() && digits.back() == '0') digits.pop_back();
        os << '.' << digits;
    }
    return os.str();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

RequirementTable load_requirements_csv(std::string_view content)
{
    static const std::vector<std::string> required = {"id", "name", "width", "height", "rotatable", "flexible", "adjacent_to"};

    std::vector<std::pair<int, std::string>> lines;
    {
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= content.size()) {
            auto nl = content.find('\n', pos);
            auto raw = content.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            ++line_no;
            if (!trim(raw).empty()) lines.emplace_back(line_no, std::string(raw));
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
    }
    if (lines.empty()) throw ValidationError("CSV is empty");
    // tolerate a UTF-8 BOM
    if (lines[0].second.rfind("\xEF\xBB\xBF", 0) == 0) lines[0].second.erase(0, 3);

    auto header = split_csv_line(lines[0].second);
    for (auto& h : header) h = trim(h);
    auto column = [&](const std::string& name) -> int {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    for (const auto& name : required)
        if (column(name) < 0) throw ValidationError(row_error(lines[0].first, name, "missing header column"));
    const int c_priority = column("priority"), c_anchor = column("anchor_edge"), c_facing = column("facing");

    RequirementTable table;
    std::vector<std::pair<int, std::vector<std::string>>> adjacency;  // (line, ids) per requirement
    std::vector<Priority> row_priority;

    for (std::size_t r = 1; r < lines.size(); ++r) {
        const int line = lines[r].first;
        auto fields = split_csv_line(lines[r].second);
        for (auto& f : fields) f = trim(f);
        if (fields.size() > header.size())
            throw ValidationError(row_error(line, header.back(), "too many fields"));
        auto field = [&](int idx) -> std::string { return idx >= 0 && idx < static_cast<int>(fields.size()) ? fields[idx] : std::string{}; };
        for (const auto& name : {"id", "width", "height"})
            if (field(column(name)).empty()) throw ValidationError(row_error(line, name, "value is required"));

        SpatialRequirement req;
        req.id = field(column("id"));
        req.name = field(column("name"));
        req.width = parse_length(field(column("width")), line, "width");
        req.height = parse_length(field(column("height")), line, "height");
        req.rotatable = field(column("rotatable")).empty() ? false : parse_bool(field(column("rotatable")), line, "rotatable");
        req.flexible = field(column("flexible")).empty() ? true : parse_bool(field(column("flexible")), line, "flexible");
        try {
            if (!field(c_anchor).empty()) req.anchor_edge = parse_edge(field(c_anchor));
        } catch (const ValidationError& e) {
            throw ValidationError(row_error(line, "anchor_edge", e.what()));
        }
        try {
            if (!field(c_facing).empty()) req.facing = parse_edge(field(c_facing));
        } catch (const ValidationError& e) {
            throw ValidationError(row_error(line, "facing", e.what()));
        }
        if (req.flexible && (req.anchor_edge || req.facing))
            throw ValidationError(row_error(line, "flexible", "anchor_edge/facing require flexible=false"));
        for (const auto& prev : table.requirements)
            if (prev.id == req.id) throw ValidationError(row_error(line, "id", "duplicate id '" + req.id + "'"));

        Priority prio = Priority::L1;
        try {
            if (!field(c_priority).empty()) prio = parse_priority(field(c_priority));
        } catch (const ValidationError& e) {
            throw ValidationError(row_error(line, "priority", e.what()));
        }

        std::vector<std::string> ids;
        std::string adj = field(column("adjacent_to"));
        std::size_t pos = 0;
        while (pos <= adj.size()) {
            auto semi = adj.find(';', pos);
            auto id = trim(std::string_view(adj).substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
            if (!id.empty()) ids.push_back(id);
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        table.requirements.push_back(std::move(req));
        adjacency.emplace_back(line, std::move(ids));
        row_priority.push_back(prio);
    }
    if (table.requirements.empty()) throw ValidationError("CSV has a header but no data rows");

    Problem lookup;
    lookup.requirements = table.requirements;
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
        for (const auto& id : adjacency[i].second) {
            int j = lookup.index_of(id);
            if (j < 0) throw ValidationError(row_error(adjacency[i].first, "adjacent_to", "unknown id '" + id + "'"));
            if (j == static_cast<int>(i)) throw ValidationError(row_error(adjacency[i].first, "adjacent_to", "space lists itself"));
            table.goals.declare(static_cast<int>(i), j, row_priority[i]);
        }
    }
    return table;
}

std::string write_requirements_csv(const RequirementTable& table)
{
    // One priority per row: a pair goes on its lower-index row unless that
    // row already carries a different priority.
    const auto pairs = table.goals.pairs();
    const std::size_t n = table.requirements.size();
    std::vector<std::vector<std::string>> lists(n);
    std::vector<std::optional<Priority>> prio(n);
    for (const auto& g : pairs) {
        int row = g.a, other = g.b;
        if (prio[row] && *prio[row] != g.priority) std::swap(row, other);
        if (prio[row] && *prio[row] != g.priority)
            throw ValidationError("goal priorities cannot be expressed with one priority per row");
        prio[row] = g.priority;
        lists[row].push_back(table.requirements[other].id);
    }
    std::ostringstream os;
    os << "id,name,width,height,rotatable,flexible,adjacent_to,priority,anchor_edge,facing\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = table.requirements[i];
        os << csv_field(r.id) << ',' << csv_field(r.name) << ',' << format_length(r.width) << ',' << format_length(r.height) << ','
           << (r.rotatable ? "true" : "false") << ',' << (r.flexible ? "true" : "false") << ',';
        for (std::size_t k = 0; k < lists[i].size(); ++k) os << (k ? ";" : "") << lists[i][k];
        os << ',' << to_string(prio[i].value_or(Priority::L1)) << ',';
        if (r.anchor_edge) os << to_string(*r.anchor_edge);
        os << ',';
        if (r.facing) os << to_string(*r.facing);
        os << '\n';
    }
    return os.str();
}

}  // namespace genfloor
