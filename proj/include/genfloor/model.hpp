#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genfloor {

/// Thrown for any input that violates a documented precondition (bad CSV,
/// out-of-domain parameters, unknown ids). The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lengths are integer micro-units (1e-6 of the input unit) so that contour
/// comparisons and adjacency tests are exact.
using Length = std::int64_t;
inline constexpr Length kMicro = 1'000'000;

Length to_micro(double units);
double from_micro(Length micro);

enum class Edge { north, south, east, west };
enum class Priority { L1 = 1, L2 = 2, L3 = 3 };
enum class Method { otree_proceeding, bstar_ascend_descend, bstar_available_nodes };
enum class TreeKind { binary, nary };

std::string_view to_string(Edge e);
std::string_view to_string(Priority p);
std::string_view to_string(Method m);
Edge parse_edge(std::string_view s);
Priority parse_priority(std::string_view s);
/// Accepts the canonical names plus the short aliases `proceeding`,
/// `ascend_descend` and `available_nodes`.
Method parse_method(std::string_view s);
TreeKind tree_kind_for(Method m);

struct SpatialRequirement {
    std::string id;
    std::string name;
    Length width = 0;
    Length height = 0;
    bool rotatable = false;
    bool flexible = true;
    std::optional<Edge> anchor_edge;
    std::optional<Edge> facing;

    bool operator==(const SpatialRequirement&) const = default;
};

/// One entry of the symmetric adjacency-goal matrix. Requirement indices are
/// zero-based positions in Problem::requirements.
struct AdjacencyGoal {
    int a = 0;
    int b = 0;
    Priority priority = Priority::L1;

    bool operator==(const AdjacencyGoal&) const = default;
};

/// Symmetric goal matrix. Declaring {a,b} once stores both (a,b) and (b,a);
/// a repeated declaration keeps the higher priority.
class GoalSet {
public:
    void declare(int a, int b, Priority priority);

    /// Entries with priority >= level, each unordered pair appearing twice.
    std::vector<AdjacencyGoal> entries(Priority level = Priority::L1) const;
    /// Unordered pairs (a < b) with priority >= level, in lexicographic order.
    std::vector<AdjacencyGoal> pairs(Priority level = Priority::L1) const;
    std::size_t count(Priority level = Priority::L1) const { return 2 * pairs(level).size(); }
    bool empty() const { return pairs_.empty(); }

    bool operator==(const GoalSet&) const = default;

private:
    std::vector<AdjacencyGoal> pairs_;  // kept sorted, a < b
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

/// Optional site outline. A rectangle is stored as its four corners with
/// is_rectangle set, so every consumer can treat it as a polygon.
struct Boundary {
    std::vector<Point> polygon;
    bool is_rectangle = false;

    static Boundary rectangle(double width, double height);
    double width() const;
    double height() const;
    bool operator==(const Boundary&) const = default;
};

struct Problem {
    std::vector<SpatialRequirement> requirements;
    GoalSet goals;
    std::optional<Boundary> boundary;
    Method representation = Method::bstar_available_nodes;
    bool use_rotation_genes = false;

    std::size_t size() const { return requirements.size(); }
    int index_of(std::string_view id) const;  // -1 when absent
    /// Checks ids, dimensions, goal references and boundary simplicity.
    void validate() const;
};

struct RequirementTable {
    std::vector<SpatialRequirement> requirements;
    GoalSet goals;
};

/// Parses `id,name,width,height,rotatable,flexible,adjacent_to[,priority,anchor_edge,facing]`.
RequirementTable load_requirements_csv(std::string_view content);
std::string write_requirements_csv(const RequirementTable& table);

/// Drops every pair that would close a triangle with two pairs already kept,
/// scanning pairs in lexicographic order.
std::vector<AdjacencyGoal> prune_transitive_pairs(const std::vector<AdjacencyGoal>& pairs);

bool polygon_is_simple(const std::vector<Point>& polygon);

}  // namespace genfloor
