#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "genfloor/model.hpp"
#include "genfloor/perturb.hpp"
#include "genfloor/placement.hpp"

namespace genfloor {

enum class Objective { adjacency, area, distance };

std::string_view to_string(Objective o);
Objective parse_objective(std::string_view s);

struct SearchConstraints {
    bool fit_boundary = false;  // every block inside the problem boundary
    bool no_penalty = false;    // extension onto the boundary is not penalized
    bool operator==(const SearchConstraints&) const = default;
};

struct GAConfig {
    int population = 100;
    int generations = 15;
    double crossover_rate = 0.2;
    double mutation_rate = 0.1;
    std::uint64_t seed = 1;
    /// Maximize adjacency, minimize bounding area, minimize the summed gap
    /// between the two spaces of every goal pair.
    std::vector<Objective> objectives{Objective::adjacency, Objective::area};
    SearchConstraints constraints;
    /// Goals at or above this priority are optimized (A_Count).
    Priority goal_level = Priority::L1;
    /// Evaluation threads; results do not depend on it.
    int workers = 1;

    void validate() const;
    bool operator==(const GAConfig&) const = default;
};

using Genome = std::vector<int>;

struct GeneRange {
    int lo = 0;
    int hi = 0;
};

/// Integer genes: the method's permutation values (half steps doubled),
/// followed by one 0/1 rotation gene per requirement when enabled.
struct GenomeSpec {
    Method method = Method::bstar_available_nodes;
    int n = 0;
    bool rotation_genes = false;
    std::vector<GeneRange> genes;

    static GenomeSpec for_problem(const Problem& problem);
    std::size_t size() const { return genes.size(); }
    bool accepts(const Genome& genome) const;
    PermutationParams params(const Genome& genome) const;
    Rotations rotations(const Genome& genome) const;
    Genome identity() const;
};

struct Solution {
    Genome genome;
    Floorplan floorplan;
    std::vector<double> objectives;  // minimization convention
    int violation = 0;
    int adjacency = 0;  // achieved goal entries
    double area = 0;
    double distance = 0;
    int rank = 0;
    double crowding = 0;
};

/// Decodes genomes for one (problem, config) pair. Immutable once built, so
/// one instance can serve many evaluation threads.
class Evaluator {
public:
    Evaluator(Problem problem, GAConfig config);

    Solution operator()(const Genome& genome) const;

    const GenomeSpec& spec() const { return spec_; }
    const Problem& problem() const { return problem_; }
    int goal_count() const { return static_cast<int>(entries_.size()); }

private:
    Problem problem_;
    GAConfig config_;
    GenomeSpec spec_;
    LayoutTree standard_;
    std::vector<AdjacencyGoal> entries_;
    std::vector<AdjacencyGoal> pairs_;
};

Solution decode_and_evaluate(const Genome& genome, const Problem& problem, const GAConfig& config);

/// Constraint-dominance: lower violation wins; at equal violation, Pareto
/// dominance on the (minimized) objectives.
bool constrained_dominates(const std::vector<double>& a, int violation_a, const std::vector<double>& b, int violation_b);

/// Fronts of indices, best first.
std::vector<std::vector<std::size_t>> nondominated_sort(const std::vector<std::vector<double>>& objectives,
                                                        const std::vector<int>& violations);
std::vector<std::vector<std::size_t>> nondominated_sort(const std::vector<Solution>& population);

/// Crowding distance of each member of one front; per-objective extremes get
/// +infinity, the rest sum neighbour gaps normalized by the objective's span.
std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front);

struct GenerationStats {
    int generation = 0;
    int best_adjacency = -1;  // among feasible members, -1 when none
    double min_area = 0;      // among feasible members, +inf when none
};

struct RunResult {
    std::vector<Solution> pareto;
    std::vector<GenerationStats> history;
    std::vector<Solution> population;
    bool cancelled = false;
};

/// Called after every generation; returning false stops the run.
using ProgressFn = std::function<bool(const GenerationStats&)>;

/// Search strategies are interchangeable behind this interface.
class SearchBackend {
public:
    virtual ~SearchBackend() = default;
    virtual RunResult run(const Problem& problem, const GAConfig& config, const ProgressFn& progress) = 0;
};

class Nsga2 final : public SearchBackend {
public:
    RunResult run(const Problem& problem, const GAConfig& config, const ProgressFn& progress) override;
};

RunResult nsga2_run(const Problem& problem, const GAConfig& config, const ProgressFn& progress = {});

}  // namespace genfloor
