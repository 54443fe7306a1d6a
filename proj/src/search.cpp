#include "genfloor/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "genfloor/eval.hpp"
#include "genfloor/extend.hpp"

namespace genfloor {

std::string_view to_string(Objective o)
{
    switch (o) {
    case Objective::adjacency: return "adjacency";
    case Objective::area: return "area";
    case Objective::distance: return "distance";
    }
    return "?";
}

Objective parse_objective(std::string_view s)
{
    if (s == "adjacency") return Objective::adjacency;
    if (s == "area") return Objective::area;
    if (s == "distance") return Objective::distance;
    throw ValidationError("unknown objective '" + std::string(s) + "'");
}

void GAConfig::validate() const
{
    if (population < 4 || population % 2 != 0) throw ValidationError("population must be an even number >= 4");
    if (generations < 1) throw ValidationError("generations must be >= 1");
    if (!(crossover_rate >= 0 && crossover_rate <= 1)) throw ValidationError("crossover rate must lie in [0, 1]");
    if (!(mutation_rate >= 0 && mutation_rate <= 1)) throw ValidationError("mutation rate must lie in [0, 1]");
    if (objectives.empty()) throw ValidationError("at least one objective is required");
    for (std::size_t i = 0; i < objectives.size(); ++i)
        for (std::size_t j = i + 1; j < objectives.size(); ++j)
            if (objectives[i] == objectives[j]) throw ValidationError("objective listed twice");
    if (workers < 1) throw ValidationError("workers must be >= 1");
}

// ---------------------------------------------------------------------------
// Genome

GenomeSpec GenomeSpec::for_problem(const Problem& problem)
{
    GenomeSpec spec;
    spec.method = problem.representation;
    spec.n = static_cast<int>(problem.size());
    spec.rotation_genes = problem.use_rotation_genes;
    const int hi = param_upper_bound(spec.method, spec.n);
    const int count = spec.method == Method::bstar_ascend_descend ? 2 * spec.n : spec.n;
    spec.genes.assign(count, GeneRange{0, hi});
    if (spec.rotation_genes) spec.genes.insert(spec.genes.end(), spec.n, GeneRange{0, 1});
    return spec;
}

bool GenomeSpec::accepts(const Genome& genome) const
{
    if (genome.size() != genes.size()) return false;
    for (std::size_t i = 0; i < genes.size(); ++i)
        if (genome[i] < genes[i].lo || genome[i] > genes[i].hi) return false;
    return true;
}

PermutationParams GenomeSpec::params(const Genome& genome) const
{
    const std::size_t count = genes.size() - (rotation_genes ? static_cast<std::size_t>(n) : 0);
    PermutationParams p;
    p.method = method;
    p.values.assign(genome.begin(), genome.begin() + static_cast<std::ptrdiff_t>(count));
    return p;
}

Rotations GenomeSpec::rotations(const Genome& genome) const
{
    if (!rotation_genes) return {};
    Rotations r;
    for (std::size_t i = genes.size() - n; i < genes.size(); ++i) r.push_back(genome[i] != 0);
    return r;
}

Genome GenomeSpec::identity() const
{
    Genome g = identity_params(method, n).values;
    if (rotation_genes) g.insert(g.end(), n, 0);
    return g;
}

// ---------------------------------------------------------------------------
// Evaluation

Evaluator::Evaluator(Problem problem, GAConfig config)
    : problem_(std::move(problem)), config_(std::move(config)), spec_(GenomeSpec::for_problem(problem_)),
      standard_(build_standard_tree(problem_)), entries_(problem_.goals.entries(config_.goal_level)),
      pairs_(problem_.goals.pairs(config_.goal_level))
{
    problem_.validate();
    config_.validate();
    if ((config_.constraints.fit_boundary || config_.constraints.no_penalty) && !problem_.boundary)
        throw ValidationError("boundary constraints need a problem boundary");
}

Solution Evaluator::operator()(const Genome& genome) const
{
    if (!spec_.accepts(genome)) throw ValidationError("genome does not match the problem's genome layout");
    Solution s;
    s.genome = genome;
    const LayoutTree tree = perturb(standard_, spec_.params(genome));
    s.floorplan = place(tree, problem_.requirements, spec_.rotations(genome), problem_.representation);

    const auto report = adjacency_check(resulted_adjacency(s.floorplan), entries_);
    s.adjacency = report.achieved_count;
    s.area = bounding_area(s.floorplan).area();
    for (const auto& g : pairs_) s.distance += rect_distance(*s.floorplan.find(g.a), *s.floorplan.find(g.b));

    for (Objective o : config_.objectives) {
        switch (o) {
        case Objective::adjacency: s.objectives.push_back(-static_cast<double>(s.adjacency)); break;
        case Objective::area: s.objectives.push_back(s.area); break;
        case Objective::distance: s.objectives.push_back(s.distance); break;
        }
    }
    if (config_.constraints.fit_boundary && !within_boundary(s.floorplan, problem_.boundary->polygon).all_inside)
        ++s.violation;
    if (config_.constraints.no_penalty &&
        extend_layout(s.floorplan, problem_.requirements, problem_.boundary->width(), problem_.boundary->height()).penalty)
        ++s.violation;
    return s;
}

Solution decode_and_evaluate(const Genome& genome, const Problem& problem, const GAConfig& config)
{
    return Evaluator(problem, config)(genome);
}

// ---------------------------------------------------------------------------
// Sorting

bool constrained_dominates(const std::vector<double>& a, int violation_a, const std::vector<double>& b, int violation_b)
{
    if (violation_a != violation_b) return violation_a < violation_b;
    bool strictly = false;
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] > b[m]) return false;
        if (a[m] < b[m]) strictly = true;
    }
    return strictly;
}

std::vector<std::vector<std::size_t>> nondominated_sort(const std::vector<std::vector<double>>& objectives,
                                                        const std::vector<int>& violations)
{
    const std::size_t n = objectives.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> counter(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (constrained_dominates(objectives[p], violations[p], objectives[q], violations[q])) {
                dominated[p].push_back(q);
            } else if (constrained_dominates(objectives[q], violations[q], objectives[p], violations[p])) {
                ++counter[p];
            }
        }
        if (counter[p] == 0) fronts[0].push_back(p);
    }
    while (!fronts.back().empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : fronts.back()) {
            for (std::size_t q : dominated[p])
                if (--counter[q] == 0) next.push_back(q);
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

std::vector<std::vector<std::size_t>> nondominated_sort(const std::vector<Solution>& population)
{
    std::vector<std::vector<double>> obj;
    std::vector<int> viol;
    for (const auto& s : population) {
        obj.push_back(s.objectives);
        viol.push_back(s.violation);
    }
    return nondominated_sort(obj, viol);
}

std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front)
{
    const std::size_t n = front.size();
    std::vector<double> d(n, 0.0);
    if (n == 0) return d;
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < front[0].size(); ++m) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
        d[order.front()] = inf;
        d[order.back()] = inf;
        const double span = front[order.back()][m] - front[order.front()][m];
        if (span <= 0) continue;
        for (std::size_t k = 1; k + 1 < n; ++k)
            d[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / span;
    }
    return d;
}

// ---------------------------------------------------------------------------
// NSGA-II

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Small counter-based stream so every (seed, generation, index) draws the
/// same numbers on every platform and in every thread schedule.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t generation, std::uint64_t index)
    {
        std::uint64_t s = seed;
        state_ = splitmix64(s) ^ (generation * 0xD1B54A32D192ED03ull);
        s = state_;
        state_ = splitmix64(s) ^ (index * 0x8CB92BA72F3D8DD7ull);
    }

    std::uint64_t next() { return splitmix64(state_); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    int between(int lo, int hi)
    {
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<int>(v % range);
    }

private:
    std::uint64_t state_ = 0;
};

std::vector<Solution> evaluate_all(const Evaluator& eval, const std::vector<Genome>& genomes, int workers)
{
    std::vector<Solution> out(genomes.size());
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(workers), genomes.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < genomes.size(); ++i) out[i] = eval(genomes[i]);
        return out;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < genomes.size(); i += threads) out[i] = eval(genomes[i]);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

/// Assigns rank and crowding, then orders the population best first.
void rank_population(std::vector<Solution>& pop)
{
    const auto fronts = nondominated_sort(pop);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        std::vector<std::vector<double>> obj;
        for (std::size_t i : fronts[r]) obj.push_back(pop[i].objectives);
        const auto crowd = crowding_distance(obj);
        for (std::size_t k = 0; k < fronts[r].size(); ++k) {
            pop[fronts[r][k]].rank = static_cast<int>(r);
            pop[fronts[r][k]].crowding = crowd[k];
        }
    }
}

/// Environmental selection: whole fronts while they fit, then the split
/// front by (objective extremes in objective order, crowding, index).
std::vector<Solution> select_survivors(std::vector<Solution> pool, std::size_t keep)
{
    const auto fronts = nondominated_sort(pool);
    std::vector<Solution> next;
    for (std::size_t r = 0; r < fronts.size() && next.size() < keep; ++r) {
        std::vector<std::vector<double>> obj;
        for (std::size_t i : fronts[r]) obj.push_back(pool[i].objectives);
        const auto crowd = crowding_distance(obj);
        std::vector<std::size_t> order(fronts[r].size());
        std::iota(order.begin(), order.end(), 0);
        if (next.size() + order.size() > keep) {
            const std::size_t m_count = obj[0].size();
            std::vector<std::size_t> key(order.size(), m_count);
            for (std::size_t m = m_count; m-- > 0;) {
                std::size_t best = 0;
                for (std::size_t k = 1; k < obj.size(); ++k)
                    if (obj[k][m] < obj[best][m]) best = k;
                key[best] = m;
            }
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (key[a] != key[b]) return key[a] < key[b];
                return crowd[a] > crowd[b];
            });
        }
        for (std::size_t k : order) {
            if (next.size() == keep) break;
            Solution s = std::move(pool[fronts[r][k]]);
            s.rank = static_cast<int>(r);
            s.crowding = crowd[k];
            next.push_back(std::move(s));
        }
    }
    return next;
}

const Solution& tournament(const std::vector<Solution>& pop, Stream& rng)
{
    const auto& a = pop[static_cast<std::size_t>(rng.between(0, static_cast<int>(pop.size()) - 1))];
    const auto& b = pop[static_cast<std::size_t>(rng.between(0, static_cast<int>(pop.size()) - 1))];
    if (a.rank != b.rank) return a.rank < b.rank ? a : b;
    return b.crowding > a.crowding ? b : a;
}

GenerationStats stats_of(int generation, const std::vector<Solution>& pop)
{
    GenerationStats st;
    st.generation = generation;
    st.min_area = std::numeric_limits<double>::infinity();
    for (const auto& s : pop) {
        if (s.violation != 0) continue;
        st.best_adjacency = std::max(st.best_adjacency, s.adjacency);
        st.min_area = std::min(st.min_area, s.area);
    }
    return st;
}

/// Keeps the non-dominated set of everything seen, one entry per genome.
void merge_archive(std::vector<Solution>& archive, const std::vector<Solution>& incoming)
{
    std::vector<Solution> pool = archive;
    for (const auto& s : incoming) pool.push_back(s);
    std::sort(pool.begin(), pool.end(), [](const Solution& a, const Solution& b) { return a.genome < b.genome; });
    pool.erase(std::unique(pool.begin(), pool.end(), [](const Solution& a, const Solution& b) { return a.genome == b.genome; }),
               pool.end());
    const auto fronts = nondominated_sort(pool);
    std::vector<Solution> next;
    if (!fronts.empty())
        for (std::size_t i : fronts[0]) next.push_back(std::move(pool[i]));
    archive = std::move(next);
}

}  // namespace

RunResult Nsga2::run(const Problem& problem, const GAConfig& config, const ProgressFn& progress)
{
    const Evaluator eval(problem, config);
    const auto& spec = eval.spec();
    const std::size_t p = static_cast<std::size_t>(config.population);
    RunResult result;

    std::vector<Genome> genomes;
    for (std::size_t k = 0; k < p; ++k) {
        Stream rng(config.seed, 0, k);
        Genome g;
        for (const auto& r : spec.genes) g.push_back(rng.between(r.lo, r.hi));
        genomes.push_back(std::move(g));
    }
    std::vector<Solution> pop = evaluate_all(eval, genomes, config.workers);
    rank_population(pop);
    merge_archive(result.pareto, pop);
    result.history.push_back(stats_of(0, pop));
    if (progress && !progress(result.history.back())) result.cancelled = true;

    for (int gen = 1; gen <= config.generations && !result.cancelled; ++gen) {
        genomes.clear();
        for (std::size_t k = 0; k < p / 2; ++k) {
            Stream rng(config.seed, static_cast<std::uint64_t>(gen), k);
            Genome a = tournament(pop, rng).genome;
            Genome b = tournament(pop, rng).genome;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (rng.unit() < config.crossover_rate) std::swap(a[i], b[i]);
            for (Genome* child : {&a, &b}) {
                for (std::size_t i = 0; i < child->size(); ++i)
                    if (rng.unit() < config.mutation_rate) (*child)[i] = rng.between(spec.genes[i].lo, spec.genes[i].hi);
            }
            genomes.push_back(std::move(a));
            genomes.push_back(std::move(b));
        }
        std::vector<Solution> offspring = evaluate_all(eval, genomes, config.workers);
        merge_archive(result.pareto, offspring);
        for (auto& s : pop) offspring.push_back(std::move(s));
        pop = select_survivors(std::move(offspring), p);
        result.history.push_back(stats_of(gen, pop));
        if (progress && !progress(result.history.back())) result.cancelled = true;
    }

    std::sort(result.pareto.begin(), result.pareto.end(), [](const Solution& a, const Solution& b) {
        if (a.objectives != b.objectives) return a.objectives < b.objectives;
        return a.genome < b.genome;
    });
    rank_population(result.pareto);
    result.population = std::move(pop);
    return result;
}

RunResult nsga2_run(const Problem& problem, const GAConfig& config, const ProgressFn& progress)
{
    return Nsga2{}.run(problem, config, progress);
}

}  // namespace genfloor
