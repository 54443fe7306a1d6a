// genfloor command line: generate, evaluate, optimize, extend, render, serve.

#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "genfloor/extend.hpp"
#include "genfloor/io.hpp"
#include "genfloor/perturb.hpp"
#include "genfloor/render.hpp"
#include "genfloor/server.hpp"
#include "genfloor/tree.hpp"

using namespace genfloor;
namespace fs = std::filesystem;

namespace {

constexpr int kValidationExit = 2;

Problem load_problem(const fs::path& path, std::optional<Method> representation = std::nullopt)
{
    const std::string text = read_text_file(path);
    if (path.extension() == ".csv")
        return problem_from_csv(text, representation.value_or(Method::bstar_available_nodes));
    Problem p = problem_from_json(parse_json(text));
    if (representation) p.representation = *representation;
    return p;
}

Floorplan load_layout(const fs::path& path) { return floorplan_from_json(parse_json(read_text_file(path))); }

void emit(const std::string& out, const std::string& text)
{
    if (out.empty() || out == "-") std::cout << text;
    else write_text_file(out, text);
}

// "0,1,1,0" or "0110"
Rotations parse_rotations(const std::string& text, std::size_t n)
{
    Rotations r;
    for (char c : text) {
        if (c == '0' || c == '1') r.push_back(c == '1');
        else if (c != ',' && c != ' ') throw ValidationError(fmt::format("bad rotation flag '{}'", c));
    }
    if (r.size() != n) throw ValidationError(fmt::format("expected {} rotation flags, got {}", n, r.size()));
    return r;
}

std::pair<double, double> parse_size(const std::string& text)
{
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) throw ValidationError("boundary must look like WxH");
    try {
        std::size_t used = 0;
        const double w = std::stod(text.substr(0, x), &used);
        const double h = std::stod(text.substr(x + 1));
        if (!(w > 0) || !(h > 0)) throw ValidationError("boundary sides must be positive");
        return {w, h};
    } catch (const std::logic_error&) {
        throw ValidationError("boundary must look like WxH");
    }
}

// Without a problem every block is treated as a flexible space of its placed size.
std::vector<SpatialRequirement> requirements_from_blocks(const Floorplan& fp)
{
    std::vector<SpatialRequirement> reqs(fp.blocks.size());
    for (const auto& b : fp.blocks) {
        if (b.label < 0 || b.label >= static_cast<int>(reqs.size())) throw ValidationError("block labels must be 0..n-1");
        auto& r = reqs[b.label];
        r.id = b.id.empty() ? fmt::format("D{}", b.label + 1) : b.id;
        r.width = b.rotated ? b.h : b.w;
        r.height = b.rotated ? b.w : b.h;
    }
    return reqs;
}

int serve(const std::string& host, int port, const std::string& state, const std::string& statics)
{
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);  // inherited by the server threads

    HttpService service(state, statics);
    const int bound = service.start(host, port);
    std::cout << fmt::format("listening on http://{}:{}/ (state {})", host, bound, state) << std::endl;
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Floorplan generation with perturbed O-trees and B*-trees"};
    app.require_subcommand(1);

    std::string out, problem_path, layout_path;

    auto* gen = app.add_subcommand("generate", "Place one layout from permutation parameters");
    std::string reqs_path, method_name, params_text, rotations_text;
    gen->add_option("--reqs", reqs_path, "Requirements CSV or problem JSON")->required()->check(CLI::ExistingFile);
    gen->add_option("--method", method_name, "proceeding | ascend_descend | available_nodes (default: the problem's)");
    gen->add_option("--params", params_text, "Comma-separated values, a:b pairs for ascend_descend (default: identity)");
    gen->add_option("--rotations", rotations_text, "One 0/1 flag per space");
    gen->add_option("-o,--out", out, "Output layout JSON (default stdout)");

    auto* evaluate = app.add_subcommand("evaluate", "Report adjacency, bounding area and distances");
    std::string level_name = "L1";
    evaluate->add_option("--layout", layout_path, "Layout JSON")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--problem", problem_path, "Problem JSON or CSV")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--level", level_name, "Lowest goal priority counted (L1, L2, L3)");
    evaluate->add_option("-o,--out", out, "Output JSON (default stdout)");

    auto* optimize = app.add_subcommand("optimize", "Run NSGA-II and write config.json, history.csv and pareto/");
    std::string config_path, objectives_text;
    GAConfig cfg;
    bool fit_boundary = false, no_penalty = false, rotation_genes = false;
    optimize->add_option("--problem", problem_path, "Problem JSON or CSV")->required()->check(CLI::ExistingFile);
    optimize->add_option("--config", config_path, "GA config JSON; flags override it")->check(CLI::ExistingFile);
    auto* pop_opt = optimize->add_option("--pop", cfg.population, "Population size (even, >= 4)");
    auto* gens_opt = optimize->add_option("--gens", cfg.generations, "Generations");
    auto* cx_opt = optimize->add_option("--crossover", cfg.crossover_rate, "Per-gene crossover rate");
    auto* mut_opt = optimize->add_option("--mutation", cfg.mutation_rate, "Per-gene mutation rate");
    auto* seed_opt = optimize->add_option("--seed", cfg.seed, "RNG seed");
    auto* obj_opt = optimize->add_option("--objectives", objectives_text, "Comma list of adjacency, area, distance");
    auto* level_opt = optimize->add_option("--level", level_name, "Goal priority optimized (L1, L2, L3)");
    auto* workers_opt = optimize->add_option("--workers", cfg.workers, "Evaluation threads");
    optimize->add_flag("--fit-boundary", fit_boundary, "Constraint: every block inside the boundary");
    optimize->add_flag("--no-penalty", no_penalty, "Constraint: extension onto the boundary is not penalized");
    optimize->add_flag("--rotation-genes", rotation_genes, "Add one rotation gene per rotatable space");
    optimize->add_option("-o,--out", out, "Run directory")->required();

    auto* extend = app.add_subcommand("extend", "Stretch a layout onto a rectangular boundary");
    std::string boundary_text;
    extend->add_option("--layout", layout_path, "Layout JSON")->required()->check(CLI::ExistingFile);
    extend->add_option("--boundary", boundary_text, "WxH")->required();
    extend->add_option("--problem", problem_path, "Problem JSON or CSV, for fixed spaces and anchors")->check(CLI::ExistingFile);
    extend->add_option("-o,--out", out, "Output JSON (default stdout)");

    auto* render = app.add_subcommand("render", "Draw a layout as SVG");
    std::string kind_name = "floorplan";
    RenderSpec spec;
    render->add_option("--layout", layout_path, "Layout JSON")->required()->check(CLI::ExistingFile);
    render->add_option("--kind", kind_name, "floorplan | bubble | tree");
    render->add_option("--problem", problem_path, "Problem JSON or CSV, supplies goals and names")->check(CLI::ExistingFile);
    render->add_option("--level", level_name, "Goal priority drawn in bubble diagrams");
    render->add_option("--size", spec.size, "Longer side in pixels");
    render->add_option("-o,--out", out, "Output SVG (default stdout)");

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    int port = 8080;
    std::string host = "0.0.0.0", state_dir = "genfloor-state", static_dir;
    serve_cmd->add_option("--port", port, "TCP port, 0 for any");
    serve_cmd->add_option("--host", host, "Bind address");
    serve_cmd->add_option("--state", state_dir, "State directory");
    serve_cmd->add_option("--static", static_dir, "Directory served at /")->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidationExit;
    }

    try {
        if (*gen) {
            Problem p = load_problem(reqs_path, method_name.empty() ? std::nullopt : std::optional(parse_method(method_name)));
            const Method method = p.representation;
            const int n = static_cast<int>(p.size());
            PermutationParams params = params_text.empty() ? identity_params(method, n) : PermutationParams::parse(method, params_text);
            params.validate(n);
            const Rotations rot = rotations_text.empty() ? Rotations{} : parse_rotations(rotations_text, p.size());
            const Floorplan fp = place(perturb(build_standard_tree(n, tree_kind_for(method)), params), p.requirements, rot, method);
            emit(out, floorplan_to_json(fp).dump(2) + "\n");
        } else if (*evaluate) {
            const Problem p = load_problem(problem_path);
            emit(out, evaluation_report(load_layout(layout_path), p, parse_priority(level_name)).dump(2) + "\n");
        } else if (*optimize) {
            Problem p = load_problem(problem_path);
            GAConfig config = config_path.empty() ? GAConfig{} : config_from_json(parse_json(read_text_file(config_path)));
            if (pop_opt->count()) config.population = cfg.population;
            if (gens_opt->count()) config.generations = cfg.generations;
            if (cx_opt->count()) config.crossover_rate = cfg.crossover_rate;
            if (mut_opt->count()) config.mutation_rate = cfg.mutation_rate;
            if (seed_opt->count()) config.seed = cfg.seed;
            if (workers_opt->count()) config.workers = cfg.workers;
            if (level_opt->count()) config.goal_level = parse_priority(level_name);
            if (obj_opt->count()) {
                config.objectives.clear();
                for (const auto& name : CLI::detail::split(objectives_text, ',')) config.objectives.push_back(parse_objective(CLI::detail::trim_copy(name)));
            }
            config.constraints.fit_boundary |= fit_boundary;
            config.constraints.no_penalty |= no_penalty;
            p.use_rotation_genes |= rotation_genes;
            config.validate();

            const RunResult result = nsga2_run(p, config);
            write_run_artifacts(out, p, config, result);
            const auto& last = result.history.back();
            std::cout << fmt::format("{} generations, best adjacency {}/{}, {} pareto solutions -> {}\n", last.generation,
                                     last.best_adjacency, p.goals.count(config.goal_level), result.pareto.size(), out);
        } else if (*extend) {
            const Floorplan fp = load_layout(layout_path);
            const auto [w, h] = parse_size(boundary_text);
            const auto reqs = problem_path.empty() ? requirements_from_blocks(fp) : load_problem(problem_path).requirements;
            const ExtendedLayout ex = extend_layout(fp, reqs, w, h);
            Json j = extended_to_json(ex);
            if (!ex.penalty) j["allocated"] = allocated_to_json(allocate_fixed_blocks(ex, reqs));
            emit(out, j.dump(2) + "\n");
        } else if (*render) {
            const Floorplan fp = load_layout(layout_path);
            spec.kind = parse_render_kind(kind_name);
            std::vector<AdjacencyGoal> goals;
            std::vector<SpatialRequirement> reqs;
            if (!problem_path.empty()) {
                const Problem p = load_problem(problem_path);
                goals = p.goals.entries(parse_priority(level_name));
                reqs = p.requirements;
            }
            emit(out, render_svg(fp, goals, spec, reqs));
        } else if (*serve_cmd) {
            return serve(host, port, state_dir, static_dir);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
