// Python bindings. Structured values cross the boundary as JSON text; the
// package wrapper turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genfloor/extend.hpp"
#include "genfloor/io.hpp"
#include "genfloor/perturb.hpp"
#include "genfloor/render.hpp"
#include "genfloor/search.hpp"
#include "genfloor/tree.hpp"

namespace py = pybind11;
using namespace genfloor;

namespace {

Problem problem_of(const std::string& text) { return problem_from_json(parse_json(text)); }

std::string generate(const std::string& problem_json, const std::string& params_text, const std::vector<bool>& rotations)
{
    const Problem p = problem_of(problem_json);
    const int n = static_cast<int>(p.size());
    PermutationParams params =
        params_text.empty() ? identity_params(p.representation, n) : PermutationParams::parse(p.representation, params_text);
    params.validate(n);
    if (!rotations.empty() && rotations.size() != p.size())
        throw ValidationError("expected " + std::to_string(p.size()) + " rotation flags");
    const auto tree = perturb(build_standard_tree(n, tree_kind_for(p.representation)), params);
    return floorplan_to_json(place(tree, p.requirements, rotations, p.representation)).dump();
}

std::string optimize(const std::string& problem_json, const std::string& config_json, const std::string& out_dir)
{
    const Problem p = problem_of(problem_json);
    const GAConfig config = config_from_json(parse_json(config_json));
    config.validate();
    RunResult r;
    {
        py::gil_scoped_release release;
        r = nsga2_run(p, config);
        if (!out_dir.empty()) write_run_artifacts(out_dir, p, config, r);
    }
    Json pareto = Json::array();
    for (const auto& s : r.pareto) pareto.push_back(solution_to_json(s));
    Json out;
    out["history"] = history_to_json(r.history);
    out["pareto"] = std::move(pareto);
    return out.dump();
}

std::string extend(const std::string& floorplan_json, double width, double height, const std::string& problem_json)
{
    const Floorplan fp = floorplan_from_json(parse_json(floorplan_json));
    const auto reqs = problem_of(problem_json).requirements;
    const ExtendedLayout ex = extend_layout(fp, reqs, width, height);
    Json j = extended_to_json(ex);
    if (!ex.penalty) j["allocated"] = allocated_to_json(allocate_fixed_blocks(ex, reqs));
    return j.dump();
}

std::string render(const std::string& floorplan_json, const std::string& kind, const std::string& problem_json,
                   const std::string& level, int size)
{
    const Floorplan fp = floorplan_from_json(parse_json(floorplan_json));
    RenderSpec spec;
    spec.kind = parse_render_kind(kind);
    spec.size = size;
    std::vector<AdjacencyGoal> goals;
    std::vector<SpatialRequirement> reqs;
    if (!problem_json.empty()) {
        const Problem p = problem_of(problem_json);
        goals = p.goals.entries(parse_priority(level));
        reqs = p.requirements;
    }
    return render_svg(fp, goals, spec, reqs);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def("problem_from_csv", [](const std::string& text, const std::string& method) {
        return problem_to_json(problem_from_csv(text, parse_method(method))).dump();
    });
    m.def("normalize_problem", [](const std::string& text) { return problem_to_json(problem_of(text)).dump(); });
    m.def("standard_tree", [](const std::string& method, int n) {
        return to_bracket_string(build_standard_tree(n, tree_kind_for(parse_method(method))));
    });
    m.def("identity_params", [](const std::string& method, int n) { return identity_params(parse_method(method), n).to_string(); });
    m.def("perturb", [](const std::string& method, int n, const std::string& params) {
        const Method mth = parse_method(method);
        const auto p = PermutationParams::parse(mth, params);
        p.validate(n);
        return to_bracket_string(perturb(build_standard_tree(n, tree_kind_for(mth)), p));
    });
    m.def("generate", &generate);
    m.def("evaluate", [](const std::string& floorplan_json, const std::string& problem_json, const std::string& level) {
        return evaluation_report(floorplan_from_json(parse_json(floorplan_json)), problem_of(problem_json), parse_priority(level)).dump();
    });
    m.def("optimize", &optimize);
    m.def("extend", &extend);
    m.def("render", &render);
}
