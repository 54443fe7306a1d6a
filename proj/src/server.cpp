#include "genfloor/server.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>

#include "genfloor/io.hpp"
#include "genfloor/perturb.hpp"
#include "genfloor/render.hpp"

namespace genfloor {

namespace {

struct Run {
    std::string id;
    std::string problem_id;
    Problem problem;
    GAConfig config;
    std::atomic<bool> cancel{false};
    std::thread worker;

    std::mutex m;  // guards everything below
    std::string status = "queued";
    std::vector<GenerationStats> history;
    std::vector<Solution> pareto;
    std::string error;
};

struct StoredSolution {
    std::string problem_id;
    Floorplan floorplan;
    Json body;
};

void reply_json(httplib::Response& res, int status, const Json& body)
{
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message)
{
    reply_json(res, status, Json{{"error", message}});
}

// Numbers in a params array become the CLI text form, pairs joined by ':'.
std::string params_text(const Json& j)
{
    if (j.is_string()) return j.get<std::string>();
    if (!j.is_array()) throw ValidationError("params must be a string or an array");
    std::string out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        if (j[i].is_array()) {
            if (j[i].size() != 2 || !j[i][0].is_number() || !j[i][1].is_number())
                throw ValidationError("ascend/descend params must be [up, down] pairs");
            out += fmt::format("{}:{}", j[i][0].get<double>(), j[i][1].get<double>());
        } else if (j[i].is_number()) {
            out += fmt::format("{}", j[i].get<double>());
        } else {
            throw ValidationError("params must be numbers");
        }
    }
    return out;
}

Rotations rotations_from(const Json& j, std::size_t n)
{
    if (j.is_null()) return {};
    if (!j.is_array() || j.size() != n) throw ValidationError(fmt::format("rotations must list {} booleans", n));
    Rotations r;
    for (const auto& v : j) {
        if (v.is_boolean()) r.push_back(v.get<bool>());
        else if (v.is_number_integer()) r.push_back(v.get<int>() != 0);
        else throw ValidationError("rotations must be booleans");
    }
    return r;
}

}  // namespace

struct HttpService::Impl {
    std::filesystem::path state_dir;
    std::filesystem::path static_dir;
    httplib::Server server;
    std::thread listener;

    std::mutex m;  // guards the maps and counters
    std::map<std::string, Problem> problems;
    std::map<std::string, std::shared_ptr<Run>> runs;
    std::map<std::string, StoredSolution> solutions;
    int next_problem = 1, next_run = 1, next_solution = 1;

    Impl(std::filesystem::path state, std::filesystem::path statics)
        : state_dir(std::move(state)), static_dir(std::move(statics))
    {
        std::filesystem::create_directories(state_dir / "problems");
        std::filesystem::create_directories(state_dir / "runs");
        routes();
    }

    std::optional<Problem> find_problem(const std::string& id)
    {
        std::lock_guard lock(m);
        auto it = problems.find(id);
        if (it == problems.end()) return std::nullopt;
        return it->second;
    }

    std::shared_ptr<Run> find_run(const std::string& id)
    {
        std::lock_guard lock(m);
        auto it = runs.find(id);
        return it == runs.end() ? nullptr : it->second;
    }

    void execute(const std::shared_ptr<Run>& run)
    {
        {
            std::lock_guard lock(run->m);
            run->status = "running";
        }
        try {
            auto progress = [run](const GenerationStats& g) {
                std::lock_guard lock(run->m);
                run->history.push_back(g);
                return !run->cancel.load();
            };
            RunResult result = nsga2_run(run->problem, run->config, progress);
            write_run_artifacts(state_dir / "runs" / run->id, run->problem, run->config, result);
            std::lock_guard glock(m);
            for (std::size_t i = 0; i < result.pareto.size(); ++i) {
                const std::string sid = fmt::format("{}-{:03}", run->id, i);
                // Same bytes as the run's pareto/NNN.json artifact.
                solutions[sid] = StoredSolution{run->problem_id, result.pareto[i].floorplan, solution_to_json(result.pareto[i])};
            }
            std::lock_guard lock(run->m);
            run->history = result.history;
            run->pareto = std::move(result.pareto);
            run->status = result.cancelled ? "cancelled" : "done";
        } catch (const std::exception& e) {
            std::lock_guard lock(run->m);
            run->status = "failed";
            run->error = e.what();
        }
    }

    Json run_json(Run& run)
    {
        std::lock_guard lock(run.m);
        Json j{{"id", run.id},
               {"problem_id", run.problem_id},
               {"status", run.status},
               {"config", config_to_json(run.config)},
               {"history", history_to_json(run.history)},
               {"pareto_count", run.pareto.size()}};
        if (!run.error.empty()) j["error"] = run.error;
        return j;
    }

    void routes()
    {
        // Handlers signal client errors by throwing ValidationError.
        server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
            try {
                std::rethrow_exception(ep);
            } catch (const ValidationError& e) {
                reply_error(res, 422, e.what());
            } catch (const std::exception& e) {
                reply_error(res, 500, e.what());
            }
        });

        server.Post("/api/problems", [this](const httplib::Request& req, httplib::Response& res) {
            Problem p = problem_from_json(parse_json(req.body));
            std::string id;
            {
                std::lock_guard lock(m);
                id = fmt::format("p{}", next_problem++);
                problems[id] = p;
            }
            write_text_file(state_dir / "problems" / (id + ".json"), problem_to_json(p).dump(2) + "\n");
            Json body = problem_to_json(p);
            body["id"] = id;
            reply_json(res, 201, body);
        });

        server.Get(R"(/api/problems/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
            auto p = find_problem(req.matches[1]);
            if (!p) return reply_error(res, 404, "unknown problem");
            Json body = problem_to_json(*p);
            body["id"] = std::string(req.matches[1]);
            reply_json(res, 200, body);
        });

        server.Post(R"(/api/problems/([^/]+)/generate)", [this](const httplib::Request& req, httplib::Response& res) {
            const std::string pid = req.matches[1];
            auto p = find_problem(pid);
            if (!p) return reply_error(res, 404, "unknown problem");
            const Json body = req.body.empty() ? Json::object() : parse_json(req.body);
            const Method method =
                body.contains("method") && body.at("method").is_string() ? parse_method(body.at("method").get<std::string>()) : p->representation;
            const int n = static_cast<int>(p->size());
            PermutationParams params = body.contains("params") && !body.at("params").is_null()
                                           ? PermutationParams::parse(method, params_text(body.at("params")))
                                           : identity_params(method, n);
            params.validate(n);
            const Rotations rot = rotations_from(body.value("rotations", Json(nullptr)), p->size());
            const auto tree = perturb(build_standard_tree(n, tree_kind_for(method)), params);
            const Floorplan fp = place(tree, p->requirements, rot, method);

            Json out;
            {
                std::lock_guard lock(m);
                const std::string sid = fmt::format("s{}", next_solution++);
                out = Json{{"solution_id", sid},
                           {"problem_id", pid},
                           {"params", params.to_string()},
                           {"floorplan", floorplan_to_json(fp)},
                           {"report", evaluation_report(fp, *p)}};
                solutions[sid] = StoredSolution{pid, fp, out};
            }
            reply_json(res, 201, out);
        });

        server.Post(R"(/api/problems/([^/]+)/optimize)", [this](const httplib::Request& req, httplib::Response& res) {
            const std::string pid = req.matches[1];
            auto p = find_problem(pid);
            if (!p) return reply_error(res, 404, "unknown problem");
            GAConfig config = config_from_json(req.body.empty() ? Json(nullptr) : parse_json(req.body));
            Evaluator check(*p, config);  // rejects configs the problem cannot satisfy
            auto run = std::make_shared<Run>();
            run->problem_id = pid;
            run->problem = *p;
            run->config = config;
            {
                std::lock_guard lock(m);
                run->id = fmt::format("r{}", next_run++);
                runs[run->id] = run;
            }
            run->worker = std::thread([this, run] { execute(run); });
            reply_json(res, 202, Json{{"run_id", run->id}});
        });

        server.Get(R"(/api/runs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
            auto run = find_run(req.matches[1]);
            if (!run) return reply_error(res, 404, "unknown run");
            reply_json(res, 200, run_json(*run));
        });

        server.Get(R"(/api/runs/([^/]+)/pareto)", [this](const httplib::Request& req, httplib::Response& res) {
            auto run = find_run(req.matches[1]);
            if (!run) return reply_error(res, 404, "unknown run");
            std::lock_guard lock(run->m);
            Json list = Json::array();
            for (std::size_t i = 0; i < run->pareto.size(); ++i)
                list.push_back(Json{{"solution_id", fmt::format("{}-{:03}", run->id, i)}, {"solution", solution_to_json(run->pareto[i])}});
            reply_json(res, 200, Json{{"run_id", run->id}, {"status", run->status}, {"solutions", list}});
        });

        server.Post(R"(/api/runs/([^/]+)/cancel)", [this](const httplib::Request& req, httplib::Response& res) {
            auto run = find_run(req.matches[1]);
            if (!run) return reply_error(res, 404, "unknown run");
            run->cancel = true;
            reply_json(res, 202, Json{{"run_id", run->id}});
        });

        server.Get(R"(/api/solutions/([^/]+)\.svg)", [this](const httplib::Request& req, httplib::Response& res) {
            StoredSolution s;
            Problem p;
            {
                std::lock_guard lock(m);
                auto it = solutions.find(req.matches[1]);
                if (it == solutions.end()) return reply_error(res, 404, "unknown solution");
                s = it->second;
                p = problems.at(s.problem_id);
            }
            RenderSpec spec;
            spec.kind = parse_render_kind(req.has_param("kind") ? req.get_param_value("kind") : "floorplan");
            const Priority level = req.has_param("level") ? parse_priority(req.get_param_value("level")) : Priority::L1;
            res.set_content(render_svg(s.floorplan, p.goals.entries(level), spec, p.requirements), "image/svg+xml");
        });

        server.Get(R"(/api/solutions/([^/.]+))", [this](const httplib::Request& req, httplib::Response& res) {
            std::lock_guard lock(m);
            auto it = solutions.find(req.matches[1]);
            if (it == solutions.end()) return reply_error(res, 404, "unknown solution");
            reply_json(res, 200, it->second.body);
        });

        if (!static_dir.empty() && !server.set_mount_point("/", static_dir.string()))
            throw ValidationError("static directory '" + static_dir.string() + "' does not exist");
    }
};

HttpService::HttpService(std::filesystem::path state_dir, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(std::move(state_dir), std::move(static_dir)))
{
}

HttpService::~HttpService() { stop(); }

int HttpService::start(const std::string& host, int port)
{
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
    } else if (!impl_->server.bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) throw std::runtime_error(fmt::format("cannot bind {}:{}", host, port));
    impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void HttpService::wait()
{
    if (impl_->listener.joinable()) impl_->listener.join();
}

void HttpService::stop()
{
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->listener.joinable()) impl_->listener.join();
    std::vector<std::shared_ptr<Run>> runs;
    {
        std::lock_guard lock(impl_->m);
        for (auto& [id, r] : impl_->runs) runs.push_back(r);
    }
    for (auto& r : runs) {
        r->cancel = true;
        if (r->worker.joinable()) r->worker.join();
    }
}

}  // namespace genfloor
