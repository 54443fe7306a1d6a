#pragma once

#include <filesystem>
#include <memory>
#include <string>

namespace genfloor {

/// JSON-over-HTTP front end.
///
///   POST /api/problems                      problem JSON -> {id}
///   GET  /api/problems/{id}
///   POST /api/problems/{id}/generate        {method, params, rotations} -> {solution_id, floorplan, report}
///   POST /api/problems/{id}/optimize        GA config -> {run_id}
///   GET  /api/runs/{id}                     status and history
///   GET  /api/runs/{id}/pareto
///   POST /api/runs/{id}/cancel
///   GET  /api/solutions/{id}                solution JSON (run solutions match pareto/NNN.json)
///   GET  /api/solutions/{id}.svg?kind=floorplan|bubble|tree
///
/// Problems and finished run artifacts are written under the state
/// directory. Runs execute on background threads; their state is read
/// through snapshots taken under the run's lock.
class HttpService {
public:
    explicit HttpService(std::filesystem::path state_dir, std::filesystem::path static_dir = {});
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    /// Binds and serves on a background thread. Port 0 picks a free port;
    /// the bound port is returned. Throws when binding fails.
    int start(const std::string& host, int port);
    /// Blocks until stop() is called from another thread or a signal handler.
    void wait();
    /// Stops listening, cancels active runs and joins them.
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace genfloor
