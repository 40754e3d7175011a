#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <thread>

#include "vcsim/gateway/api.hpp"

namespace httplib {
class Server;
}

namespace vcsim::gateway {

// Serves an Api over HTTP on a background thread. The /events route keeps
// the connection open and pushes NDJSON match events as they arrive.
class HttpServer {
public:
    explicit HttpServer(Api& api);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds and starts listening; port 0 picks a free port. Returns the
    /// bound port. Throws std::runtime_error if binding fails.
    int start(const std::string& host, int port);
    /// Blocks the caller until stop() is called from elsewhere.
    void wait();
    void stop();

private:
    Api& api_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

} // namespace vcsim::gateway
