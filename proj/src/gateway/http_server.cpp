#include "vcsim/gateway/http_server.hpp"

#include <stdexcept>

#include <httplib.h>

#include "vcsim/core/json_io.hpp"

namespace vcsim::gateway {

namespace {

ApiRequest to_api_request(const httplib::Request& req) {
    ApiRequest out;
    out.method = req.method;
    out.path = req.path;
    for (const auto& [k, v] : req.params) {
        out.query.emplace(k, v);
    }
    out.body = req.body;
    return out;
}

} // namespace

HttpServer::HttpServer(Api& api) : api_(api), server_(std::make_unique<httplib::Server>()) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
    auto& srv = *server_;

    srv.Get("/api/v1/events", [this](const httplib::Request& req, httplib::Response& res) {
        std::uint64_t since = 0;
        if (req.has_param("since")) {
            try {
                since = std::stoull(req.get_param_value("since"));
            } catch (const std::exception&) {
                res.status = 400;
                res.set_content(R"({"error":"since must be a non-negative integer"})", "application/json");
                return;
            }
        }
        auto sub = std::make_shared<Subscription>(api_.subscribe(since));
        res.set_chunked_content_provider(kStreamContentType, [sub](std::size_t, httplib::DataSink& sink) {
            std::vector<MatchEvent> batch;
            while (sink.is_writable()) {
                switch (sub->next(batch, std::chrono::milliseconds(200))) {
                case Subscription::Status::Ok:
                    if (batch.empty()) continue;
                    for (const auto& e : batch) {
                        const auto line = nlohmann::json(e).dump() + "\n";
                        if (!sink.write(line.data(), line.size())) return false;
                    }
                    return true;
                case Subscription::Status::Disconnected:
                case Subscription::Status::Closed: sink.done(); return true;
                }
            }
            return false;
        });
    });

    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        auto reply = api_.handle(to_api_request(req));
        res.status = reply.status;
        res.set_content(std::move(reply.body), reply.content_type);
    };
    srv.Get(".*", forward);
    srv.Post(".*", forward);
    srv.Delete(".*", forward);
    srv.Put(".*", forward);
    srv.Patch(".*", forward);

    const int bound = port == 0 ? srv.bind_to_any_port(host) : (srv.bind_to_port(host, port) ? port : -1);
    if (bound < 0) {
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    thread_ = std::thread([&srv] { srv.listen_after_bind(); });
    srv.wait_until_ready();
    return bound;
}

void HttpServer::wait() {
    if (thread_.joinable()) {
        thread_.join();
    }
}

void HttpServer::stop() {
    api_.services().matches.close();
    if (server_) {
        server_->stop();
    }
    if (thread_.joinable()) {
        thread_.join();
    }
}

} // namespace vcsim::gateway
