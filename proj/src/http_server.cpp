#include <httplib.h>

#include "tracecity/scene_service.hpp"

namespace tracecity {

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(SceneService& service, std::string static_dir) : impl_(std::make_unique<Impl>()) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    const auto response = service.handle(req.path, params);
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  impl_->server.Get(R"(/api/.*)", handler);
  if (!static_dir.empty()) impl_->server.set_mount_point("/", static_dir);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace tracecity
