#include "faceart/errors.hpp"
#include "faceart/osm.hpp"

#include <map>
#include <memory>
#include <mutex>

#include <httplib.h>

namespace faceart {

namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw NetworkError("endpoint is not an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::mutex& endpoint_mutex(const std::string& origin) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::unique_ptr<std::mutex>> registry;
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto& slot = registry[origin];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

}  // namespace

HttpTransport default_transport() {
  return [](const HttpRequest& req) -> HttpResponse {
    const ParsedUrl url = split_url(req.url);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url.origin.rfind("https://", 0) == 0) {
      throw NetworkError("built without TLS support; use an http:// endpoint");
    }
#endif
    std::lock_guard<std::mutex> polite(endpoint_mutex(url.origin));
    httplib::Client client(url.origin);
    client.set_connection_timeout(std::chrono::seconds(30));
    client.set_read_timeout(req.timeout + std::chrono::seconds(30));
    client.set_follow_location(true);
    auto res = client.Post(url.path, req.body, req.content_type);
    if (!res) throw NetworkError("request failed: " + httplib::to_string(res.error()));
    return HttpResponse{res->status, res->body};
  };
}

}  // namespace faceart
