#include "gitrank/http_transport.hpp"

#include <algorithm>
#include <cctype>

#include "httplib.h"

namespace gitrank {

struct HttpTransport::Impl {
    httplib::Client client;

    explicit Impl(const std::string& base_url) : client(base_url) {}
};

HttpTransport::HttpTransport(const std::string& base_url, std::chrono::seconds timeout)
    : impl_(std::make_unique<Impl>(base_url))
{
    impl_->client.set_connection_timeout(timeout);
    impl_->client.set_read_timeout(timeout);
    impl_->client.set_follow_location(true);
}

HttpTransport::~HttpTransport() = default;

HttpResponse HttpTransport::get(const HttpRequest& request)
{
    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);
    auto result = impl_->client.Get(request.target, headers);
    if (!result) {
        throw TransportError("request to " + request.target +
                             " failed: " + httplib::to_string(result.error()));
    }
    HttpResponse resp;
    resp.status = result->status;
    resp.body = result->body;
    for (const auto& [k, v] : result->headers) {
        std::string key = k;
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        resp.headers[key] = v;
    }
    return resp;
}

}  // namespace gitrank
