#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "gitrank/forge_client.hpp"

namespace gitrank {

/// Live transport over HTTP(S). `base_url` is scheme + host, e.g.
/// `https://api.github.com`.
class HttpTransport : public Transport {
public:
    explicit HttpTransport(const std::string& base_url = "https://api.github.com",
                           std::chrono::seconds timeout = std::chrono::seconds{30});
    ~HttpTransport() override;

    HttpTransport(const HttpTransport&) = delete;
    HttpTransport& operator=(const HttpTransport&) = delete;

    HttpResponse get(const HttpRequest& request) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace gitrank
