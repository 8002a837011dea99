#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gitrank/forge.hpp"
#include "gitrank/timestamp.hpp"

namespace gitrank {

struct HttpRequest {
    std::string target;  ///< path plus query, e.g. `/repos/o/n?x=1`
    std::vector<std::pair<std::string, std::string>> headers;
};

struct HttpResponse {
    int status{0};
    std::map<std::string, std::string> headers;  ///< keys lower-case
    std::string body;

    [[nodiscard]] std::optional<std::string> header(const std::string& lower_name) const;
};

/// Network failure below the HTTP layer (connect, TLS, timeout).
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpResponse get(const HttpRequest& request) = 0;
};

/// Serves recorded responses keyed by request target. The recording format
/// is `{"responses": [{"target": ..., "status": ..., "headers": {...},
/// "body": <JSON value or string>}]}`. An unrecorded target throws
/// TransportError.
class ReplayTransport : public Transport {
public:
    ReplayTransport() = default;
    static ReplayTransport from_file(const std::filesystem::path& path);
    static ReplayTransport from_json(const nlohmann::json& doc);

    void add(std::string target, HttpResponse response);
    HttpResponse get(const HttpRequest& request) override;

    [[nodiscard]] const std::vector<HttpRequest>& requests() const noexcept { return seen_; }

private:
    std::map<std::string, HttpResponse> responses_;
    std::vector<HttpRequest> seen_;
};

struct Credentials {
    std::optional<std::string> token;

    /// Token from GITRANK_TOKEN; anonymous when unset or empty.
    static Credentials from_environment();
};

class UnknownRepositoryError : public std::runtime_error {
public:
    explicit UnknownRepositoryError(const std::string& repo)
        : std::runtime_error("unknown repository: " + repo)
    {
    }
};

class RateLimitError : public std::runtime_error {
public:
    explicit RateLimitError(Timestamp reset_at)
        : std::runtime_error("rate limited until " + format_rfc3339(reset_at)),
          reset_at_(reset_at)
    {
    }

    [[nodiscard]] Timestamp reset_at() const noexcept { return reset_at_; }

private:
    Timestamp reset_at_;
};

class DecodeError : public std::runtime_error {
public:
    DecodeError(std::string field, const std::string& detail)
        : std::runtime_error("cannot decode '" + field + "': " + detail), field_(std::move(field))
    {
    }

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class HttpError : public std::runtime_error {
public:
    HttpError(int status, const std::string& target)
        : std::runtime_error("HTTP " + std::to_string(status) + " for " + target),
          status_(status)
    {
    }

    [[nodiscard]] int status() const noexcept { return status_; }

private:
    int status_;
};

struct RetryPolicy {
    int max_retries{5};
    std::chrono::milliseconds initial_backoff{1000};
    /// Rate-limit resets further away than this fail fast with RateLimitError.
    std::chrono::seconds max_wait{std::chrono::minutes{5}};
};

/// REST client for a GitHub-compatible forge. Requests are serialized
/// through one gate per client so concurrent callers share the rate budget.
class ForgeClient {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;
    using Clock = std::function<Timestamp()>;

    ForgeClient(Transport& transport, Credentials credentials, RetryPolicy policy = {},
                Sleeper sleeper = {}, Clock clock = {});

    /// Optional on-disk cache keyed by (owner, name, evaluation date).
    void set_cache_dir(std::filesystem::path dir) { cache_dir_ = std::move(dir); }

    /// Snapshot as of `evaluated_at`: repository counters and creation date,
    /// default-branch commit count up to `evaluated_at`, and closed issue+PR
    /// counts for the four trailing windows.
    [[nodiscard]] ForgeRecord fetch(const std::string& owner, const std::string& name,
                                    Timestamp evaluated_at);

private:
    HttpResponse request(const std::string& target);
    nlohmann::json request_json(const std::string& target);
    std::uint64_t count_commits(const std::string& repo, const std::string& branch,
                                Timestamp until);
    std::uint64_t count_closed(const std::string& repo, Timestamp from, Timestamp to);
    [[nodiscard]] std::optional<std::filesystem::path> cache_file(const std::string& owner,
                                                                  const std::string& name,
                                                                  Timestamp evaluated_at) const;

    Transport& transport_;
    Credentials credentials_;
    RetryPolicy policy_;
    Sleeper sleeper_;
    Clock clock_;
    std::optional<std::filesystem::path> cache_dir_;
    std::mutex gate_;
};

/// One-shot fetch: identity supplies owner, name and evaluated_at; the
/// returned record carries the forge's creation date.
[[nodiscard]] ForgeRecord fetch_snapshot(const RepoIdentity& identity,
                                         const Credentials& credentials, Transport& transport,
                                         RetryPolicy policy = {});

/// Percent-encodes everything except RFC 3986 unreserved characters.
[[nodiscard]] std::string url_encode(std::string_view text);

/// Page number of the `rel="last"` link in an RFC 8288 Link header.
[[nodiscard]] std::optional<std::uint64_t> last_page_from_link(const std::string& link);

}  // namespace gitrank
