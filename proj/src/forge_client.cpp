#include "gitrank/forge_client.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace gitrank {

namespace fs = std::filesystem;
using namespace std::chrono;

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<std::int64_t> parse_int(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
    return v;
}

std::uint64_t count_of(const nlohmann::json& doc, const std::string& key)
{
    if (!doc.is_object() || !doc.contains(key)) throw DecodeError(key, "field missing");
    const auto& v = doc.at(key);
    if (!v.is_number_unsigned()) throw DecodeError(key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string string_of(const nlohmann::json& doc, const std::string& key)
{
    if (!doc.is_object() || !doc.contains(key)) throw DecodeError(key, "field missing");
    const auto& v = doc.at(key);
    if (!v.is_string()) throw DecodeError(key, "expected a string");
    return v.get<std::string>();
}

nlohmann::json parse_body(const HttpResponse& resp, const std::string& target)
{
    try {
        return nlohmann::json::parse(resp.body);
    } catch (const nlohmann::json::exception& e) {
        throw DecodeError("<body of " + target + ">", e.what());
    }
}

bool rate_limited(const HttpResponse& resp)
{
    if (resp.status == 429) return true;
    if (resp.status != 403) return false;
    return resp.header("retry-after").has_value() ||
           resp.header("x-ratelimit-remaining").value_or("") == "0";
}

}  // namespace

std::optional<std::string> HttpResponse::header(const std::string& lower_name) const
{
    const auto it = headers.find(lower_name);
    if (it == headers.end()) return std::nullopt;
    return it->second;
}

ReplayTransport ReplayTransport::from_json(const nlohmann::json& doc)
{
    ReplayTransport t;
    for (const auto& entry : doc.at("responses")) {
        HttpResponse resp;
        resp.status = entry.value("status", 200);
        if (entry.contains("headers")) {
            for (const auto& [k, v] : entry.at("headers").items()) {
                resp.headers[lower(k)] = v.get<std::string>();
            }
        }
        if (entry.contains("body")) {
            const auto& body = entry.at("body");
            resp.body = body.is_string() ? body.get<std::string>() : body.dump();
        }
        t.add(entry.at("target").get<std::string>(), std::move(resp));
    }
    return t;
}

ReplayTransport ReplayTransport::from_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw TransportError("cannot open recording " + path.string());
    return from_json(nlohmann::json::parse(in));
}

void ReplayTransport::add(std::string target, HttpResponse response)
{
    responses_[std::move(target)] = std::move(response);
}

HttpResponse ReplayTransport::get(const HttpRequest& request)
{
    seen_.push_back(request);
    const auto it = responses_.find(request.target);
    if (it == responses_.end()) {
        throw TransportError("no recorded response for " + request.target);
    }
    return it->second;
}

Credentials Credentials::from_environment()
{
    Credentials c;
    if (const char* token = std::getenv("GITRANK_TOKEN"); token && *token) c.token = token;
    return c;
}

ForgeClient::ForgeClient(Transport& transport, Credentials credentials, RetryPolicy policy,
                         Sleeper sleeper, Clock clock)
    : transport_(transport),
      credentials_(std::move(credentials)),
      policy_(policy),
      sleeper_(sleeper ? std::move(sleeper)
                       : Sleeper([](milliseconds d) { std::this_thread::sleep_for(d); })),
      clock_(clock ? std::move(clock) : Clock(now_utc))
{
}

HttpResponse ForgeClient::request(const std::string& target)
{
    std::lock_guard lock(gate_);

    HttpRequest req{target,
                    {{"Accept", "application/vnd.github+json"},
                     {"User-Agent", "gitrank"},
                     {"X-GitHub-Api-Version", "2022-11-28"}}};
    if (credentials_.token) req.headers.emplace_back("Authorization", "Bearer " + *credentials_.token);

    milliseconds backoff = policy_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
        const bool last_attempt = attempt >= policy_.max_retries;
        HttpResponse resp;
        try {
            resp = transport_.get(req);
        } catch (const TransportError&) {
            if (last_attempt) throw;
            sleeper_(backoff);
            backoff *= 2;
            continue;
        }

        if (rate_limited(resp)) {
            const Timestamp now = clock_();
            Timestamp reset = now + duration_cast<seconds>(backoff);
            if (const auto after = parse_int(resp.header("retry-after").value_or("x"))) {
                reset = now + seconds{*after};
            } else if (const auto epoch = parse_int(resp.header("x-ratelimit-reset").value_or("x"))) {
                reset = Timestamp{seconds{*epoch}};
            }
            const auto wait = std::max(reset - now, seconds{0});
            if (last_attempt || wait > policy_.max_wait) throw RateLimitError(reset);
            sleeper_(std::max<milliseconds>(wait, backoff));
            backoff *= 2;
            continue;
        }
        if (resp.status >= 500) {
            if (last_attempt) throw HttpError(resp.status, target);
            sleeper_(backoff);
            backoff *= 2;
            continue;
        }
        return resp;
    }
}

nlohmann::json ForgeClient::request_json(const std::string& target)
{
    const auto resp = request(target);
    if (resp.status < 200 || resp.status >= 300) throw HttpError(resp.status, target);
    return parse_body(resp, target);
}

std::uint64_t ForgeClient::count_commits(const std::string& repo, const std::string& branch,
                                         Timestamp until)
{
    const std::string target = "/repos/" + repo + "/commits?sha=" + url_encode(branch) +
                               "&until=" + url_encode(format_rfc3339(until)) + "&per_page=1";
    const auto resp = request(target);
    if (resp.status == 409) return 0;  // empty repository
    if (resp.status < 200 || resp.status >= 300) throw HttpError(resp.status, target);
    if (const auto link = resp.header("link")) {
        if (const auto pages = last_page_from_link(*link)) return *pages;
    }
    const auto body = parse_body(resp, target);
    if (!body.is_array()) throw DecodeError("commits", "expected an array");
    return body.size();
}

std::uint64_t ForgeClient::count_closed(const std::string& repo, Timestamp from, Timestamp to)
{
    const std::string query = "repo:" + repo + " is:closed closed:" + format_rfc3339(from) +
                              ".." + format_rfc3339(to);
    const auto body = request_json("/search/issues?q=" + url_encode(query) + "&per_page=1");
    return count_of(body, "total_count");
}

std::optional<fs::path> ForgeClient::cache_file(const std::string& owner, const std::string& name,
                                                Timestamp evaluated_at) const
{
    if (!cache_dir_) return std::nullopt;
    return *cache_dir_ / (owner + "__" + name + "__" + format_date(evaluated_at) + ".json");
}

ForgeRecord ForgeClient::fetch(const std::string& owner, const std::string& name,
                               Timestamp evaluated_at)
{
    const auto cached = cache_file(owner, name, evaluated_at);
    if (cached && fs::exists(*cached)) return load_fixture(*cached);

    const std::string repo = owner + "/" + name;
    const std::string repo_target = "/repos/" + repo;
    const auto resp = request(repo_target);
    if (resp.status == 404) throw UnknownRepositoryError(repo);
    if (resp.status < 200 || resp.status >= 300) throw HttpError(resp.status, repo_target);
    const auto meta = parse_body(resp, repo_target);

    ForgeRecord r;
    r.identity.owner = owner;
    r.identity.name = name;
    r.identity.evaluated_at = evaluated_at;
    const auto created = string_of(meta, "created_at");
    const auto created_at = parse_rfc3339(created);
    if (!created_at) throw DecodeError("created_at", "'" + created + "' is not RFC 3339");
    r.identity.created_at = *created_at;
    r.snapshot.stargazers = count_of(meta, "stargazers_count");
    r.snapshot.subscribers = count_of(meta, "subscribers_count");
    r.snapshot.forks = count_of(meta, "forks_count");

    r.snapshot.total_commits = count_commits(repo, string_of(meta, "default_branch"), evaluated_at);
    r.snapshot.closed_2y = count_closed(repo, months_before(evaluated_at, 24), evaluated_at);
    r.snapshot.closed_1y = count_closed(repo, months_before(evaluated_at, 12), evaluated_at);
    r.snapshot.closed_6m = count_closed(repo, months_before(evaluated_at, 6), evaluated_at);
    r.snapshot.closed_1m = count_closed(repo, months_before(evaluated_at, 1), evaluated_at);
    validate(r);

    if (cached) {
        fs::create_directories(cached->parent_path());
        save_fixture(r, *cached);
    }
    return r;
}

ForgeRecord fetch_snapshot(const RepoIdentity& identity, const Credentials& credentials,
                           Transport& transport, RetryPolicy policy)
{
    ForgeClient client(transport, credentials, policy);
    return client.fetch(identity.owner, identity.name, identity.evaluated_at);
}

std::string url_encode(std::string_view text)
{
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc) || c == '-' || c == '.' || c == '_' || c == '~') {
            out += c;
        } else {
            out += '%';
            out += hex[uc >> 4];
            out += hex[uc & 0xF];
        }
    }
    return out;
}

std::optional<std::uint64_t> last_page_from_link(const std::string& link)
{
    std::size_t pos = 0;
    while (pos < link.size()) {
        const auto lt = link.find('<', pos);
        if (lt == std::string::npos) break;
        const auto gt = link.find('>', lt);
        if (gt == std::string::npos) break;
        const auto next = link.find(',', gt);
        const auto params = link.substr(gt + 1, next == std::string::npos ? link.npos : next - gt - 1);
        if (params.find("rel=\"last\"") != std::string::npos) {
            const auto url = link.substr(lt + 1, gt - lt - 1);
            for (const char* key : {"?page=", "&page="}) {
                const auto p = url.find(key);
                if (p == std::string::npos) continue;
                const auto begin = p + 6;
                auto end = url.find('&', begin);
                if (end == std::string::npos) end = url.size();
                if (const auto n = parse_int(std::string_view(url).substr(begin, end - begin));
                    n && *n >= 0) {
                    return static_cast<std::uint64_t>(*n);
                }
            }
            return std::nullopt;
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return std::nullopt;
}

}  // namespace gitrank
