#include <gtest/gtest.h>

#include <deque>
#include <map>

#include "gitrank/forge_client.hpp"
#include "test_support.hpp"

using namespace gitrank;
using namespace std::chrono;

namespace {

Timestamp ts(const char* text) { return *parse_rfc3339(text); }

const Timestamp kEval = ts("2024-06-15T00:00:00Z");

std::string search_target(Timestamp from, Timestamp to)
{
    return "/search/issues?q=" +
           url_encode("repo:acme/widgets is:closed closed:" + format_rfc3339(from) + ".." +
                      format_rfc3339(to)) +
           "&per_page=1";
}

std::string commits_target()
{
    return "/repos/acme/widgets/commits?sha=main&until=" + url_encode(format_rfc3339(kEval)) +
           "&per_page=1";
}

HttpResponse json_response(const nlohmann::json& body, int status = 200)
{
    return {status, {}, body.dump()};
}

/// Serves queued responses per target; the last one repeats.
class ScriptedTransport : public Transport {
public:
    void push(const std::string& target, HttpResponse r) { script_[target].push_back(std::move(r)); }

    HttpResponse get(const HttpRequest& request) override
    {
        seen.push_back(request);
        auto& q = script_.at(request.target);
        auto r = q.front();
        if (q.size() > 1) q.pop_front();
        return r;
    }

    std::vector<HttpRequest> seen;

private:
    std::map<std::string, std::deque<HttpResponse>> script_;
};

ScriptedTransport healthy_forge()
{
    ScriptedTransport t;
    t.push("/repos/acme/widgets", json_response({{"stargazers_count", 1200},
                                                 {"subscribers_count", 40},
                                                 {"forks_count", 300},
                                                 {"created_at", "2020-06-15T00:00:00Z"},
                                                 {"default_branch", "main"}}));
    HttpResponse commits = json_response(nlohmann::json::array({nlohmann::json::object()}));
    commits.headers["link"] =
        "<https://api.github.com/repositories/1/commits?sha=main&per_page=1&page=2>; rel=\"next\", "
        "<https://api.github.com/repositories/1/commits?sha=main&per_page=1&page=4321>; rel=\"last\"";
    t.push(commits_target(), commits);
    t.push(search_target(months_before(kEval, 24), kEval), json_response({{"total_count", 90}}));
    t.push(search_target(months_before(kEval, 12), kEval), json_response({{"total_count", 50}}));
    t.push(search_target(months_before(kEval, 6), kEval), json_response({{"total_count", 20}}));
    t.push(search_target(months_before(kEval, 1), kEval), json_response({{"total_count", 3}}));
    return t;
}

struct SleepLog {
    std::vector<milliseconds> sleeps;
    ForgeClient::Sleeper sleeper()
    {
        return [this](milliseconds d) { sleeps.push_back(d); };
    }
};

ForgeClient::Clock fixed_clock(Timestamp t)
{
    return [t] { return t; };
}

}  // namespace

TEST(ForgeClient, FetchAssemblesSnapshot)
{
    auto t = healthy_forge();
    SleepLog log;
    ForgeClient client(t, Credentials{"secret"}, {}, log.sleeper(), fixed_clock(kEval));
    const auto r = client.fetch("acme", "widgets", kEval);
    EXPECT_EQ(r.identity.owner, "acme");
    EXPECT_EQ(r.identity.created_at, ts("2020-06-15T00:00:00Z"));
    EXPECT_EQ(r.identity.evaluated_at, kEval);
    EXPECT_EQ(r.snapshot.stargazers, 1200u);
    EXPECT_EQ(r.snapshot.subscribers, 40u);
    EXPECT_EQ(r.snapshot.forks, 300u);
    EXPECT_EQ(r.snapshot.total_commits, 4321u);
    EXPECT_EQ(r.snapshot.closed_2y, 90u);
    EXPECT_EQ(r.snapshot.closed_1y, 50u);
    EXPECT_EQ(r.snapshot.closed_6m, 20u);
    EXPECT_EQ(r.snapshot.closed_1m, 3u);
    EXPECT_TRUE(log.sleeps.empty());

    ASSERT_FALSE(t.seen.empty());
    const auto& headers = t.seen[0].headers;
    const auto has = [&](const std::string& k, const std::string& v) {
        return std::find(headers.begin(), headers.end(), std::pair{k, v}) != headers.end();
    };
    EXPECT_TRUE(has("Authorization", "Bearer secret"));
    EXPECT_TRUE(has("Accept", "application/vnd.github+json"));
}

TEST(ForgeClient, AnonymousRequestsCarryNoAuthorization)
{
    auto t = healthy_forge();
    ForgeClient client(t, Credentials{}, {}, [](milliseconds) {});
    (void)client.fetch("acme", "widgets", kEval);
    for (const auto& req : t.seen) {
        for (const auto& [k, v] : req.headers) EXPECT_NE(k, "Authorization");
    }
}

TEST(ForgeClient, DeterministicAcrossRuns)
{
    auto a = healthy_forge();
    auto b = healthy_forge();
    ForgeClient ca(a, {}, {}, [](milliseconds) {});
    ForgeClient cb(b, {}, {}, [](milliseconds) {});
    EXPECT_EQ(ca.fetch("acme", "widgets", kEval), cb.fetch("acme", "widgets", kEval));
}

TEST(ForgeClient, UnknownRepository)
{
    ScriptedTransport t;
    t.push("/repos/acme/ghost", {404, {}, R"({"message":"Not Found"})"});
    ForgeClient client(t, {}, {}, [](milliseconds) {});
    EXPECT_THROW((void)client.fetch("acme", "ghost", kEval), UnknownRepositoryError);
}

TEST(ForgeClient, EmptyRepositoryHasZeroCommits)
{
    ScriptedTransport v;
    v.push("/repos/acme/widgets", healthy_forge().get({"/repos/acme/widgets", {}}));
    v.push(commits_target(), {409, {}, R"({"message":"Git Repository is empty."})"});
    for (int m : {24, 12, 6, 1}) {
        v.push(search_target(months_before(kEval, m), kEval), json_response({{"total_count", 0}}));
    }
    ForgeClient client(v, {}, {}, [](milliseconds) {});
    EXPECT_EQ(client.fetch("acme", "widgets", kEval).snapshot.total_commits, 0u);
}

TEST(ForgeClient, CommitCountWithoutLinkHeaderIsArraySize)
{
    ScriptedTransport v;
    v.push("/repos/acme/widgets", healthy_forge().get({"/repos/acme/widgets", {}}));
    v.push(commits_target(), json_response(nlohmann::json::array({nlohmann::json::object()})));
    for (int m : {24, 12, 6, 1}) {
        v.push(search_target(months_before(kEval, m), kEval), json_response({{"total_count", 0}}));
    }
    ForgeClient client(v, {}, {}, [](milliseconds) {});
    EXPECT_EQ(client.fetch("acme", "widgets", kEval).snapshot.total_commits, 1u);
}

TEST(ForgeClient, WaitsForRateLimitReset)
{
    ScriptedTransport t = healthy_forge();
    ScriptedTransport v;
    HttpResponse limited{403, {{"x-ratelimit-remaining", "0"}}, R"({"message":"rate limited"})"};
    limited.headers["x-ratelimit-reset"] =
        std::to_string((kEval + seconds{30}).time_since_epoch().count());
    v.push("/repos/acme/widgets", limited);
    v.push("/repos/acme/widgets", t.get({"/repos/acme/widgets", {}}));
    v.push(commits_target(), t.get({commits_target(), {}}));
    for (int m : {24, 12, 6, 1}) {
        const auto target = search_target(months_before(kEval, m), kEval);
        v.push(target, t.get({target, {}}));
    }
    SleepLog log;
    ForgeClient client(v, {}, {}, log.sleeper(), fixed_clock(kEval));
    EXPECT_EQ(client.fetch("acme", "widgets", kEval).snapshot.stargazers, 1200u);
    ASSERT_EQ(log.sleeps.size(), 1u);
    EXPECT_EQ(log.sleeps[0], seconds{30});
}

TEST(ForgeClient, RetryAfterHeaderOn429)
{
    ScriptedTransport t = healthy_forge();
    ScriptedTransport v;
    v.push("/repos/acme/widgets", {429, {{"retry-after", "7"}}, "{}"});
    v.push("/repos/acme/widgets", t.get({"/repos/acme/widgets", {}}));
    v.push(commits_target(), t.get({commits_target(), {}}));
    for (int m : {24, 12, 6, 1}) {
        const auto target = search_target(months_before(kEval, m), kEval);
        v.push(target, t.get({target, {}}));
    }
    SleepLog log;
    ForgeClient client(v, {}, {}, log.sleeper(), fixed_clock(kEval));
    (void)client.fetch("acme", "widgets", kEval);
    ASSERT_EQ(log.sleeps.size(), 1u);
    EXPECT_EQ(log.sleeps[0], seconds{7});
}

TEST(ForgeClient, DistantResetFailsFast)
{
    ScriptedTransport v;
    const Timestamp reset = kEval + hours{2};
    v.push("/repos/acme/widgets",
           {403,
            {{"x-ratelimit-remaining", "0"},
             {"x-ratelimit-reset", std::to_string(reset.time_since_epoch().count())}},
            "{}"});
    SleepLog log;
    ForgeClient client(v, {}, {}, log.sleeper(), fixed_clock(kEval));
    try {
        (void)client.fetch("acme", "widgets", kEval);
        FAIL() << "expected RateLimitError";
    } catch (const RateLimitError& e) {
        EXPECT_EQ(e.reset_at(), reset);
    }
    EXPECT_TRUE(log.sleeps.empty());
}

TEST(ForgeClient, PlainForbiddenIsNotRateLimit)
{
    ScriptedTransport v;
    v.push("/repos/acme/widgets", {403, {}, R"({"message":"forbidden"})"});
    ForgeClient client(v, {}, {}, [](milliseconds) {});
    try {
        (void)client.fetch("acme", "widgets", kEval);
        FAIL() << "expected HttpError";
    } catch (const HttpError& e) {
        EXPECT_EQ(e.status(), 403);
    }
}

TEST(ForgeClient, ServerErrorsRetryWithBackoff)
{
    ScriptedTransport t = healthy_forge();
    ScriptedTransport v;
    v.push("/repos/acme/widgets", {502, {}, ""});
    v.push("/repos/acme/widgets", {503, {}, ""});
    v.push("/repos/acme/widgets", t.get({"/repos/acme/widgets", {}}));
    v.push(commits_target(), t.get({commits_target(), {}}));
    for (int m : {24, 12, 6, 1}) {
        const auto target = search_target(months_before(kEval, m), kEval);
        v.push(target, t.get({target, {}}));
    }
    SleepLog log;
    RetryPolicy policy;
    policy.initial_backoff = milliseconds{100};
    ForgeClient client(v, {}, policy, log.sleeper(), fixed_clock(kEval));
    (void)client.fetch("acme", "widgets", kEval);
    EXPECT_EQ(log.sleeps, (std::vector<milliseconds>{milliseconds{100}, milliseconds{200}}));
}

TEST(ForgeClient, PersistentServerErrorGivesUp)
{
    ScriptedTransport v;
    v.push("/repos/acme/widgets", {500, {}, ""});
    SleepLog log;
    RetryPolicy policy;
    policy.max_retries = 3;
    ForgeClient client(v, {}, policy, log.sleeper());
    EXPECT_THROW((void)client.fetch("acme", "widgets", kEval), HttpError);
    EXPECT_EQ(log.sleeps.size(), 3u);
    EXPECT_EQ(v.seen.size(), 4u);
}

TEST(ForgeClient, UnrecordedTargetIsTransportError)
{
    ReplayTransport replay;
    RetryPolicy policy;
    policy.max_retries = 1;
    ForgeClient client(replay, {}, policy, [](milliseconds) {});
    EXPECT_THROW((void)client.fetch("acme", "widgets", kEval), TransportError);
}

TEST(ForgeClient, DecodeErrorNamesField)
{
    ScriptedTransport v;
    v.push("/repos/acme/widgets", json_response({{"subscribers_count", 1},
                                                 {"forks_count", 1},
                                                 {"created_at", "2020-01-01T00:00:00Z"},
                                                 {"default_branch", "main"}}));
    ForgeClient client(v, {}, {}, [](milliseconds) {});
    try {
        (void)client.fetch("acme", "widgets", kEval);
        FAIL() << "expected DecodeError";
    } catch (const DecodeError& e) {
        EXPECT_EQ(e.field(), "stargazers_count");
    }

    ScriptedTransport bad_json;
    bad_json.push("/repos/acme/widgets", {200, {}, "{not json"});
    ForgeClient client2(bad_json, {}, {}, [](milliseconds) {});
    EXPECT_THROW((void)client2.fetch("acme", "widgets", kEval), DecodeError);
}

TEST(ForgeClient, CacheAvoidsSecondRequestRound)
{
    test::TempDir dir;
    auto t = healthy_forge();
    ForgeClient client(t, {}, {}, [](milliseconds) {});
    client.set_cache_dir(dir.path());
    const auto first = client.fetch("acme", "widgets", kEval);
    const auto requests = t.seen.size();
    EXPECT_TRUE(std::filesystem::exists(dir / "acme__widgets__2024-06-15.json"));
    const auto second = client.fetch("acme", "widgets", kEval);
    EXPECT_EQ(first, second);
    EXPECT_EQ(t.seen.size(), requests);
}

TEST(ForgeClient, ReplayFromJsonRecording)
{
    const auto doc = nlohmann::json::parse(R"({"responses": [
        {"target": "/x", "status": 200, "headers": {"X-Thing": "1"}, "body": {"a": 1}},
        {"target": "/y", "status": 404, "body": "gone"}
    ]})");
    auto replay = ReplayTransport::from_json(doc);
    const auto x = replay.get({"/x", {}});
    EXPECT_EQ(x.status, 200);
    EXPECT_EQ(x.header("x-thing").value_or(""), "1");
    EXPECT_EQ(nlohmann::json::parse(x.body)["a"], 1);
    EXPECT_EQ(replay.get({"/y", {}}).body, "gone");
    EXPECT_EQ(replay.requests().size(), 2u);
}

TEST(ForgeClient, FetchSnapshotHelper)
{
    auto t = healthy_forge();
    RepoIdentity id{"acme", "widgets", {}, kEval};
    RetryPolicy policy;
    policy.max_retries = 0;
    const auto r = fetch_snapshot(id, {}, t, policy);
    EXPECT_EQ(r.snapshot.total_commits, 4321u);
}

TEST(LinkHeader, LastPage)
{
    EXPECT_EQ(last_page_from_link("<https://h/x?page=2>; rel=\"next\", <https://h/x?per_page=1&page=17>; rel=\"last\""),
              17u);
    EXPECT_FALSE(last_page_from_link("<https://h/x?page=2>; rel=\"next\""));
    EXPECT_FALSE(last_page_from_link(""));
}

TEST(UrlEncode, ReservedCharacters)
{
    EXPECT_EQ(url_encode("repo:a/b is:closed"), "repo%3Aa%2Fb%20is%3Aclosed");
    EXPECT_EQ(url_encode("A-z_0.9~"), "A-z_0.9~");
}

TEST(Credentials, FromEnvironment)
{
    ::setenv("GITRANK_TOKEN", "abc", 1);
    EXPECT_EQ(Credentials::from_environment().token.value_or(""), "abc");
    ::setenv("GITRANK_TOKEN", "", 1);
    EXPECT_FALSE(Credentials::from_environment().token);
    ::unsetenv("GITRANK_TOKEN");
    EXPECT_FALSE(Credentials::from_environment().token);
}
