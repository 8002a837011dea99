#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "gitrank/forge.hpp"
#include "gitrank/measure_table.hpp"
#include "gitrank/pattern_graph.hpp"
#include "gitrank/repo_analyzer.hpp"
#include "gitrank/scoring.hpp"

namespace gitrank::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string out;
    std::string config;
    std::string fixtures;
    std::string evaluated_at;
    std::string cache;
    std::string save_table;
    std::string repos;
    std::string repo_id;
    std::string input;
    bool split_halves{false};
    bool network{false};
    unsigned jobs{0};
};

class Reporter {
public:
    Reporter(std::ostream& err, bool color) : err_(err), color_(color) {}

    void error(const std::string& msg) const { emit("error", "\033[31m", msg); }
    void warning(const std::string& msg) const { emit("warning", "\033[33m", msg); }

private:
    void emit(const char* label, const char* code, const std::string& msg) const
    {
        if (color_) {
            err_ << code << label << ":\033[0m " << msg << '\n';
        } else {
            err_ << label << ": " << msg << '\n';
        }
    }

    std::ostream& err_;
    bool color_;
};

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("error writing " + path);
}

std::string dump(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

std::optional<Timestamp> evaluated_override(const Options& o)
{
    if (o.evaluated_at.empty()) return std::nullopt;
    const auto t = parse_rfc3339(o.evaluated_at);
    if (!t) throw std::runtime_error("--evaluated-at: '" + o.evaluated_at + "' is not RFC 3339");
    return t;
}

std::pair<std::string, std::string> split_repo(const std::string& full)
{
    const auto slash = full.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == full.size() ||
        full.find('/', slash + 1) != std::string::npos) {
        throw std::runtime_error("repository must be owner/name, got '" + full + "'");
    }
    return {full.substr(0, slash), full.substr(slash + 1)};
}

void require_forge_source(const Options& o)
{
    if (o.fixtures.empty() && !o.network) {
        throw std::runtime_error("forge metadata needs --fixtures DIR or --network");
    }
}

struct ForgeSource {
    const Options& options;
    const Context& context;
    std::optional<Timestamp> override_at;
    std::unique_ptr<Transport> transport;
    std::unique_ptr<ForgeClient> client;

    std::pair<ForgeRecord, Source> resolve(const std::string& owner, const std::string& name)
    {
        if (!options.fixtures.empty()) {
            const auto path = fixture_path(options.fixtures, owner, name);
            if (fs::exists(path)) {
                auto record = load_fixture(path);
                if (override_at) {
                    record.identity.evaluated_at = *override_at;
                    validate(record);
                }
                return {record, Source::fixture};
            }
            if (!options.network) {
                throw std::runtime_error("no fixture for " + owner + "/" + name + " at " +
                                         path.string());
            }
        }
        if (!client) {
            transport = context.make_transport ? context.make_transport() : nullptr;
            if (!transport) throw std::runtime_error("this build has no network transport");
            client = std::make_unique<ForgeClient>(*transport, context.credentials);
            if (!options.cache.empty()) client->set_cache_dir(options.cache);
        }
        const Timestamp at = override_at ? *override_at : context.now();
        return {client->fetch(owner, name, at), Source::live};
    }
};

AnalyzerConfig analyzer_config(const Options& o)
{
    AnalyzerConfig config = o.config.empty() ? AnalyzerConfig{} : load_analyzer_config(o.config);
    if (o.jobs > 0) config.jobs = o.jobs;
    return config;
}

bool any_code_measure_missing(const RepoCodeSummary& s)
{
    return !s.cc || !s.sty || !s.sl || !s.sm || !s.sh || !s.mi;
}

int cmd_analyze(const Options& o, std::ostream& out, const Reporter& report)
{
    const fs::path root = o.input;
    if (!fs::exists(root)) throw std::runtime_error("no such path: " + o.input);
    const auto config = analyzer_config(o);
    std::string repo_id = o.repo_id;
    if (repo_id.empty()) repo_id = fs::weakly_canonical(root).filename().string();

    const auto analysis = analyze_repository(root, config, repo_id);
    nlohmann::ordered_json modules = nlohmann::ordered_json::array();
    for (const auto& m : analysis.modules) modules.push_back(to_json(m));
    nlohmann::ordered_json doc = {
        {"summary", to_json(analysis.summary)},
        {"modules", std::move(modules)},
        {"skipped", analysis.skipped},
    };
    write_text(o.out, dump(doc), out);

    for (const auto& s : analysis.skipped) report.warning("skipped " + s);
    if (analysis.partial()) return partial;
    if (any_code_measure_missing(analysis.summary)) {
        report.warning("some code measures are undefined for " + repo_id);
        return partial;
    }
    return ok;
}

int cmd_fetch(const Options& o, std::ostream& out, const Context& ctx)
{
    require_forge_source(o);
    const auto [owner, name] = split_repo(o.input);
    ForgeSource source{o, ctx, evaluated_override(o), nullptr, nullptr};
    const auto [record, origin] = source.resolve(owner, name);
    nlohmann::ordered_json doc = {
        {"source", to_string(origin)},
        {"record", to_json(record)},
        {"measures", to_json(derive_rate_measures(record.identity, record.snapshot))},
    };
    write_text(o.out, dump(doc), out);
    return ok;
}

struct RepoEntry {
    std::string repo;
    std::optional<fs::path> code;
    std::size_t line;
};

std::vector<RepoEntry> read_repo_list(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<RepoEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string repo, code, extra;
        if (!(fields >> repo)) continue;
        fields >> code;
        if (fields >> extra) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 'owner/name [code-path]'");
        }
        RepoEntry e{repo, std::nullopt, line_no};
        if (!code.empty()) e.code = path.parent_path() / code;
        entries.push_back(std::move(e));
    }
    return entries;
}

int cmd_rank(const Options& o, std::ostream& out, const Context& ctx, const Reporter& report)
{
    if (o.input.empty() == o.repos.empty()) {
        throw std::runtime_error("rank takes either a table file or --repos FILE");
    }
    if (o.split_halves && (o.out.empty() || o.out == "-")) {
        throw std::runtime_error("--split-halves requires --out");
    }
    if (!o.out.empty() && fs::path(o.out).extension() == ".json") {
        throw std::runtime_error("--out names the CSV file; the JSON mirror is written beside it");
    }

    int status = ok;
    MeasureTable table;
    if (!o.input.empty()) {
        table = load_table(o.input);
    } else {
        require_forge_source(o);
        const auto entries = read_repo_list(o.repos);
        const auto config = analyzer_config(o);
        ForgeSource source{o, ctx, evaluated_override(o), nullptr, nullptr};
        std::optional<Source> forge_origin;
        bool any_code = false;
        for (const auto& e : entries) {
            const auto [owner, name] = split_repo(e.repo);
            const auto [record, origin] = source.resolve(owner, name);
            forge_origin = origin;
            const auto rates = derive_rate_measures(record.identity, record.snapshot);
            std::optional<RepositoryAnalysis> analysis;
            if (e.code) {
                analysis = analyze_repository(*e.code, config, e.repo);
                any_code = true;
                for (const auto& s : analysis->skipped) report.warning(e.repo + ": skipped " + s);
                if (analysis->partial()) status = partial;
            }
            table.add(build_row(e.repo, analysis ? &analysis->summary : nullptr, &rates));
        }
        for (Measure m : kAllMeasures) {
            const bool code_measure = static_cast<std::size_t>(m) <= static_cast<std::size_t>(Measure::mi);
            if (code_measure && any_code) table.set_provenance(m, Source::analysis);
            if (!code_measure && forge_origin) table.set_provenance(m, *forge_origin);
        }
    }

    if (!o.save_table.empty()) save_table(table, o.save_table);
    const auto cards = rank(table);
    for (const auto& c : cards) {
        if (c.imputed.empty()) continue;
        std::string names;
        for (Measure m : c.imputed) {
            if (!names.empty()) names += ", ";
            names += to_string(m);
        }
        report.warning(c.repo_id + ": missing " + names + " imputed as 50");
    }

    write_text(o.out, ranking_csv(cards), out);
    if (!o.out.empty() && o.out != "-") {
        fs::path json_path = o.out;
        json_path.replace_extension(".json");
        auto doc = ranking_json(cards);
        doc["table"] = to_json(table);
        write_text(json_path.string(), dump(doc), out);
    }
    if (o.split_halves) {
        const auto halves = split_halves(cards);
        const fs::path base = fs::path(o.out).replace_extension("");
        const auto lines = [](const std::vector<std::string>& ids) {
            std::string s;
            for (const auto& id : ids) s += id + "\n";
            return s;
        };
        write_text(base.string() + ".top.txt", lines(halves.top), out);
        write_text(base.string() + ".bottom.txt", lines(halves.bottom), out);
    }
    return status;
}

int cmd_confidence(const Options& o, std::ostream& out)
{
    const auto graph = load_pattern_graph(o.input);
    write_text(o.out, dump(to_json(confidence(graph))), out);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Context& context)
{
    const Reporter report(err, context.color);
    Options o;

    CLI::App app{"Repository quality ranking and pattern dataset confidence", "gitrank"};
    app.require_subcommand(1, 1);
    app.add_option("--out", o.out, "Output file (default: stdout)");
    app.add_option("--config", o.config, "Analyzer configuration JSON");
    app.add_option("--fixtures", o.fixtures, "Directory of <owner>__<name>.json metadata fixtures");
    app.add_option("--evaluated-at", o.evaluated_at, "Evaluation time, RFC 3339 (default: now)");
    app.add_flag("--split-halves", o.split_halves, "Also write top and bottom half repo lists");
    app.add_flag("--network", o.network, "Allow live forge requests (token from GITRANK_TOKEN)");
    app.add_option("--cache", o.cache, "Directory caching live forge responses");
    app.add_option("--jobs,-j", o.jobs, "Analyzer worker threads");
    app.add_option("--save-table", o.save_table, "Also write the assembled measure table CSV");

    auto* analyze = app.add_subcommand("analyze", "Measure the code of a local repository");
    analyze->add_option("path", o.input, "Repository root")->required();
    analyze->add_option("--repo-id", o.repo_id, "Repository id in the summary");

    auto* fetch = app.add_subcommand("fetch", "Load or fetch forge metadata for one repository");
    fetch->add_option("repo", o.input, "owner/name")->required();

    auto* rank_cmd = app.add_subcommand("rank", "Score and rank a cohort of repositories");
    rank_cmd->add_option("table", o.input, "Measure table CSV");
    rank_cmd->add_option("--repos", o.repos, "Repository list: 'owner/name [code-path]' per line");

    auto* conf = app.add_subcommand("confidence", "Consensus confidence of a pattern dataset");
    conf->add_option("edges", o.input, "Edge-list file")->required();

    for (auto* sub : {analyze, fetch, rank_cmd, conf}) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : fatal;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(o, out, report);
        if (fetch->parsed()) return cmd_fetch(o, out, context);
        if (rank_cmd->parsed()) return cmd_rank(o, out, context, report);
        return cmd_confidence(o, out);
    } catch (const std::exception& e) {
        report.error(e.what());
        return fatal;
    }
}

}  // namespace gitrank::cli
