#include "gitrank/repo_analyzer.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "gitrank/function_scan.hpp"

namespace gitrank {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const fs::path& path, std::string& reason)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        reason = "cannot open file";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        reason = "read error";
        return std::nullopt;
    }
    return std::move(buf).str();
}

std::optional<double> per_line(std::uint64_t count, std::uint64_t sloc)
{
    if (sloc == 0) return std::nullopt;
    return static_cast<double>(count) / static_cast<double>(sloc);
}

nlohmann::ordered_json optional_number(const std::optional<double>& v)
{
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

bool AnalyzerConfig::selects(const fs::path& file) const
{
    const auto ext = file.extension().string();
    return !ext.empty() && std::find(extensions.begin(), extensions.end(), ext) != extensions.end();
}

AnalyzerConfig parse_analyzer_config(const nlohmann::json& doc, const fs::path& base_dir)
{
    if (!doc.is_object()) throw ConfigError("analyzer config must be a JSON object");
    AnalyzerConfig config;
    try {
        if (doc.contains("extensions")) {
            config.extensions = doc.at("extensions").get<std::vector<std::string>>();
            for (const auto& ext : config.extensions) {
                if (ext.size() < 2 || ext.front() != '.') {
                    throw ConfigError("extensions: '" + ext + "' must look like '.ext'");
                }
            }
        }
        if (doc.contains("max_line_length")) {
            const auto n = doc.at("max_line_length").get<long long>();
            if (n < 1) throw ConfigError("max_line_length must be >= 1");
            config.style.max_line_length = static_cast<std::size_t>(n);
        }
        if (doc.contains("security_rules")) {
            fs::path rules = doc.at("security_rules").get<std::string>();
            config.rule_table = rules.is_absolute() ? rules : base_dir / rules;
        }
        if (doc.contains("jobs")) {
            const auto n = doc.at("jobs").get<long long>();
            if (n < 1) throw ConfigError("jobs must be >= 1");
            config.jobs = static_cast<unsigned>(n);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("analyzer config: ") + e.what());
    }
    return config;
}

AnalyzerConfig load_analyzer_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_analyzer_config(doc, path.parent_path());
}

ModuleMetrics analyze_source(std::string path, std::string_view source,
                             std::span<const SecurityRule> rules, const StyleConfig& style)
{
    ModuleMetrics m;
    m.path = std::move(path);

    auto lexed = tokenize(source);
    const TokenSpan tokens(lexed.tokens);
    auto scan = extract_functions(tokens);

    double volume = 0.0;
    double complexity = 0.0;
    m.functions.reserve(scan.functions.size());
    for (const auto& span : scan.functions) {
        const auto body = span.body(tokens);
        FunctionMetrics f;
        f.name = span.name;
        f.start_line = span.start_line;
        f.end_line = span.end_line;
        f.lines_of_code = span.end_line - span.start_line + 1;
        f.cyclomatic_complexity = cyclomatic_complexity(body);
        f.halstead = halstead_counts(body);
        volume += f.halstead_volume();
        complexity += f.cyclomatic_complexity;
        m.functions.push_back(std::move(f));
    }

    m.physical_lines = physical_line_count(source);
    m.sloc = count_sloc(tokens);
    m.style_errors = style_errors(source, tokens, style);
    m.security = security_errors(tokens, rules);
    m.maintainability_index = maintainability_index(
        std::max(volume, 1.0), complexity, std::max(static_cast<double>(m.sloc), 1.0));

    m.diagnostics = std::move(lexed.diagnostics);
    m.diagnostics.insert(m.diagnostics.end(), scan.diagnostics.begin(), scan.diagnostics.end());
    return m;
}

RepoCodeSummary summarize(std::span<const ModuleMetrics> modules, std::string repo_id)
{
    RepoCodeSummary s;
    s.repo_id = std::move(repo_id);
    s.files = modules.size();

    double cc_sum = 0.0;
    double mi_sum = 0.0;
    for (const auto& m : modules) {
        for (const auto& f : m.functions) {
            cc_sum += f.cyclomatic_complexity;
            ++s.functions;
        }
        mi_sum += m.maintainability_index;
        s.sloc += m.sloc;
        s.style_errors += m.style_errors;
        s.security += m.security;
    }
    if (s.functions != 0) s.cc = cc_sum / static_cast<double>(s.functions);
    if (!modules.empty()) s.mi = mi_sum / static_cast<double>(modules.size());
    s.sty = per_line(s.style_errors, s.sloc);
    s.sl = per_line(s.security.low, s.sloc);
    s.sm = per_line(s.security.medium, s.sloc);
    s.sh = per_line(s.security.high, s.sloc);
    return s;
}

RepositoryAnalysis analyze_repository(const fs::path& root, const AnalyzerConfig& config,
                                      std::string repo_id)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw std::runtime_error("not a directory: " + root.string());
    }

    const std::vector<SecurityRule> rules =
        config.rule_table ? load_security_rules(*config.rule_table) : default_security_rules();
    if (rules.empty()) throw ConfigError("security rule table defines no rules");

    RepositoryAnalysis result;
    std::vector<fs::path> files;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw std::runtime_error("cannot list " + root.string() + ": " + ec.message());
    for (const fs::recursive_directory_iterator end; it != end;) {
        const auto& entry = *it;
        const auto name = entry.path().filename().string();
        std::error_code kind_ec;
        if (entry.is_directory(kind_ec)) {
            if (!name.empty() && name.front() == '.') it.disable_recursion_pending();
        } else if (config.selects(entry.path())) {
            files.push_back(entry.path());
        }
        it.increment(ec);
        if (ec) {
            result.skipped.push_back("<directory walk>: " + ec.message());
            break;
        }
    }

    std::vector<std::string> rel(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        rel[i] = files[i].lexically_relative(root).generic_string();
    }
    std::vector<std::size_t> order(files.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rel[a] < rel[b]; });

    std::vector<std::optional<ModuleMetrics>> slots(files.size());
    std::vector<std::string> failures(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < order.size(); k = next++) {
            const auto i = order[k];
            std::string reason;
            if (auto text = read_file(files[i], reason)) {
                slots[k] = analyze_source(rel[i], *text, rules, config.style);
            } else {
                failures[k] = rel[i] + ": " + reason;
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(
                                                                          order.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k]) {
            result.modules.push_back(std::move(*slots[k]));
        } else {
            result.skipped.push_back(std::move(failures[k]));
        }
    }
    result.summary = summarize(result.modules, std::move(repo_id));
    return result;
}

nlohmann::ordered_json to_json(const ModuleMetrics& m)
{
    nlohmann::ordered_json functions = nlohmann::ordered_json::array();
    for (const auto& f : m.functions) {
        functions.push_back({
            {"name", f.name},
            {"start_line", f.start_line},
            {"end_line", f.end_line},
            {"lines_of_code", f.lines_of_code},
            {"cyclomatic_complexity", f.cyclomatic_complexity},
            {"halstead",
             {{"total_operators", f.halstead.total_operators},
              {"total_operands", f.halstead.total_operands},
              {"distinct_operators", f.halstead.distinct_operators},
              {"distinct_operands", f.halstead.distinct_operands},
              {"volume", f.halstead_volume()}}},
        });
    }
    nlohmann::ordered_json diagnostics = nlohmann::ordered_json::array();
    for (const auto& d : m.diagnostics) {
        diagnostics.push_back({{"line", d.line}, {"column", d.column}, {"message", d.message}});
    }
    return {
        {"path", m.path},
        {"physical_lines", m.physical_lines},
        {"sloc", m.sloc},
        {"style_errors", m.style_errors},
        {"security_errors",
         {{"low", m.security.low}, {"medium", m.security.medium}, {"high", m.security.high}}},
        {"maintainability_index", m.maintainability_index},
        {"functions", std::move(functions)},
        {"diagnostics", std::move(diagnostics)},
    };
}

nlohmann::ordered_json to_json(const RepoCodeSummary& s)
{
    return {
        {"repo", s.repo_id},
        {"cc", optional_number(s.cc)},
        {"sty", optional_number(s.sty)},
        {"sl", optional_number(s.sl)},
        {"sm", optional_number(s.sm)},
        {"sh", optional_number(s.sh)},
        {"mi", optional_number(s.mi)},
        {"files", s.files},
        {"functions", s.functions},
        {"sloc", s.sloc},
        {"style_errors", s.style_errors},
        {"security_errors",
         {{"low", s.security.low}, {"medium", s.security.medium}, {"high", s.security.high}}},
    };
}

}  // namespace gitrank
