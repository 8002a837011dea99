#include "gitrank/security_rules.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gitrank {

namespace {

constexpr std::string_view kDefaultRules =
    R"(# Dangerous C library calls, one rule per line: pattern,severity,rationale
# Severity is low, medium or high. Lines starting with '#' are comments.
gets,high,reads unbounded input into a fixed buffer (CWE-242)
strcpy,high,copies without checking the destination size (CWE-120)
strcat,high,appends without checking the destination size (CWE-120)
sprintf,high,formats into a buffer of unchecked size (CWE-120)
vsprintf,high,formats into a buffer of unchecked size (CWE-120)
wcscpy,high,copies without checking the destination size (CWE-120)
wcscat,high,appends without checking the destination size (CWE-120)
scanf,medium,%s without a width overflows the target (CWE-120)
fscanf,medium,%s without a width overflows the target (CWE-120)
sscanf,medium,%s without a width overflows the target (CWE-120)
vscanf,medium,%s without a width overflows the target (CWE-120)
strncpy,medium,may leave the destination unterminated (CWE-120)
strncat,medium,remaining-space argument is easy to get wrong (CWE-120)
realpath,medium,output buffer must be PATH_MAX or larger (CWE-785)
getwd,medium,output buffer size is not checked (CWE-120)
system,medium,shell command built from data enables injection (CWE-78)
popen,medium,shell command built from data enables injection (CWE-78)
memcpy,low,length must be validated against the destination (CWE-120)
tmpnam,low,race between choosing a name and creating the file (CWE-377)
tempnam,low,race between choosing a name and creating the file (CWE-377)
mktemp,low,race between choosing a name and creating the file (CWE-377)
rand,low,not suitable where unpredictability matters (CWE-327)
random,low,not suitable where unpredictability matters (CWE-327)
getenv,low,environment contents are attacker-controlled (CWE-807)
)";

std::string_view trim(std::string_view s) noexcept
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_identifier(std::string_view s) noexcept
{
    if (s.empty()) return false;
    const auto head = static_cast<unsigned char>(s.front());
    if (!(std::isalpha(head) || head == '_')) return false;
    for (char c : s) {
        const auto uc = static_cast<unsigned char>(c);
        if (!(std::isalnum(uc) || uc == '_')) return false;
    }
    return true;
}

}  // namespace

RuleTableError::RuleTableError(const std::string& source, std::size_t line,
                               const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line)
{
}

std::string_view to_string(Severity severity) noexcept
{
    switch (severity) {
    case Severity::low: return "low";
    case Severity::medium: return "medium";
    case Severity::high: return "high";
    }
    return "unknown";
}

std::optional<Severity> parse_severity(std::string_view text) noexcept
{
    if (text == "low") return Severity::low;
    if (text == "medium") return Severity::medium;
    if (text == "high") return Severity::high;
    return std::nullopt;
}

std::vector<SecurityRule> parse_security_rules(std::string_view text, const std::string& source)
{
    std::vector<SecurityRule> rules;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto eol = text.find('\n', pos);
        const auto raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;

        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c1 == std::string_view::npos) {
            throw RuleTableError(source, line_no, "expected 'pattern,severity,rationale'");
        }
        SecurityRule rule;
        rule.pattern = std::string(trim(line.substr(0, c1)));
        const auto sev_text =
            trim(line.substr(c1 + 1, c2 == std::string_view::npos ? line.npos : c2 - c1 - 1));
        if (c2 != std::string_view::npos) rule.rationale = std::string(trim(line.substr(c2 + 1)));

        if (!is_identifier(rule.pattern)) {
            throw RuleTableError(source, line_no,
                                 "pattern '" + rule.pattern + "' is not a valid identifier");
        }
        const auto severity = parse_severity(sev_text);
        if (!severity) {
            throw RuleTableError(source, line_no,
                                 "severity '" + std::string(sev_text) +
                                     "' is not one of low, medium, high");
        }
        rule.severity = *severity;
        if (!seen.insert(rule.pattern).second) {
            throw RuleTableError(source, line_no, "duplicate pattern '" + rule.pattern + "'");
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<SecurityRule> load_security_rules(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw RuleTableError(path.string(), 0, "cannot open rule table");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_security_rules(buf.str(), path.string());
}

std::string_view default_security_rules_text() noexcept { return kDefaultRules; }

const std::vector<SecurityRule>& default_security_rules()
{
    static const std::vector<SecurityRule> rules =
        parse_security_rules(kDefaultRules, "<builtin>");
    return rules;
}

SecurityCounts security_errors(TokenSpan tokens, std::span<const SecurityRule> rules)
{
    if (rules.empty()) {
        throw std::invalid_argument("security_errors: rule table is empty");
    }
    std::unordered_map<std::string_view, Severity> by_name;
    for (const auto& r : rules) by_name.emplace(r.pattern, r.severity);

    SecurityCounts counts;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].kind != TokenKind::identifier) continue;
        const auto hit = by_name.find(tokens[i].text);
        if (hit == by_name.end()) continue;
        std::size_t j = i + 1;
        while (j < tokens.size() && tokens[j].is_trivia()) ++j;
        if (j == tokens.size() || !tokens[j].is(TokenKind::punctuation, "(")) continue;
        switch (hit->second) {
        case Severity::low: ++counts.low; break;
        case Severity::medium: ++counts.medium; break;
        case Severity::high: ++counts.high; break;
        }
    }
    return counts;
}

}  // namespace gitrank
