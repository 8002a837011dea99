#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "gitrank/forge_client.hpp"
#include "gitrank/timestamp.hpp"

namespace gitrank::cli {

enum ExitCode : int { ok = 0, fatal = 1, partial = 2 };

struct Context {
    /// Live transport for `--network`; null when the build has none.
    std::function<std::unique_ptr<Transport>()> make_transport;
    std::function<Timestamp()> now = now_utc;
    Credentials credentials;
    bool color{false};
};

/// Parses `args` (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Context& context);

}  // namespace gitrank::cli
