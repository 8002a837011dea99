#include <cstdlib>
#include <iostream>
#include <unistd.h>

#include "commands.hpp"

#ifdef GITRANK_HAVE_HTTPS
#include "gitrank/http_transport.hpp"
#endif

int main(int argc, char** argv)
{
    gitrank::cli::Context context;
    context.credentials = gitrank::Credentials::from_environment();
    const char* no_color = std::getenv("NO_COLOR");
    context.color = (no_color == nullptr || *no_color == '\0') && ::isatty(STDERR_FILENO);
#ifdef GITRANK_HAVE_HTTPS
    context.make_transport = [] { return std::make_unique<gitrank::HttpTransport>(); };
#endif

    std::vector<std::string> args(argv + 1, argv + argc);
    return gitrank::cli::run(args, std::cout, std::cerr, context);
}
