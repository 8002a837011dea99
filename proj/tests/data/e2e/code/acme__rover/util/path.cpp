#include <cstdlib>

const char *home() { return getenv("HOME"); }

int depth(const char *p)
{
    int d = 0;
    for (; *p; ++p) {
        switch (*p) {
        case '/': ++d; break;
        default: break;
        }
    }
    return d;
}
