// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <cstdio>
#include <cstdlib>

#include "symcoord/selftest.hpp"

int main() {
    unsigned seed = 20240817;
    if (const char* env = std::getenv("SYMCOORD_SEED")) seed = std::strtoul(env, nullptr, 10);
    bool ok = true;
    for (const auto& res : symcoord::run_acceptance(seed, 4)) {
        std::printf("%s  criterion %2d: %s%s%s\n", res.pass ? "PASS" : "FAIL", res.id,
                    res.name.c_str(), res.detail.empty() ? "" : " — ",
                    res.detail.c_str());
        ok = ok && res.pass;
    }
    return ok ? 0 : 1;
}
