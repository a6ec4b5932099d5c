// Acceptance gate: runs the numbered verification criteria and prints one
// pass/fail line each. With an argument, runs only that criterion (this is
// how the ctest entries invoke it); with none, runs all ten.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qmcap/verify.hpp"

int main(int argc, char** argv) {
    const std::uint64_t seed = 20260823;
    int first = 1, last = 10;
    if (argc > 1) first = last = std::atoi(argv[1]);

    bool all_pass = true;
    for (int n = first; n <= last; ++n) {
        qmcap::verify::Report rep = qmcap::verify::criterion(n, seed);
        std::printf("criterion %2d [%s] %s\n", n, rep.suite.c_str(),
                    rep.pass ? "PASS" : "FAIL");
        for (const auto& c : rep.checks)
            if (!c.pass)
                std::printf("    %-40s measured %.6e vs %.6e\n", c.name.c_str(),
                            c.measured, c.tolerance);
        all_pass = all_pass && rep.pass;
    }
    return all_pass ? 0 : 1;
}
