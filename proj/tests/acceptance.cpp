// Runs every property suite at full size and prints one line per criterion.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "lfdgf/error.hpp"
#include "lfdgf/suites.hpp"

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
    lfdgf::SuiteOptions opt;
    opt.instances = 500;

    int failed = 0, criterion = 0;
    for (const std::string& name : lfdgf::suite_names()) {
        ++criterion;
        lfdgf::SuiteReport rep;
        try {
            rep = lfdgf::run_suite(name, seed, opt);
        } catch (const std::exception& e) {
            rep.name = name;
            rep.fail(std::string("aborted: ") + e.what());
        }
        const bool ok = rep.passed();
        failed += !ok;
        std::printf("criterion %2d %-20s %s  checked=%zu/%zu failures=%zu skipped=%zu %.1fs\n", criterion,
                    name.c_str(), ok ? "PASS" : "FAIL", rep.instances, rep.required, rep.failures,
                    rep.skipped, rep.seconds);
        if (!rep.stats.empty())
            std::printf("             stats %s\n", rep.stats.dump().c_str());
        for (const std::string& ex : rep.examples)
            std::printf("             e.g. %s\n", ex.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", criterion - failed, criterion);
    return failed == 0 ? 0 : 1;
}
