// One line per criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include "suites.hpp"

int main(int argc, char** argv) {
    heis::suites::SuiteConfig cfg;
    if (argc > 1) cfg.seed = std::stoull(argv[1]);
    int failed = 0;
    for (const auto& c : heis::suites::criteria()) {
        const auto start = std::chrono::steady_clock::now();
        heis::Report rep;
        std::string error;
        try {
            rep = c.run(cfg);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = error.empty() && !rep.records.empty() && rep.all_pass();
        if (!pass) ++failed;
        std::printf("%s criterion %d: %s (%zu checks, %.1fs)\n", pass ? "PASS" : "FAIL", c.number, c.name.c_str(),
                    rep.records.size(), secs);
        if (!error.empty()) std::printf("    error: %s\n", error.c_str());
        for (const auto& r : rep.records)
            if (!r.pass) std::printf("    failed %s: %s\n", r.id.c_str(), r.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, heis::suites::criteria().size());
    return failed == 0 ? 0 : 1;
}
