// Acceptance runner: one PASS/FAIL line per criterion, details indented below.
#include <heisapp/config.hpp>
#include <heisapp/report.hpp>
#include <heisapp/suites.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace heisapp;

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string only;
    std::string config;
    bool verbose = false;
    app.add_option("--only", only, "run a single criterion");
    app.add_option("--config", config, "config json")->check(CLI::ExistingFile);
    app.add_flag("-v,--verbose", verbose, "print every record");
    CLI11_PARSE(app, argc, argv);

    if (!only.empty() && !is_suite(only)) {
        std::cerr << "unknown criterion '" << only << "'\n";
        return 2;
    }
    Config c;
    try {
        c = config.empty() ? default_config() : load_config(config);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    int failed = 0;
    for (const auto& s : suites()) {
        if (!only.empty() && s.id != only) continue;
        Report r;
        const auto t0 = std::chrono::steady_clock::now();
        bool threw = false;
        try {
            run_suite(s.id, c, r);
        } catch (const std::exception& e) {
            threw = true;
            std::cout << "  error: " << e.what() << '\n';
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = !threw && !r.records().empty() && r.all_pass();
        failed += !ok;
        std::printf("%s %s (%.1fs)\n", ok ? "PASS" : "FAIL", s.id.c_str(), secs);
        for (const auto& rec : r.records()) {
            if (rec.pass && !verbose) continue;
            std::printf("  %s %s: measured %.10g expected %.10g tol %.3g\n", rec.pass ? "ok" : "FAILED",
                        rec.what.c_str(), rec.measured, rec.expected, rec.tolerance);
        }
        for (const auto& i : r.infos()) std::printf("  i %s\n", i.text.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
