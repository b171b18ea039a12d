// Runs every acceptance criterion and exits non-zero if any fails.

#include <cstdlib>
#include <iostream>
#include <string>

#include "wulff/acceptance/suite.hpp"

int main(int argc, char** argv) {
    const std::string suite = argc > 1 ? argv[1] : "all";
    const int workers = argc > 2 ? std::atoi(argv[2]) : 1;
    try {
        const auto results = wulff::acceptance::run_suite(suite, std::cout, workers);
        int passed = 0;
        for (const auto& r : results) passed += r.passed;
        std::cout << passed << "/" << results.size() << " criteria passed\n";
        return wulff::acceptance::all_passed(results) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
}
