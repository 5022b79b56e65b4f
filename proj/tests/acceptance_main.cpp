#include <cstdlib>
#include <iostream>
#include <string>

#include "quasivar/acceptance.hpp"

int main(int argc, char** argv) {
    qv::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "-v")
            opt.log = &std::cerr;
        else
            opt.only.push_back(std::stoi(arg));
    }
    int failed = 0;
    for (auto const& r : qv::run_acceptance(opt)) {
        std::cout << qv::format_result(r) << std::endl;
        failed += !r.pass;
    }
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
