#include <cstdio>
#include <string>
#include <cstring>
#include <cstdlib>

#include "pcg/acceptance.hpp"

int main(int argc, char** argv) {
    pcg::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) opt.quick = true;
        else if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc)
            opt.jobs = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc)
            opt.seed = static_cast<unsigned>(std::atol(argv[++i]));
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
            opt.only.push_back(std::atoi(argv[++i]));
    }
    auto results = pcg::run_acceptance(opt);
    bool all = true;
    for (const auto& r : results) {
        std::string detail = r.pass ? r.detail : " - " + r.detail;
        std::printf("criterion %02d [%s] %s%s (%.2fs)\n", r.id,
                    r.pass ? "pass" : "FAIL", r.name.c_str(), detail.c_str(),
                    r.seconds);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
