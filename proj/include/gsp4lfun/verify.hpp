#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsp4lfun {

struct VerifyOptions {
    long trials = 200;
    std::uint64_t seed = 1;
    double selberg_x = 100000.0;
    long lemma_trials = 100000;
};

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<std::string> verify_suite_names();

// Runs one of {identities, lemma34, orthogonality, afe, selberg, all}.
std::vector<CheckResult> run_verify_suite(const std::string& suite, const VerifyOptions& opt);

}
