#pragma once

#include <string>
#include <vector>

#include "pushout/io.hpp"

namespace pushout {

struct VerifyOptions {
    int samples = defaults::kSamplesVerify;
    double closure_tol = defaults::kClosureTol;
    int n_max = defaults::kOrbitMax;
    std::string artifact_dir;  // when set, the artifact bundle is written here
};

struct CheckRow {
    int criterion = 0;
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string comparison;  // "abs", "le", "ge", "eq"
    bool pass = false;
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<CheckRow> rows;
    bool all_pass = false;
    double total_seconds = 0.0;

    std::string text() const;
    io::Json json() const;
};

VerifyReport run_verify(const VerifyOptions& options = {});

}  // namespace pushout
