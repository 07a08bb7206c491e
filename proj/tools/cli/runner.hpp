#pragma once

#include "manifest.hpp"

#include <optional>
#include <string>

namespace msch::cli {

struct Options {
    std::size_t bound = 8;
    std::optional<std::size_t> degree;
    bool json = false;
    bool check_oracles = false;
    bool parallel = false;
};

struct Report {
    std::string text;
    std::string json;
    int exit_code = 0;  // 0 when every task succeeded, 1 otherwise
};

Report run(const Manifest& m, const Options& options);

} // namespace msch::cli
