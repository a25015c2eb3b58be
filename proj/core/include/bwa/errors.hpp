#pragma once

#include <stdexcept>
#include <string>

namespace bwa {

// Bad experiment configuration or out-of-range physical parameter (CLI exit 2).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Divergence, non-convergence, horizon violation (CLI exit 3).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures (CLI exit 4).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bwa
