#ifndef QMET_ERRORS_HPP
#define QMET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qmet {

// Bad user input: malformed files, out-of-range vertices, invalid partitions.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a configured limit (oracle qubit caps, exhaustive-search cap).
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qmet

#endif
