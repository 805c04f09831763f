#pragma once

#include <stdexcept>

namespace treecount {

// Malformed input text or arguments. CLI exit code 2.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input with no valid result (capacity exceeded, local cycle,
// generation failure, value outside an operation's domain). CLI exit code 1.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace treecount
