#pragma once

#include <stdexcept>
#include <string>

namespace betatau {

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct resource_error : std::length_error {
    using std::length_error::length_error;
};

// Raised when finite-precision digits cannot support the requested depth.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace betatau
