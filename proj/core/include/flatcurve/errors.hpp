#pragma once

#include <stdexcept>
#include <string>

namespace flatcurve {

// Invalid polygons, gluings or references.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured budget (copy count, search bound) was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad parameters for a constructor or operation.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unreadable or unwritable files, malformed documents.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two curves share a sub-segment, or two rays coincide at a singularity.
struct OverlapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace flatcurve
