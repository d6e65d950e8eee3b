// Error types shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace dcm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input stream could not be parsed. row/col are 1-based positions into the
// data section when known, -1 otherwise.
struct MalformedInput : Error {
    explicit MalformedInput(const std::string& msg, long row = -1, long col = -1)
        : Error(msg), row(row), col(col) {}
    long row;
    long col;
};

struct DegenerateDataset : Error {
    using Error::Error;
};

struct UnsupportedFeatureType : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct DegenerateClass : Error {
    using Error::Error;
};

struct InstanceTooLarge : Error {
    using Error::Error;
};

struct DegenerateFold : Error {
    using Error::Error;
};

}  // namespace dcm
