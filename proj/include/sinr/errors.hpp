#pragma once

#include <stdexcept>
#include <string>

namespace sinr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance / config construction problems.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or invalid serialized documents.
struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

// A link whose power cannot overcome ambient noise even without interference.
struct NoiseDominatedError : Error {
    NoiseDominatedError(int link_id, const std::string& what)
        : Error(what), link(link_id) {}
    int link;
};

// Coincident sender/receiver pairs across distinct links.
struct DegenerateGeometryError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

// Exact oracle asked to run above its subset-enumeration cap.
struct SizeLimitError : Error {
    using Error::Error;
};

}  // namespace sinr
