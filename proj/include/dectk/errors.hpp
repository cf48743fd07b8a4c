#pragma once

#include <stdexcept>
#include <string>

namespace dectk {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input stream (mesh file, cochain file).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input parsed but violates a structural invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Zero-volume simplex, dimension mismatch and similar geometric failures.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Degree / index / size mismatch between a cochain and its complex.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Linear solve or factorization failure.
class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace dectk
