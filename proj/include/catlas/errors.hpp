#pragma once

#include <stdexcept>
#include <string>

namespace catlas {

// Base class for all failures raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input file missing on disk.
struct InputNotFoundError : Error {
    using Error::Error;
};

// Malformed input table or cell (bad header, bad score, duplicate category...).
struct ParseError : Error {
    using Error::Error;
};

// Identifier that normalizes to the empty string.
struct InvalidIdentifierError : ParseError {
    using ParseError::ParseError;
};

// A normalized key maps to two or more records on one side while the other
// side also carries it; matching refuses to pick a winner.
struct AmbiguousMatchError : Error {
    using Error::Error;
};

// No journal survived matching and score filtering.
struct EmptyCorpusError : Error {
    using Error::Error;
};

// A statistical test cannot be computed from the given input
// (constant correlation vector, all-zero differences).
struct DegenerateStatError : Error {
    using Error::Error;
};

}  // namespace catlas
