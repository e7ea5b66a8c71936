#pragma once

#include <stdexcept>
#include <string>

namespace glt {

/// File could not be opened, read, or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed text input; messages carry a line number where available.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally invalid file contents (header mismatch, asymmetric METIS
/// adjacency, out-of-range ids, ...).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (non-bijective permutation,
/// negative weights, p > n, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace glt
