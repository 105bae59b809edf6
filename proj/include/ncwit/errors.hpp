#pragma once

#include <stdexcept>
#include <string>

namespace ncwit {

/// Input outside the domain of an operation (bad probability, out-of-range
/// noise parameter, non-normalized distribution).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The four preparations do not admit the a posteriori decomposition that
/// every witness relies on.
class DegenerateScenario : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A verification was requested outside the region where it makes a claim.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document; the message names the offending field or position.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ncwit
