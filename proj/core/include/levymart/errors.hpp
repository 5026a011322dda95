// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace levymart {

/// Malformed argument: zero denominator, unknown variable, bad time grid, ...
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation needed a cumulant (or series coefficient) beyond the tracked order.
/// Never replaced by an implicit zero.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The cumulant sequence is not the cumulant sequence of any Kolmogorov measure.
class RejectedSpec : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula's denominator vanishes identically for the given parameters.
class DegenerateSpec : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside the convergence domain of a closed form.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace levymart
