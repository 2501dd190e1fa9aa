#pragma once

#include <stdexcept>

namespace qerg {

/// Invalid or out-of-range input (unphysical state, bad flag value, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to meet its tolerance. The message carries
/// diagnostics (interval, depth, running estimate).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qerg
