#pragma once

#include <stdexcept>
#include <string>

namespace signsel {

// Invalid or unsupported configuration knob (constellation kind, kappa, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed call arguments: length mismatch, empty input, wrong bit count.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Out-of-order use of an incremental object.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Problem size exceeds what an enumeration/estimation routine supports.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Formula evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Received symbol does not belong to the constellation (up to sign).
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace signsel
