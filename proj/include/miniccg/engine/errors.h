#pragma once

#include <stdexcept>
#include <string>

namespace miniccg {

// Bad user-supplied configuration: decks, config files, datasets.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (illegal action, shape mismatch).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A model, bundle or dataset file could not be read back.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace miniccg
