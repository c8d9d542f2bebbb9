#pragma once

#include <stdexcept>
#include <string>

namespace kbonacci {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class precondition_error : public error {
 public:
  using error::error;
};

/// A word length, cache size or enumeration size exceeds the configured budget.
class budget_error : public error {
 public:
  using error::error;
};

/// A query needs factors longer than the language index was built for.
class index_depth_error : public error {
 public:
  using error::error;
};

/// The head of a configuration does not contain its exit from the language.
class uncertified_configuration : public error {
 public:
  using error::error;
};

/// A scan window was too small to decide the question asked.
class inconclusive_error : public error {
 public:
  using error::error;
};

}  // namespace kbonacci
