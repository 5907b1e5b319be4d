#pragma once

#include <stdexcept>
#include <string>

namespace rdstab {

// Error taxonomy. Each class maps to a CLI exit code (see runner.cpp):
//   LoadError -> 1, PreconditionError -> 2, RootError/MultiRootError/
//   TruncationError -> 3, BlowupError/StepError -> 4, everything else -> 1.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteError : std::runtime_error {
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

struct RootError : std::runtime_error {
  explicit RootError(const std::string& what) : std::runtime_error(what) {}
};

struct MultiRootError : std::runtime_error {
  explicit MultiRootError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

struct SublinearityError : std::runtime_error {
  explicit SublinearityError(const std::string& what) : std::runtime_error(what) {}
};

struct BlowupError : std::runtime_error {
  explicit BlowupError(const std::string& what) : std::runtime_error(what) {}
};

struct StepError : std::runtime_error {
  explicit StepError(const std::string& what) : std::runtime_error(what) {}
};

struct LoadError : std::runtime_error {
  explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rdstab
