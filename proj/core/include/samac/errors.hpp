#pragma once

#include <stdexcept>
#include <string>

namespace samac {

/// Thrown when a request exceeds the guarded desk-scale limits
/// (exhaustive permutation search, cycle enumeration, superblock ML, ...).
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when external input (JSON documents, configs) fails schema or
/// invariant checks.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace samac
