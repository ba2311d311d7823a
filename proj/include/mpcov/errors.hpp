#pragma once

#include <stdexcept>
#include <string>

namespace mpcov {

// Parameter problems throw std::invalid_argument, evaluation outside a
// documented domain throws std::domain_error. The two below cover the
// remaining failure classes the CLI distinguishes by exit code.

struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mpcov
