#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace onx {

using json = nlohmann::json;

// Malformed or contract-violating input: bad matrix, bad parameters, bad file.
// Maps to process exit code 2 at the CLI boundary.
class invalid_input : public std::runtime_error {
 public:
  explicit invalid_input(const std::string& what, json detail = json::object())
      : std::runtime_error(what), detail_(std::move(detail)) {}
  const json& detail() const noexcept { return detail_; }

 private:
  json detail_;
};

// A configured cap or enumeration budget was exceeded before completion.
// Maps to process exit code 3 at the CLI boundary.
class cap_exceeded : public std::runtime_error {
 public:
  explicit cap_exceeded(const std::string& what, json detail = json::object())
      : std::runtime_error(what), detail_(std::move(detail)) {}
  const json& detail() const noexcept { return detail_; }

 private:
  json detail_;
};

}  // namespace onx
