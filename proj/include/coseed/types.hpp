// Copyright 2026 The coseed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coseed {

using NodeId = std::uint32_t;
using AdvertiserId = std::uint32_t;

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An argument outside its mathematical domain (probability > 1, bad node id).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A guarded brute-force routine was asked for more than it can enumerate.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Inconsistent or missing configuration (wrong advertiser count, no caps).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition (infeasible allocation, etc).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace coseed
