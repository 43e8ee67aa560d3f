// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace xlmimo {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A metric is mathematically undefined for the given input (e.g. zero spectrum).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

/// Raised when two elements sit closer than the clearance margin, where the
/// free-space model diverges.
class ModelValidityError : public Error {
 public:
  ModelValidityError(std::size_t rx_index, std::size_t tx_index, double distance);

  std::size_t rx_index() const noexcept { return rx_index_; }
  std::size_t tx_index() const noexcept { return tx_index_; }
  double distance() const noexcept { return distance_; }

 private:
  std::size_t rx_index_;
  std::size_t tx_index_;
  double distance_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error("config key '" + key + "': " + message), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace xlmimo
