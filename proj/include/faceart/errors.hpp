#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace faceart {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collinear or zero-area input where a proper polygon is required.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

// Self-intersecting ring or otherwise malformed polygon.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

class NonPositiveInput : public Error {
 public:
  using Error::Error;
};

// Sample too small or with zero spread for density estimation.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what,
                      std::optional<std::size_t> byte_offset = std::nullopt,
                      std::optional<std::size_t> feature_index = std::nullopt)
      : Error(what), byte_offset_(byte_offset), feature_index_(feature_index) {}

  std::optional<std::size_t> byte_offset() const { return byte_offset_; }
  std::optional<std::size_t> feature_index() const { return feature_index_; }

 private:
  std::optional<std::size_t> byte_offset_;
  std::optional<std::size_t> feature_index_;
};

class NetworkError : public Error {
 public:
  explicit NetworkError(const std::string& what, int http_status = 0)
      : Error(what), http_status_(http_status) {}

  // 0 when the failure happened below HTTP (connect, timeout).
  int http_status() const { return http_status_; }

 private:
  int http_status_;
};

}  // namespace faceart
