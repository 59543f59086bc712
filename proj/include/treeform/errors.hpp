#pragma once

#include <stdexcept>
#include <string>

namespace treeform {

// Input was not valid JSON. `byte_offset` points at the first offending byte.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t byte_offset)
      : std::runtime_error(msg), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// JSON parsed but does not match the expected schema. `path` names the
// offending field or JSON location.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& msg, std::string path = "")
      : std::runtime_error(path.empty() ? msg : msg + " (at " + path + ")"),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace treeform
