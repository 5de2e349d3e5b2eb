#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sfdraw {

// Malformed input text. `location` is either "line L, column C" for syntax
// errors or a JSON pointer such as "/variables/3/kind" for schema errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string location)
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

// One violated model rule.
struct Diagnostic {
  std::string rule;      // stable rule id, e.g. "unresolved-identifier"
  std::string variable;  // offending variable name
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& diagnostic);

// A model that parsed but failed validation.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Failure inside a named pipeline stage.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, std::string element, const std::string& message)
      : std::runtime_error("[" + stage + "] " + (element.empty() ? "" : element + ": ") + message),
        stage_(std::move(stage)),
        element_(std::move(element)) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& element() const noexcept { return element_; }

 private:
  std::string stage_;
  std::string element_;
};

}  // namespace sfdraw
