#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forge {

// Exit-code taxonomy used by the CLI: 0 success, 2 config error,
// 3 input error, 4 internal invariant violation.
enum class ErrorClass { config = 2, input = 3, internal = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& msg)
      : std::runtime_error(msg), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }
  int exit_code() const { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg)
      : Error(ErrorClass::config, msg) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& msg)
      : Error(ErrorClass::input, msg) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& msg)
      : Error(ErrorClass::internal, msg) {}
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : InputError(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateEntry : public InputError {
 public:
  explicit DuplicateEntry(const std::string& key)
      : InputError("duplicate entry: " + key) {}
};

class EmptyDocument : public InputError {
 public:
  explicit EmptyDocument(const std::string& doc_id)
      : InputError("document has empty body: " + doc_id) {}
};

class InvalidPercent : public ConfigError {
 public:
  explicit InvalidPercent(double p)
      : ConfigError("percent out of range (0, 100]: " + std::to_string(p)) {}
};

class SampleTooLarge : public ConfigError {
 public:
  SampleTooLarge(std::size_t k, std::size_t n)
      : ConfigError("sample size " + std::to_string(k) +
                    " exceeds population " + std::to_string(n)) {}
};

class MissingAdjudication : public InputError {
 public:
  explicit MissingAdjudication(const std::string& triplet_id)
      : InputError("annotators disagree and no adjudicator label: " +
                   triplet_id) {}
};

class EmptyAnnotationSet : public InputError {
 public:
  EmptyAnnotationSet() : InputError("annotation set is empty") {}
};

class DegenerateMarginals : public InputError {
 public:
  DegenerateMarginals()
      : InputError("kappa undefined: expected agreement is 1 "
                   "(both annotators used a single label)") {}
};

class AugmentationInfeasible : public InputError {
 public:
  explicit AugmentationInfeasible(const std::string& why)
      : InputError("augmentation infeasible: " + why) {}
};

class InvalidInferenceCount : public ConfigError {
 public:
  explicit InvalidInferenceCount(int k)
      : ConfigError("inference count must be 5 or 12, got " +
                    std::to_string(k)) {}
};

class InvalidEnrichmentCombo : public ConfigError {
 public:
  explicit InvalidEnrichmentCombo(const std::string& what)
      : ConfigError("unsupported enrichment combination: " + what) {}
};

class DegenerateEmbedding : public InputError {
 public:
  explicit DegenerateEmbedding(const std::string& context)
      : InputError("zero-norm embedding: " + context) {}
};

class ShapeError : public InternalError {
 public:
  explicit ShapeError(const std::string& what) : InternalError(what) {}
};

class UndefinedCorrelation : public InputError {
 public:
  explicit UndefinedCorrelation(const std::string& why)
      : InputError("correlation undefined: " + why) {}
};

class ProtocolError : public InputError {
 public:
  explicit ProtocolError(const std::string& what)
      : InputError("backend protocol: " + what) {}
};

}  // namespace forge
