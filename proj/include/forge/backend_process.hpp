#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <sys/types.h>

#include "forge/eval.hpp"

namespace forge {

// Runs an embedding provider as a child process speaking line-delimited
// JSON over its standard streams: request {"id", "text"}, response
// {"id", "vector": [...]}. Requests are strictly serial; the response id
// must echo the request id and all vectors must share one dimension.
class ProcessBackend : public EmbeddingBackend {
 public:
  explicit ProcessBackend(std::vector<std::string> argv);
  ~ProcessBackend() override;

  ProcessBackend(const ProcessBackend&) = delete;
  ProcessBackend& operator=(const ProcessBackend&) = delete;

  SentenceEmbedding embed(const std::string& text) override;

 private:
  std::string read_line();
  void write_all(const std::string& data);

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 0;
  std::optional<std::size_t> dim_;
};

}  // namespace forge
