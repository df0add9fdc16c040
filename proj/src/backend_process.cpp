#include "forge/backend_process.hpp"

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>

#include <sys/wait.h>
#include <unistd.h>

#include "forge/errors.hpp"

namespace forge {

ProcessBackend::ProcessBackend(std::vector<std::string> argv) {
  if (argv.empty()) throw ConfigError("backend command is empty");
  // a dead child must surface as EPIPE on write, not kill this process
  std::signal(SIGPIPE, SIG_IGN);

  int to_child[2];
  int from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0) {
    throw InternalError(std::string("pipe: ") + std::strerror(errno));
  }
  pid_ = fork();
  if (pid_ < 0) throw InternalError(std::string("fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (std::string& a : argv) args.push_back(a.data());
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  to_child_ = to_child[1];
  from_child_ = from_child[0];
}

ProcessBackend::~ProcessBackend() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

void ProcessBackend::write_all(const std::string& data) {
  std::size_t off = 0;
  while (off < data.size()) {
    ssize_t n = write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("write to backend failed: ") +
                          std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::string ProcessBackend::read_line() {
  for (;;) {
    std::size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("read from backend failed: ") +
                          std::strerror(errno));
    }
    if (n == 0) {
      throw ProtocolError("backend closed its output before responding");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

SentenceEmbedding ProcessBackend::embed(const std::string& text) {
  const std::string id = std::to_string(next_id_++);
  Json request{{"id", id}, {"text", text}};
  write_all(request.dump() + "\n");

  const std::string line = read_line();
  Json response = Json::parse(line, nullptr, false);
  if (response.is_discarded() || !response.is_object()) {
    throw ProtocolError("response is not a JSON object: " + line);
  }
  if (!response.contains("id") || !response["id"].is_string() ||
      response["id"].get<std::string>() != id) {
    throw ProtocolError("response id does not echo request id " + id);
  }
  if (!response.contains("vector") || !response["vector"].is_array() ||
      response["vector"].empty()) {
    throw ProtocolError("response carries no vector for id " + id);
  }
  std::vector<double> values;
  values.reserve(response["vector"].size());
  for (const Json& v : response["vector"]) {
    if (!v.is_number()) {
      throw ProtocolError("vector entry is not a number for id " + id);
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
      throw ProtocolError("vector entry is not finite for id " + id);
    }
    values.push_back(d);
  }
  if (dim_ && values.size() != *dim_) {
    throw ProtocolError("vector dimension changed from " +
                        std::to_string(*dim_) + " to " +
                        std::to_string(values.size()));
  }
  dim_ = values.size();
  return make_embedding(std::move(values));
}

}  // namespace forge
