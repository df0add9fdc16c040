// Reference implementation of the line-delimited embedding protocol:
// request {"id", "text"} on stdin, response {"id", "vector": [...]} on
// stdout. Vectors are a pure function of the text, so the provider contract
// (same text, same embedding) holds. The --corrupt flag breaks the protocol
// on purpose so the harness's validation paths can be exercised.
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "forge/text.hpp"

int main(int argc, char** argv) {
  CLI::App app{"deterministic stdio embedding backend"};
  std::size_t dim = 8;
  std::string corrupt = "none";
  app.add_option("--dim", dim, "embedding dimension");
  app.add_option("--corrupt", corrupt,
                 "protocol fault to inject: none | dim | id")
      ->check(CLI::IsMember({"none", "dim", "id"}));
  CLI11_PARSE(app, argc, argv);

  std::string line;
  std::size_t responses = 0;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    nlohmann::json request = nlohmann::json::parse(line, nullptr, false);
    if (request.is_discarded() || !request.is_object()) {
      std::fprintf(stderr, "stub-backend: not a JSON object: %s\n",
                   line.c_str());
      return 3;
    }
    std::string id = request.value("id", "");
    std::string text = request.value("text", "");

    if (corrupt == "id") id += "-broken";
    std::size_t d = (corrupt == "dim" && responses >= 1) ? dim + 1 : dim;

    std::uint64_t state = forge::fnv1a64(text);
    nlohmann::json vector = nlohmann::json::array();
    for (std::size_t i = 0; i < d; ++i) {
      state = forge::splitmix64(state);
      vector.push_back(static_cast<double>(state >> 11) * 0x1.0p-52 - 1.0);
    }
    nlohmann::json response{{"id", id}, {"vector", vector}};
    std::fputs((response.dump() + "\n").c_str(), stdout);
    std::fflush(stdout);
    ++responses;
  }
  return 0;
}
