#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace forge {

using Json = nlohmann::json;

// Calls `fn(line_number, object)` for every non-empty line. Lines that are
// not JSON objects raise ParseError with the 1-based line number.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const Json&)>& fn);

std::vector<Json> read_jsonl(const std::filesystem::path& path);

// Serializes one object per line. Writes to a temp file in the target
// directory and renames it into place, so partial outputs are never visible.
void write_jsonl_atomic(const std::filesystem::path& path,
                        const std::vector<Json>& records);

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string read_text(const std::filesystem::path& path);

}  // namespace forge
