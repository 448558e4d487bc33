#pragma once

// Batch command surface: one problem document in, one result document out.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace foliq::cli {

inline constexpr const char* kToolName = "foliq";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { Table, Json };

struct Options {
  Format format = Format::Table;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> box;  // "lo:hi,lo:hi,..."
  unsigned refine_budget = 64;
};

struct Outcome {
  int exit_code = 0;  // 0 ok or pass, 1 check failed, 2 error
  nlohmann::ordered_json document;
};

const std::vector<std::string>& commands();

/// Parses `text` as a problem document and runs `command` on it. Every
/// failure, including malformed input, becomes an error document with exit 2.
Outcome run(const std::string& command, const std::string& text, const Options& options);

std::string render(const nlohmann::ordered_json& document, Format format);

/// FNV-1a 64 of `bytes`, as 16 hex digits.
std::string fnv1a64(const std::string& bytes);

}  // namespace foliq::cli
