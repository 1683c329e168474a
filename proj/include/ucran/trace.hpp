#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ucran {

// Line-oriented run trace. Lines are appended in processing order; the
// digest is FNV-1a 64 over the concatenated lines (newline-terminated).
struct Trace {
  std::vector<std::string> lines;

  void add(std::string line) { lines.push_back(std::move(line)); }

  std::uint64_t digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& l : lines) {
      for (unsigned char c : l) {
        h ^= c;
        h *= 1099511628211ULL;
      }
      h ^= static_cast<unsigned char>('\n');
      h *= 1099511628211ULL;
    }
    return h;
  }

  std::string text() const {
    std::string out;
    for (const auto& l : lines) {
      out += l;
      out += '\n';
    }
    return out;
  }
};

}  // namespace ucran
