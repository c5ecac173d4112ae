#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace assetval {

// ASCII-only case folding; multi-byte UTF-8 sequences pass through untouched.
std::string ascii_lower(std::string_view s);

bool is_ascii(std::string_view s);

// Decodes UTF-8 into Unicode scalar values. Invalid bytes decode as one
// replacement scalar each so counting stays total.
std::vector<char32_t> decode_utf8(std::string_view s);

std::size_t codepoint_count(std::string_view s);

std::string encode_utf8(char32_t cp);

std::string trim(std::string_view s);

}  // namespace assetval
