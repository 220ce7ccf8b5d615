#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lingdetect::detail {

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Punctuation character class for the punctuation_count feature and the
// tokenizer: the ASCII punctuation set !"#$%&'()*+,-./:;<=>?@[\]^_`{|}~
inline bool is_ascii_punct(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return (u >= 0x21 && u <= 0x2f) || (u >= 0x3a && u <= 0x40) ||
           (u >= 0x5b && u <= 0x60) || (u >= 0x7b && u <= 0x7e);
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Bytes >= 0x80 are treated as word characters (non-English letters,
// curly quotes etc. stay inside tokens; the library targets English text).
inline bool is_word_char(char c) {
    return is_ascii_alpha(c) || is_ascii_digit(c) ||
           static_cast<unsigned char>(c) >= 0x80;
}

// Common UTF-8 punctuation (curly quotes, dashes, ellipsis, guillemets).
// Returns the byte length of the punctuation sequence at s[i], or 0.
inline std::size_t utf8_punct_len(std::string_view s, std::size_t i) {
    const auto b = [&](std::size_t k) {
        return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0u;
    };
    if (b(0) == 0xe2 && b(1) == 0x80) {
        const unsigned c = b(2);
        if (c == 0x98 || c == 0x99 || c == 0x9c || c == 0x9d ||  // ‘ ’ “ ”
            c == 0x93 || c == 0x94 || c == 0xa6)                  // – — …
            return 3;
    }
    if (b(0) == 0xc2 && (b(1) == 0xab || b(1) == 0xbb)) return 2;  // « »
    return 0;
}

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(ascii_lower(c));
    return out;
}

// Number of UTF-8 code points (continuation bytes are not counted).
inline std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xc0) != 0x80) ++n;
    return n;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

// FNV-1a 64-bit. Used as a content fingerprint for ensemble member files
// and config hashes in run manifests (integrity check, not cryptographic).
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

} // namespace lingdetect::detail
