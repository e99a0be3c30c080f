#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace grn {

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
    std::array<char, 32> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

/// FNV-1a 64-bit hash, used to fingerprint consumed input files in run
/// manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Strict full-token double parse; rejects partial consumption and
/// non-finite results.
inline bool parse_double(std::string_view token, double& out) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) return false;
    if (!(v == v) || v > 1.7976931348623157e308 || v < -1.7976931348623157e308) return false;
    out = v;
    return true;
}

} // namespace grn
