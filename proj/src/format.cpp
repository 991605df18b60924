#include "sdn5g/format.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <system_error>

#include "sdn5g/error.hpp"

namespace sdn5g {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw ParameterError("format_double: conversion failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParameterError("not a number: '" + std::string(s) + "'");
    return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

void Fnv1a::update(std::string_view bytes) {
    for (unsigned char c : bytes) {
        h_ ^= c;
        h_ *= 0x100000001b3ULL;
    }
}

void Fnv1a::update_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h_ ^= static_cast<unsigned char>(v >> (8 * i));
        h_ *= 0x100000001b3ULL;
    }
}

void Fnv1a::update_f64(double v) { update_u64(std::bit_cast<std::uint64_t>(v)); }

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace sdn5g
