#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sdn5g {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

// FNV-1a 64-bit.
class Fnv1a {
public:
    static constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;

    void update(std::string_view bytes);
    void update_u64(std::uint64_t v);
    void update_f64(double v);
    std::uint64_t value() const noexcept { return h_; }

private:
    std::uint64_t h_ = kOffsetBasis;
};

std::string hex64(std::uint64_t v);

} // namespace sdn5g
