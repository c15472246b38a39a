#pragma once

#include <string>
#include <vector>

namespace linrank::detail {

/// prefix1 .. prefixK
inline std::vector<std::string> numbered(const std::string& prefix, std::size_t k) {
    std::vector<std::string> out;
    out.reserve(k);
    for (std::size_t i = 1; i <= k; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

inline std::vector<std::string> joined(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace linrank::detail
