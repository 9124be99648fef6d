#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace codegraph {

// Thrown when an enumeration or search would exceed a configured cap.
// The CLI maps this to exit code 2.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what_cap, std::uint64_t limit, std::uint64_t needed)
        : std::runtime_error(what_cap + " cap exceeded: limit " + std::to_string(limit) +
                             ", needed " + std::to_string(needed)),
          cap_name(what_cap), limit(limit), needed(needed) {}

    std::string cap_name;
    std::uint64_t limit;
    std::uint64_t needed;
};

} // namespace codegraph
