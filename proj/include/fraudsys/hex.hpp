#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fraudsys {

std::string to_hex(std::span<const uint8_t> bytes);

// Returns nullopt on odd length or non-hex characters.
std::optional<std::vector<uint8_t>> from_hex(std::string_view hex);

} // namespace fraudsys
