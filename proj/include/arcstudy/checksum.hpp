#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace arcstudy {

/** @brief CRC32 (IEEE 802.3 polynomial, reflected) of a byte sequence. */
std::uint32_t crc32(std::string_view data);

/** @brief CRC32 rendered as eight uppercase hex digits, e.g. "CBF43926". */
std::string crc32_hex(std::string_view data);

}  // namespace arcstudy
