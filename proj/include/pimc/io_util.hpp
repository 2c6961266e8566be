#ifndef PIMC_IO_UTIL_HPP
#define PIMC_IO_UTIL_HPP

#include <filesystem>
#include <string>

namespace pimc {

/// Locale-independent decimal form with 17 significant digits; round-trips
/// exactly through strtod.
std::string format_double(double value);

/// Writes content to path atomically (temp file in the same directory, then
/// rename), so partially written files are never visible. Throws IoError
/// with the path in the message.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace pimc

#endif
