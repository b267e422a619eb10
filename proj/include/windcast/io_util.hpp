#pragma once

#include <cstdint>
#include <string>

namespace windcast::ioutil {

// Doubles rendered with 17 significant digits round-trip bit-exactly.
std::string fmt17(double v);

double parse_double(const std::string& tok, const std::string& context);
std::int64_t parse_int(const std::string& tok, const std::string& context);

// Writes to a temporary file in the same directory, then renames into
// place, so readers never observe a half-written file.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

}  // namespace windcast::ioutil
