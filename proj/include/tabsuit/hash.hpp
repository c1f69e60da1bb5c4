#pragma once

#include <string>
#include <string_view>

namespace tabsuit {

// SHA-256 digest, lowercase hex (64 chars).
std::string sha256_hex(std::string_view data);

}  // namespace tabsuit
