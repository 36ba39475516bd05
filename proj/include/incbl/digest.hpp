#pragma once

#include <string>
#include <string_view>

#include "incbl/types.hpp"

namespace incbl {

Sha256 sha256_bytes(std::string_view bytes);

std::string hex_digest(const Sha256& digest);

}  // namespace incbl
