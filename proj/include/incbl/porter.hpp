#pragma once

#include <string>
#include <string_view>

namespace incbl {

/// English Porter stemmer (the 1980 algorithm as published: step 2 maps
/// "abli" to "able" and there is no "logi" rule). Input is expected to be
/// lowercase; strings of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace incbl
