#pragma once

#include <string>
#include <string_view>

namespace plagdet {

// Porter (1980) suffix stripping for lowercase ASCII words. Words of one or
// two letters are returned unchanged, as in the reference C implementation.
std::string porter_stem(std::string_view word);

}  // namespace plagdet
