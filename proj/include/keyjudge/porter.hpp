#pragma once

#include <string>
#include <string_view>

namespace keyjudge {

/// One pass of the classic Porter (1980) suffix stripper, following the
/// behaviour of the reference ANSI C implementation. Input is a lowercase
/// word; characters outside a-z are treated as consonants. Words of two or
/// fewer code points are returned unchanged.
std::u32string porter_stem(std::u32string word);

/// UTF-8 convenience overload.
std::string porter_stem(std::string_view word);

}  // namespace keyjudge
