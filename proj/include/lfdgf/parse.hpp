#pragma once

#include <string_view>

#include "lfdgf/fo.hpp"
#include "lfdgf/lfd.hpp"
#include "lfdgf/signature.hpp"

namespace lfdgf {

// LFD text syntax:
//   P(x,y)   D[x y] u   D[x y][u w]   (f & g)   (f | g)   (f -> g)   ~f
//   E[x y] f   E[] f   true   false
// `D[V][U]`, `|` and `->` are sugar and are expanded while parsing.
Lfd parse_lfd(std::string_view text, const Signature& sig);

// FO/GF text syntax:
//   P(x,y)   x = y   ~f   (f & g)   (f | g)   (f -> g)
//   exists y z . f   forall y z . f   true   false
// When `sig` is non-null, relations and arities are validated against it.
Fo parse_fo(std::string_view text, const Signature* sig = nullptr, bool equality_mode = false);

} // namespace lfdgf
