#pragma once

#include <string>

#include "cbd/rational.hpp"

namespace fixtures {

inline cbd::Rational R(const char* text) { return cbd::parse_rational(text); }

inline const std::string kDoubleSlit = R"(content hit outcomes +1 -1
context c1 "both slits closed"
context c2 "left slit open"
context c3 "right slit open"
context c4 "both slits open"
bunch c1 members hit
  -1 : 1
bunch c2 members hit
  +1 : 1/4
  -1 : 3/4
bunch c3 members hit
  +1 : 0.25
  -1 : 0.75
bunch c4 members hit
  +1 : 1/3
  -1 : 2/3
)";

inline const std::string kGriffiths = R"(content q1 outcomes +1 -1
content q2 outcomes +1 -1
content q3 outcomes +1 -1
context c1
context c2
bunch c1 members q1 q2
  +1 +1 : 1/2
  -1 -1 : 1/2
bunch c2 members q2 q3
  +1 -1 : 1/3
  -1 +1 : 2/3
)";

}  // namespace fixtures
