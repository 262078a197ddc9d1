#pragma once

namespace pqs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pqs
