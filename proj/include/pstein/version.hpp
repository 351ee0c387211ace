#pragma once

namespace pstein {

inline constexpr const char* kVersion = "0.1.0";

} // namespace pstein
