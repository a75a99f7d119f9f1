#pragma once

namespace jamtol {

inline constexpr const char* version = "0.1.0";

}  // namespace jamtol
