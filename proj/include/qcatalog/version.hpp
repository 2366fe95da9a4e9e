#pragma once

#include <string_view>

namespace qcat {

#ifdef QCATALOG_VERSION
inline constexpr std::string_view kVersion = QCATALOG_VERSION;
#else
inline constexpr std::string_view kVersion = "0.0.0";
#endif

}  // namespace qcat
