#ifndef MAGNET_VERSION_HPP
#define MAGNET_VERSION_HPP

#include <string_view>

namespace magnet {

inline constexpr std::string_view kToolVersion = "0.1.0";

} // namespace magnet

#endif // MAGNET_VERSION_HPP
