#ifndef ESLAB_VERSION_HPP
#define ESLAB_VERSION_HPP

namespace eslab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace eslab

#endif
