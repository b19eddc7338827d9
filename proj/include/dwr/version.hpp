#ifndef DWR_VERSION_HPP
#define DWR_VERSION_HPP

namespace dwr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dwr

#endif
