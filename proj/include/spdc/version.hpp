#ifndef SPDC_VERSION_HPP
#define SPDC_VERSION_HPP

namespace spdc {

inline constexpr const char* kToolName = "spdc-array";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace spdc

#endif
