#ifndef CHAOSKIT_VERSION_HPP
#define CHAOSKIT_VERSION_HPP

namespace chaoskit {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace chaoskit

#endif  // CHAOSKIT_VERSION_HPP
