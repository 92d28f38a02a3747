#pragma once

namespace refaudit {

inline constexpr const char* kVersion = "1.0.0";

// Version tag written into report.json; bump on breaking schema changes.
inline constexpr const char* kReportSchemaVersion = "1";

} // namespace refaudit
