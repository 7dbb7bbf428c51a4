#pragma once

namespace arcstudy {

inline constexpr const char* engine_version = "1.0.0";
inline constexpr int study_schema_version = 1;

}  // namespace arcstudy
