#pragma once

namespace pilot {
inline constexpr unsigned long long kMasterSeed = 42;
inline constexpr double kGapProbabilityFloorN1e6 = 0.0;
inline constexpr double kCondensateDevBoundN1e5 = 1.0;
inline constexpr double kNextLevelBoundN1e5 = 1.0;
inline constexpr double kSubcriticalNoiseFloorN1e5 = 1.0;
inline constexpr double kIdsDevBoundN1e5 = 1.0;
inline constexpr double kIdsDevPilotN1e4 = 1.0;
inline constexpr double kSinglePathSuperTailFloor = 0.0;
inline constexpr double kSinglePathSubNoise = 1.0;
}  // namespace pilot
