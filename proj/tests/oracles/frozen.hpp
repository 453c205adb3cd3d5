#pragma once

// Generated by frozen_values.py (mpmath, 40 digits). Do not edit.

namespace frozen {

inline constexpr double kJetGaussS = 0.60653065971263342;
inline constexpr double kJetSech2S = 0.76980035891950102;
inline constexpr double kMixingS_delta_half = 4.0;
inline constexpr double kChampagneEllEta = 0.22358124122692277;
inline constexpr double kTavoularisEllEta = 0.17899807657817198;

}  // namespace frozen
