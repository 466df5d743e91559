#pragma once

// Single source of truth for the numeric tolerance hierarchy.
// Construction-level checks are strictest; algebraic identities sit one
// decade looser; rebuild-and-compare residuals one more.

namespace qshare::tol {

inline constexpr double construction = 1e-10;  // norms, hermiticity, unitarity
inline constexpr double identity = 1e-9;       // agreement between algebraic routes
inline constexpr double reconstruction = 1e-8; // rebuild-and-compare residuals

// Tiny negatives above clamp_floor are rounded to zero before square roots;
// anything below psd_hard_floor is a logic fault, not floating-point noise.
inline constexpr double clamp_floor = -1e-10;
inline constexpr double psd_hard_floor = -1e-8;

} // namespace qshare::tol
