#pragma once

// Central numeric thresholds.  Anything a routine uses to accept or reject
// input lives here, so tests and the CLI can state them explicitly.
namespace msk::tol {

inline constexpr double eps_strict = 1e-6;   // margin for strict contractions: require ||W|| < 1 - eps_strict
inline constexpr double psd = 1e-10;         // Hermitian symmetry / eigenvalue slack for matrix square roots
inline constexpr double cond_max = 1e12;     // pivot-ratio guard in linear solves
inline constexpr double inner = 1e-8;        // unitarity defect accepted when certifying an inner function
inline constexpr double alias = 1e-9;        // spectral-folding mass allowed by require_exact()
inline constexpr double analytic = 1e-8;     // relative anti-analytic mass allowed by projection inputs
inline constexpr double basis_rank = 1e-10;  // relative rank cutoff when orthonormalizing kernel spans
inline constexpr double basis_member = 1e-8; // membership defect allowed for constructed basis elements
inline constexpr double dim_rank = 1e-9;     // relative rank cutoff in operator-space dimension counts

}  // namespace msk::tol
