#pragma once
#include "seshift/quantities.hpp"
#include <optional>
#include <string>
#include <vector>

namespace seshift {

/*
  Reduced self energy F, defined through

    E_SE(nL_j, Z) = (alpha/pi) (Z alpha)^4 / n^3  F(nL_j, Z alpha)  m_e c^2,

  and its Z alpha expansion for non-S states,

    F = A40 + (Z alpha)^2 { A61 ln[(Z alpha)^-2] + G_SE(Z alpha) }
      = A40 + (Z alpha)^2 { A61 ln[(Z alpha)^-2] + A60 } + (Z alpha)^3 G_SE,7.

  G_SE and G_SE,7 are the remainders that are extrapolated in Z. The
  "magnifier" variable A60 + (Z alpha) G_SE,7 equals G_SE identically.
  Uncertainties propagate linearly: every map here is affine in F and the
  coefficients, with exact (Z alpha) factors.
*/

enum class Coefficient { a40, a61, a60, gse_limit };
std::string_view to_string(Coefficient c);

/// A required coefficient is absent from a CoefficientSet.
class MissingCoefficient : public Error {
public:
  MissingCoefficient(Coefficient which, const std::string &state);
  Coefficient which() const { return m_which; }

private:
  Coefficient m_which;
};

/// Per-state expansion coefficients. Absent is not the same as zero.
struct CoefficientSet {
  StateLabel state{2, 1, 1};
  std::optional<UncertainValue> a40;
  std::optional<UncertainValue> a61;
  std::optional<UncertainValue> a60;
  std::optional<UncertainValue> gse_limit; // independent lim_{Z->0} G_SE
  std::string source;

  const UncertainValue &require(Coefficient c) const;
};

struct FSample {
  NuclearCharge z;
  UncertainValue f;
};

/// Reduced self energies for one state, strictly increasing in Z.
struct FSeries {
  StateLabel state{2, 1, 1};
  std::vector<FSample> samples;
  std::string constants_label;

  void validate() const;
};

enum class Remainder { gse, gse7, magnifier };
std::string_view to_string(Remainder r);
Remainder parse_remainder(std::string_view text);

enum class Truncation { two_term, three_term };
std::string_view to_string(Truncation t);
Truncation parse_truncation(std::string_view text);

//------------------------------------------------------------------------------
/// (alpha/pi)(Z alpha)^4/n^3 m_e c^2/h in Hz: energy per unit F.
Real prefactor(const StateLabel &state, NuclearCharge z,
               const ConstantsSet &constants);

UncertainValue f_to_energy(const UncertainValue &f, const StateLabel &state,
                           NuclearCharge z, const ConstantsSet &constants);
UncertainValue energy_to_f(const UncertainValue &energy_hz,
                           const StateLabel &state, NuclearCharge z,
                           const ConstantsSet &constants);

//------------------------------------------------------------------------------
// Remainder extraction. All throw ValidationError for S states,
// MissingCoefficient when a needed coefficient is absent, DomainError for
// Z alpha >= 1.

/// G_SE = (F - A40)/(Z alpha)^2 - A61 ln[(Z alpha)^-2]
UncertainValue extract_gse(const UncertainValue &f, NuclearCharge z,
                           const CoefficientSet &coeffs,
                           const ConstantsSet &constants);

/// G_SE,7 = [F - A40 - (Z alpha)^2 (A61 ln[(Z alpha)^-2] + A60)]/(Z alpha)^3
UncertainValue extract_gse7(const UncertainValue &f, NuclearCharge z,
                            const CoefficientSet &coeffs,
                            const ConstantsSet &constants);

/// A60 + (Z alpha) G_SE,7, which does not need A60 and equals extract_gse.
UncertainValue extract_magnifier(const UncertainValue &f, NuclearCharge z,
                                 const CoefficientSet &coeffs,
                                 const ConstantsSet &constants);

UncertainValue extract(Remainder kind, const UncertainValue &f,
                       NuclearCharge z, const CoefficientSet &coeffs,
                       const ConstantsSet &constants);

/// Inverse of extract(kind, ...).
UncertainValue reconstruct_f(const UncertainValue &remainder, Remainder kind,
                             NuclearCharge z, const CoefficientSet &coeffs,
                             const ConstantsSet &constants);

//------------------------------------------------------------------------------
// The same maps at a real-valued Z alpha, for targets that are not integer
// charges (Z alpha -> 0 limits, plotting abscissae).

UncertainValue extract_at(Remainder kind, const UncertainValue &f, Real za,
                          const CoefficientSet &coeffs);
UncertainValue reconstruct_at(const UncertainValue &remainder, Remainder kind,
                              Real za, const CoefficientSet &coeffs);

//------------------------------------------------------------------------------
/// Truncated perturbation estimate of the energy shift, with the omitted
/// remainder bounded by +-remainder_bound:
///   two_term:   A60 + (Z alpha) G_SE,7 = 0 +- bound
///   three_term: G_SE,7 = 0 +- bound
struct TruncatedEstimate {
  Real central_hz{0};
  Real bound_sigma_hz{0};       // prefactor (Z alpha)^2 or ^3 times bound
  Real coefficient_sigma_hz{0}; // coefficient uncertainties, in quadrature
  UncertainValue energy_hz;     // central with both sigmas in quadrature
};

TruncatedEstimate truncated_estimate_breakdown(const StateLabel &state,
                                               NuclearCharge z,
                                               const CoefficientSet &coeffs,
                                               const ConstantsSet &constants,
                                               Truncation order,
                                               Real remainder_bound = 1);

UncertainValue truncated_estimate(const StateLabel &state, NuclearCharge z,
                                  const CoefficientSet &coeffs,
                                  const ConstantsSet &constants,
                                  Truncation order, Real remainder_bound = 1);

} // namespace seshift
