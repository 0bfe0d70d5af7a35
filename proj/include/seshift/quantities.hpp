#pragma once
#include <stdexcept>
#include <string>
#include <string_view>

namespace seshift {

/// Working precision for every physical quantity in the library.
/// Remainder extraction divides by (Z alpha)^3 ~ 4e-7 at Z = 1, so double
/// rounding in F would leave only ~1e-11 of the remainder intact.
using Real = long double;

//==============================================================================
// Errors

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated type invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Z alpha outside [0, 1).
class DomainError : public Error {
public:
  using Error::Error;
};

//==============================================================================
/// A value with a one-standard-deviation uncertainty in the same unit.
/// Uncertainties are uncorrelated and combine in quadrature.
class UncertainValue {
public:
  constexpr UncertainValue() = default;
  UncertainValue(Real value, Real sigma = 0);

  Real value() const { return m_value; }
  Real sigma() const { return m_sigma; }
  bool exact() const { return m_sigma == 0; }

  friend bool operator==(const UncertainValue &,
                         const UncertainValue &) = default;

private:
  Real m_value{0};
  Real m_sigma{0};
};

UncertainValue scale(const UncertainValue &u, Real c);
UncertainValue add_quadrature(const UncertainValue &a, const UncertainValue &b);

struct FormatOptions {
  // Keep two significant digits in sigma when its leading digit is 1.
  bool two_digits_on_leading_one = true;
};

/// "-1404.240(2) kHz" style. Sigma is rounded to one (or two) significant
/// digits and the value to the same decimal place. Exact values print with
/// the shortest representation that round-trips at 17 digits.
std::string format_parenthesis(const UncertainValue &u,
                               std::string_view unit_label = {},
                               const FormatOptions &options = {});

/// 17 significant digits, the machine-readable form used in every output.
std::string format_full(Real x);

//==============================================================================
/// Fine-structure constant and electron rest energy (as a frequency), with
/// the label of the adjustment they come from.
struct ConstantsSet {
  Real alpha{0};
  Real electron_rest_frequency{0}; // m_e c^2 / h, Hz
  std::string label;

  /// Throws ValidationError unless 0 < alpha < 0.01 and the frequency is > 0.
  void validate() const;
};

//==============================================================================
/// Electron state nL_j, with j stored doubled.
class StateLabel {
public:
  StateLabel(int n, int l, int j2);

  int n() const { return m_n; }
  int l() const { return m_l; }
  int j2() const { return m_j2; }
  bool is_s() const { return m_l == 0; }

  /// Dirac quantum number kappa = (-1)^(j + l + 1/2) (j + 1/2).
  int kappa() const;

  friend auto operator<=>(const StateLabel &, const StateLabel &) = default;

private:
  int m_n, m_l, m_j2;
};

/// Parses "4P1/2", "5g7/2", "3D2.5", and "30[25]51/2" for l past the
/// letters S..Z. Throws ValidationError.
StateLabel parse_state(std::string_view text);
/// Canonical "4P1/2" form; "[l]" replaces the letter when l > 20.
std::string format_state(const StateLabel &state);

char orbital_letter(int l);

//==============================================================================
struct NuclearCharge {
  int z{1};
  friend auto operator<=>(const NuclearCharge &,
                          const NuclearCharge &) = default;
};

/// Z alpha, throwing DomainError unless z >= 1 and Z alpha < 1.
Real z_alpha(NuclearCharge z, const ConstantsSet &constants);

} // namespace seshift
