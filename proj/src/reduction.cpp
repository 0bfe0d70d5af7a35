#include "seshift/reduction.hpp"
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace seshift {

std::string_view to_string(Coefficient c) {
  switch (c) {
  case Coefficient::a40:
    return "A40";
  case Coefficient::a61:
    return "A61";
  case Coefficient::a60:
    return "A60";
  case Coefficient::gse_limit:
    return "GSE0";
  }
  return "?";
}

MissingCoefficient::MissingCoefficient(Coefficient which,
                                       const std::string &state)
    : Error(fmt::format("coefficient {} is absent for {}", to_string(which),
                        state)),
      m_which(which) {}

const UncertainValue &CoefficientSet::require(Coefficient c) const {
  const std::optional<UncertainValue> *slot = nullptr;
  switch (c) {
  case Coefficient::a40:
    slot = &a40;
    break;
  case Coefficient::a61:
    slot = &a61;
    break;
  case Coefficient::a60:
    slot = &a60;
    break;
  case Coefficient::gse_limit:
    slot = &gse_limit;
    break;
  }
  if (!slot || !slot->has_value())
    throw MissingCoefficient(c, format_state(state));
  return **slot;
}

void FSeries::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].z.z < 1)
      throw ValidationError(
          fmt::format("sample {}: nuclear charge {} < 1", i, samples[i].z.z));
    if (i > 0 && samples[i].z.z <= samples[i - 1].z.z)
      throw ValidationError(fmt::format(
          "sample {}: Z = {} does not increase (previous Z = {})", i,
          samples[i].z.z, samples[i - 1].z.z));
  }
}

std::string_view to_string(Remainder r) {
  switch (r) {
  case Remainder::gse:
    return "gse";
  case Remainder::gse7:
    return "gse7";
  case Remainder::magnifier:
    return "magnifier";
  }
  return "?";
}

Remainder parse_remainder(std::string_view text) {
  if (text == "gse")
    return Remainder::gse;
  if (text == "gse7")
    return Remainder::gse7;
  if (text == "magnifier")
    return Remainder::magnifier;
  throw ValidationError(fmt::format("unknown remainder variable '{}'", text));
}

std::string_view to_string(Truncation t) {
  return t == Truncation::two_term ? "two_term" : "three_term";
}

Truncation parse_truncation(std::string_view text) {
  if (text == "two_term")
    return Truncation::two_term;
  if (text == "three_term")
    return Truncation::three_term;
  throw ValidationError(fmt::format("unknown truncation order '{}'", text));
}

//==============================================================================
Real prefactor(const StateLabel &state, NuclearCharge z,
               const ConstantsSet &constants) {
  const Real za = z_alpha(z, constants);
  const Real n = state.n();
  const Real za2 = za * za;
  return constants.alpha / std::numbers::pi_v<Real> * (za2 * za2) /
         (n * n * n) * constants.electron_rest_frequency;
}

UncertainValue f_to_energy(const UncertainValue &f, const StateLabel &state,
                           NuclearCharge z, const ConstantsSet &constants) {
  return scale(f, prefactor(state, z, constants));
}

UncertainValue energy_to_f(const UncertainValue &energy_hz,
                           const StateLabel &state, NuclearCharge z,
                           const ConstantsSet &constants) {
  const Real p = prefactor(state, z, constants);
  return {energy_hz.value() / p, energy_hz.sigma() / p};
}

//==============================================================================
namespace {

void require_non_s(const CoefficientSet &coeffs) {
  if (coeffs.state.is_s())
    throw ValidationError(
        fmt::format("{}: remainder expansion is only defined for non-S states",
                    format_state(coeffs.state)));
}

void check_za(Real za) {
  if (!(za > 0 && za < 1) || !std::isfinite(za))
    throw DomainError(fmt::format("Z alpha = {} outside (0, 1)",
                                  static_cast<double>(za)));
}

// ln[(Z alpha)^-2]
Real log_term(Real za) { return -2 * std::log(za); }

// (F - A40)/(Za)^2 - A61 L, shared by gse and magnifier
UncertainValue gse_at(const UncertainValue &f, Real za,
                      const CoefficientSet &coeffs) {
  const auto &a40 = coeffs.require(Coefficient::a40);
  const auto &a61 = coeffs.require(Coefficient::a61);
  const Real za2 = za * za;
  const Real ln = log_term(za);
  const Real value = (f.value() - a40.value()) / za2 - a61.value() * ln;
  const Real sigma = std::hypot(std::hypot(f.sigma(), a40.sigma()) / za2,
                                ln * a61.sigma());
  return {value, sigma};
}

UncertainValue gse7_at(const UncertainValue &f, Real za,
                       const CoefficientSet &coeffs) {
  const auto &a40 = coeffs.require(Coefficient::a40);
  const auto &a61 = coeffs.require(Coefficient::a61);
  const auto &a60 = coeffs.require(Coefficient::a60);
  const Real za2 = za * za;
  const Real za3 = za2 * za;
  const Real ln = log_term(za);
  const Real value =
      (f.value() - a40.value() - za2 * (a61.value() * ln + a60.value())) / za3;
  const Real sigma =
      std::hypot(std::hypot(f.sigma(), a40.sigma()) / za3,
                 std::hypot(ln * a61.sigma(), a60.sigma()) / za);
  return {value, sigma};
}

} // namespace

UncertainValue extract_at(Remainder kind, const UncertainValue &f, Real za,
                          const CoefficientSet &coeffs) {
  require_non_s(coeffs);
  check_za(za);
  switch (kind) {
  case Remainder::gse:
  case Remainder::magnifier:
    return gse_at(f, za, coeffs);
  case Remainder::gse7:
    return gse7_at(f, za, coeffs);
  }
  throw ValidationError("unknown remainder kind");
}

UncertainValue reconstruct_at(const UncertainValue &remainder, Remainder kind,
                              Real za, const CoefficientSet &coeffs) {
  require_non_s(coeffs);
  check_za(za);
  const auto &a40 = coeffs.require(Coefficient::a40);
  const auto &a61 = coeffs.require(Coefficient::a61);
  const Real za2 = za * za;
  const Real ln = log_term(za);

  if (kind == Remainder::gse7) {
    const auto &a60 = coeffs.require(Coefficient::a60);
    const Real za3 = za2 * za;
    const Real value = a40.value() +
                       za2 * (a61.value() * ln + a60.value()) +
                       za3 * remainder.value();
    const Real sigma = std::hypot(
        std::hypot(a40.sigma(), za3 * remainder.sigma()),
        za2 * std::hypot(ln * a61.sigma(), a60.sigma()));
    return {value, sigma};
  }

  const Real value =
      a40.value() + za2 * (a61.value() * ln + remainder.value());
  const Real sigma = std::hypot(
      a40.sigma(), za2 * std::hypot(ln * a61.sigma(), remainder.sigma()));
  return {value, sigma};
}

UncertainValue extract_gse(const UncertainValue &f, NuclearCharge z,
                           const CoefficientSet &coeffs,
                           const ConstantsSet &constants) {
  return extract_at(Remainder::gse, f, z_alpha(z, constants), coeffs);
}

UncertainValue extract_gse7(const UncertainValue &f, NuclearCharge z,
                            const CoefficientSet &coeffs,
                            const ConstantsSet &constants) {
  return extract_at(Remainder::gse7, f, z_alpha(z, constants), coeffs);
}

UncertainValue extract_magnifier(const UncertainValue &f, NuclearCharge z,
                                 const CoefficientSet &coeffs,
                                 const ConstantsSet &constants) {
  return extract_at(Remainder::magnifier, f, z_alpha(z, constants), coeffs);
}

UncertainValue extract(Remainder kind, const UncertainValue &f,
                       NuclearCharge z, const CoefficientSet &coeffs,
                       const ConstantsSet &constants) {
  return extract_at(kind, f, z_alpha(z, constants), coeffs);
}

UncertainValue reconstruct_f(const UncertainValue &remainder, Remainder kind,
                             NuclearCharge z, const CoefficientSet &coeffs,
                             const ConstantsSet &constants) {
  return reconstruct_at(remainder, kind, z_alpha(z, constants), coeffs);
}

//==============================================================================
TruncatedEstimate truncated_estimate_breakdown(const StateLabel &state,
                                               NuclearCharge z,
                                               const CoefficientSet &coeffs,
                                               const ConstantsSet &constants,
                                               Truncation order,
                                               Real remainder_bound) {
  if (!(remainder_bound >= 0) || !std::isfinite(remainder_bound))
    throw ValidationError("remainder bound must be finite and >= 0");
  require_non_s(coeffs);
  const auto &a40 = coeffs.require(Coefficient::a40);
  const auto &a61 = coeffs.require(Coefficient::a61);
  // checked before any arithmetic so a missing A60 is reported as such
  const UncertainValue *a60 = order == Truncation::three_term
                                  ? &coeffs.require(Coefficient::a60)
                                  : nullptr;

  const Real za = z_alpha(z, constants);
  const Real p = prefactor(state, z, constants);
  const Real za2 = za * za;
  const Real ln = log_term(za);

  // two_term keeps A40 and the A61 logarithm; three_term adds A60
  Real f = a40.value() + za2 * a61.value() * ln;
  Real coefficient_sigma = std::hypot(a40.sigma(), za2 * ln * a61.sigma());
  Real bound = za2 * remainder_bound;
  if (a60) {
    f += za2 * a60->value();
    coefficient_sigma = std::hypot(coefficient_sigma, za2 * a60->sigma());
    bound = za2 * za * remainder_bound;
  }

  TruncatedEstimate out;
  out.central_hz = p * f;
  out.bound_sigma_hz = p * bound;
  out.coefficient_sigma_hz = p * coefficient_sigma;
  out.energy_hz = UncertainValue(
      out.central_hz, std::hypot(out.bound_sigma_hz, out.coefficient_sigma_hz));
  return out;
}

UncertainValue truncated_estimate(const StateLabel &state, NuclearCharge z,
                                  const CoefficientSet &coeffs,
                                  const ConstantsSet &constants,
                                  Truncation order, Real remainder_bound) {
  return truncated_estimate_breakdown(state, z, coeffs, constants, order,
                                      remainder_bound)
      .energy_hz;
}

} // namespace seshift
