#include "seshift/quantities.hpp"
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <tuple>

namespace seshift {

//==============================================================================
UncertainValue::UncertainValue(Real value, Real sigma)
    : m_value(value), m_sigma(sigma) {
  if (!std::isfinite(value) || !std::isfinite(sigma))
    throw ValidationError("uncertain value must be finite");
  if (sigma < 0)
    throw ValidationError(fmt::format("negative uncertainty {}",
                                      static_cast<double>(sigma)));
}

UncertainValue scale(const UncertainValue &u, Real c) {
  return {c * u.value(), std::abs(c) * u.sigma()};
}

UncertainValue add_quadrature(const UncertainValue &a,
                              const UncertainValue &b) {
  return {a.value() + b.value(), std::hypot(a.sigma(), b.sigma())};
}

//==============================================================================
namespace {

Real pow10(int e) { return std::pow(Real{10}, static_cast<Real>(e)); }

// Removes a leading '-' from strings such as "-0.000".
std::string strip_negative_zero(std::string s) {
  if (!s.empty() && s.front() == '-' &&
      s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

} // namespace

std::string format_full(Real x) {
  return fmt::format("{:.17g}", x);
}

std::string format_parenthesis(const UncertainValue &u,
                               std::string_view unit_label,
                               const FormatOptions &options) {
  std::string body;
  if (u.exact()) {
    body = fmt::format("{}", static_cast<double>(u.value()));
    if (body.find_first_of(".en") == std::string::npos)
      body += ".0";
  } else {
    // Round sigma in decimal, not by dividing by powers of ten: 0.002 must
    // read as leading digit 2, not 1.999...
    const auto sci = [&](int sig) {
      const auto text =
          fmt::format("{:.{}e}", static_cast<double>(u.sigma()), sig - 1);
      const auto e = text.find('e');
      std::string mantissa = text.substr(0, e);
      mantissa.erase(std::remove(mantissa.begin(), mantissa.end(), '.'),
                     mantissa.end());
      return std::pair{std::stoll(mantissa), std::stoi(text.substr(e + 1))};
    };
    const bool two = options.two_digits_on_leading_one;
    long long digits = 0;
    int exponent = 0;
    std::tie(digits, exponent) = sci(2);
    int decimals = 0;
    if (two && digits / 10 == 1) {
      decimals = 1 - exponent;
    } else {
      std::tie(digits, exponent) = sci(1);
      // 0.096 rounds to 0.1, which has a leading one again
      if (two && digits == 1)
        digits = 10, decimals = 1 - exponent;
      else
        decimals = -exponent;
    }

    std::string value_text;
    if (decimals >= 0) {
      value_text = fmt::format("{:.{}f}", static_cast<double>(u.value()),
                               decimals);
    } else {
      const Real step = pow10(-decimals);
      value_text = fmt::format(
          "{:.0f}", static_cast<double>(std::round(u.value() / step) * step));
      digits *= static_cast<long long>(step);
    }
    body = fmt::format("{}({})", strip_negative_zero(value_text), digits);
  }
  if (!unit_label.empty())
    body += fmt::format(" {}", unit_label);
  return body;
}

//==============================================================================
void ConstantsSet::validate() const {
  if (!(alpha > 0 && alpha < Real{0.01}))
    throw ValidationError(
        fmt::format("alpha = {} outside (0, 0.01)", static_cast<double>(alpha)));
  if (!(electron_rest_frequency > 0) || !std::isfinite(electron_rest_frequency))
    throw ValidationError("electron rest frequency must be positive");
}

//==============================================================================
namespace {
constexpr std::string_view orbital_letters = "SPDFGHIKLMNOQRTUVWXYZ";
}

char orbital_letter(int l) {
  if (l < 0 || l >= static_cast<int>(orbital_letters.size()))
    throw ValidationError(fmt::format("no orbital letter for l = {}", l));
  return orbital_letters[static_cast<std::size_t>(l)];
}

StateLabel::StateLabel(int n, int l, int j2) : m_n(n), m_l(l), m_j2(j2) {
  if (n < 1)
    throw ValidationError(fmt::format("principal quantum number {} < 1", n));
  if (l < 0 || l > n - 1)
    throw ValidationError(fmt::format("l = {} not allowed for n = {}", l, n));
  if (j2 < 1 || std::abs(2 * l - j2) != 1)
    throw ValidationError(
        fmt::format("j = {}/2 incompatible with l = {}", j2, l));
}

int StateLabel::kappa() const {
  // j = l + 1/2 -> kappa = -(l + 1); j = l - 1/2 -> kappa = l
  return m_j2 == 2 * m_l + 1 ? -(m_l + 1) : m_l;
}

StateLabel parse_state(std::string_view text) {
  const auto fail = [&](std::string_view why) {
    return ValidationError(
        fmt::format("bad state label '{}': {}", text, why));
  };

  std::size_t pos = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
    ++pos;
  if (pos == 0)
    throw fail("missing principal quantum number");
  int n = 0;
  if (std::from_chars(text.data(), text.data() + pos, n).ec != std::errc{})
    throw fail("principal quantum number out of range");
  if (pos >= text.size())
    throw fail("missing orbital letter");

  std::size_t l = 0;
  if (text[pos] == '[') {
    // numeric form for l beyond the letter table, e.g. "30[25]51/2"
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos)
      throw fail("unterminated [l]");
    const auto digits = text.substr(pos + 1, close - pos - 1);
    const auto r = std::from_chars(digits.data(), digits.data() + digits.size(), l);
    if (digits.empty() || r.ec != std::errc{} ||
        r.ptr != digits.data() + digits.size())
      throw fail("bad [l]");
    pos = close + 1;
  } else {
    const char letter =
        static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
    l = orbital_letters.find(letter);
    if (l == std::string_view::npos)
      throw fail("unknown orbital letter");
    ++pos;
  }

  const auto j_text = text.substr(pos);
  int j2 = 0;
  if (const auto slash = j_text.find('/'); slash != std::string_view::npos) {
    int numerator = 0;
    const auto num = j_text.substr(0, slash);
    const auto den = j_text.substr(slash + 1);
    const auto r = std::from_chars(num.data(), num.data() + num.size(), numerator);
    if (num.empty() || r.ec != std::errc{} || r.ptr != num.data() + num.size() ||
        den != "2")
      throw fail("j must be written k/2");
    j2 = numerator;
  } else {
    // half-integer decimal, e.g. "2.5"
    const auto dot = j_text.find('.');
    if (dot == std::string_view::npos || j_text.substr(dot + 1) != "5")
      throw fail("j must be a half-integer");
    int whole = 0;
    const auto head = j_text.substr(0, dot);
    const auto r = std::from_chars(head.data(), head.data() + head.size(), whole);
    if (head.empty() || r.ec != std::errc{} || r.ptr != head.data() + head.size())
      throw fail("j must be a half-integer");
    j2 = 2 * whole + 1;
  }

  try {
    return StateLabel(n, static_cast<int>(l), j2);
  } catch (const ValidationError &e) {
    throw fail(e.what());
  }
}

std::string format_state(const StateLabel &state) {
  if (state.l() >= static_cast<int>(orbital_letters.size()))
    return fmt::format("{}[{}]{}/2", state.n(), state.l(), state.j2());
  return fmt::format("{}{}{}/2", state.n(), orbital_letter(state.l()),
                     state.j2());
}

Real z_alpha(NuclearCharge z, const ConstantsSet &constants) {
  if (z.z < 1)
    throw DomainError(fmt::format("nuclear charge {} < 1", z.z));
  const Real za = static_cast<Real>(z.z) * constants.alpha;
  if (!(za < 1))
    throw DomainError(fmt::format("Z alpha = {} >= 1 for Z = {}",
                                  static_cast<double>(za), z.z));
  return za;
}

} // namespace seshift
