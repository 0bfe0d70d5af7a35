#include "doctest.h"
#include "models.hpp"
#include "oracles.hpp"
#include "seshift/reduction.hpp"
#include <cmath>
#include <random>

using namespace seshift;
using oracle::rel_diff;

namespace {

// Reference values quoted with m_e c^2/h rounded to 1.23559e20 Hz.
const ConstantsSet rounded_constants{7.2973525693e-3L, 1.23559e20L, "rounded"};
const ConstantsSet codata = models::codata2018();
const StateLabel p12(4, 1, 1);

Real model_f(const CoefficientSet &c, Real za, Real gse) {
  return c.a40->value() +
         za * za * (c.a61->value() * (-2 * std::log(za)) + gse);
}

} // namespace

TEST_CASE("prefactor against the hand oracle") {
  CHECK(rel_diff(prefactor(p12, {1}, rounded_constants),
                 12716605.127238052587L) < 1e-15L);
  CHECK(rel_diff(prefactor(StateLabel(2, 1, 1), {1}, rounded_constants),
                 101732841.01790442069L) < 1e-15L);
  CHECK(rel_diff(prefactor(p12, {1}, codata), 12716604.754864723433L) < 1e-15L);
  const StateLabel s1(1, 0, 1);
  for (int z = 1; z <= 68; ++z)
    CHECK(rel_diff(prefactor(s1, {2 * z}, codata) / prefactor(s1, {z}, codata),
                   16) < 1e-15L);
}

TEST_CASE("prefactor grows with Z and falls with n") {
  for (int z = 1; z < 137; ++z)
    CHECK(prefactor(p12, {z + 1}, codata) > prefactor(p12, {z}, codata));
  for (int n = 2; n < 12; ++n)
    CHECK(prefactor(StateLabel(n + 1, 1, 1), {20}, codata) <
          prefactor(StateLabel(n, 1, 1), {20}, codata));
}

TEST_CASE("f_to_energy / energy_to_f examples") {
  CHECK(f_to_energy({0, 0}, p12, {1}, codata) == UncertainValue(0, 0));
  const auto e = f_to_energy({-0.1104255L, 1.6e-7L}, p12, {1}, rounded_constants);
  CHECK(std::abs(e.value() / 1000 - -1404.240L) < 0.005L);
  CHECK(std::abs(e.sigma() / 1000 - 0.002L) < 0.0005L);
  CHECK(rel_diff(f_to_energy({1, 0}, p12, {1}, rounded_constants).value(),
                 12716605.127238052587L) < 1e-15L);

  CHECK(energy_to_f({0, 0}, p12, {1}, codata).value() == 0);
  CHECK(rel_diff(energy_to_f({-1403.5e3L, 0}, p12, {1}, codata).value(),
                 -0.11036750980745018349L) < 1e-12L);
  const auto back =
      energy_to_f(f_to_energy({0.5L, 0}, p12, {3}, codata), p12, {3}, codata);
  CHECK(rel_diff(back.value(), 0.5L) < 1e-13L);
}

TEST_CASE("extract_gse") {
  auto c = models::coefficients_4p12();
  c.a61 = UncertainValue(0, 0);
  for (int z : {1, 10, 50, 100})
    CHECK(extract_gse({c.a40->value(), 0}, {z}, c, codata).value() == 0);

  c = models::coefficients_4p12();
  for (int z : {5, 30, 90}) {
    const Real za = z * codata.alpha;
    const auto g = extract_gse({model_f(c, za, 7.5L), 0}, {z}, c, codata);
    CHECK(rel_diff(g.value(), 7.5L) < 1e-12L);
  }
}

TEST_CASE("extract_gse approaches the model limit as Z decreases") {
  auto c = models::coefficients_4p12();
  const Real limit = -0.3L;
  Real previous = INFINITY;
  for (int z = 40; z >= 5; z -= 5) {
    const Real za = z * codata.alpha;
    const Real gse = limit + 0.8L * za - 1.1L * za * za;
    const Real distance =
        std::abs(extract_gse({model_f(c, za, gse), 0}, {z}, c, codata).value() -
                 limit);
    CHECK(distance < previous);
    previous = distance;
  }
}

TEST_CASE("extract_gse7") {
  const auto c = models::coefficients_4p12();
  for (int z : {1, 20, 80}) {
    const Real za = z * codata.alpha;
    CHECK(std::abs(extract_gse7({model_f(c, za, c.a60->value()), 0}, {z}, c,
                                codata)
                       .value()) < 1e-9L);
  }
  const Real za = 30 * codata.alpha;
  const Real f = model_f(c, za, c.a60->value() + za * -2.25L);
  CHECK(rel_diff(extract_gse7({f, 0}, {30}, c, codata).value(), -2.25L) <
        1e-12L);
}

TEST_CASE("remainders are related by G_SE = A60 + Z alpha G_SE,7") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uf(-1, 1);
  std::uniform_int_distribution<int> uz(1, 110);
  const auto c = models::coefficients_4p12();
  for (int i = 0; i < 1000; ++i) {
    const UncertainValue f(uf(rng), 1e-6L);
    const NuclearCharge z{uz(rng)};
    const Real za = z_alpha(z, codata);
    const Real gse = extract_gse(f, z, c, codata).value();
    const Real gse7 = extract_gse7(f, z, c, codata).value();
    CHECK(std::abs(gse - c.a60->value() - za * gse7) <=
          1e-12L * std::max<Real>(1, std::abs(gse)));
    CHECK(extract_magnifier(f, z, c, codata) == extract_gse(f, z, c, codata));
  }
}

TEST_CASE("magnifier examples") {
  auto c = models::coefficients_4p12();
  c.a60 = UncertainValue(-1, 0);
  const Real za = 40 * codata.alpha;
  const Real f = model_f(c, za, -1 + za * 0.3L);
  const Real expected = -1 + za * 0.3L;
  CHECK(rel_diff(extract_magnifier({f, 0}, {40}, c, codata).value(), expected) <
        1e-12L);
  CHECK(rel_diff(extract_magnifier({f, 0}, {40}, c, rounded_constants).value(),
                 -0.9124317691684L) < 1e-3L);
  CHECK(rel_diff(extract_magnifier({model_f(c, za, -1), 0}, {40}, c, codata)
                     .value(),
                 -1) < 1e-12L);
}

TEST_CASE("S states and missing coefficients are rejected") {
  auto c = models::coefficients_4p12();
  c.state = StateLabel(4, 0, 1);
  CHECK_THROWS_AS(extract_gse({0.1L, 0}, {10}, c, codata), ValidationError);
  CHECK_THROWS_AS(extract_gse7({0.1L, 0}, {10}, c, codata), ValidationError);

  c = models::coefficients_4p12();
  c.a60.reset();
  CHECK_NOTHROW(extract_gse({0.1L, 0}, {10}, c, codata));
  CHECK_THROWS_AS(extract_gse7({0.1L, 0}, {10}, c, codata), MissingCoefficient);
  CHECK_THROWS_AS(truncated_estimate(p12, {1}, c, codata, Truncation::three_term),
                  MissingCoefficient);
  try {
    c.require(Coefficient::a60);
    FAIL("require should throw");
  } catch (const MissingCoefficient &e) {
    CHECK(e.which() == Coefficient::a60);
  }
}

TEST_CASE("reconstruct_f") {
  const auto c = models::coefficients_4p12();
  for (int z : {3, 25, 77}) {
    const Real za = z * codata.alpha;
    const auto f3 = reconstruct_f({0, 0}, Remainder::gse7, {z}, c, codata);
    CHECK(rel_diff(f3.value(), model_f(c, za, c.a60->value())) < 1e-13L);
  }
  // small Z alpha: F -> A40 + x^2 (A61 L + limit)
  const Real za = 1e-4L;
  const auto f = reconstruct_at({0.42L, 0}, Remainder::gse, za, c);
  CHECK(rel_diff(f.value(), model_f(c, za, 0.42L)) < 1e-15L);
}

TEST_CASE("round trips over the property domain") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> un(2, 12), uz(1, 110);
  std::uniform_real_distribution<double> ur(-100, 100);
  for (int i = 0; i < 2000; ++i) {
    const int n = un(rng);
    const StateLabel st(n, 1, 1);
    const NuclearCharge z{uz(rng)};
    const UncertainValue f(ur(rng), 1e-3L);
    const auto e = f_to_energy(f, st, z, codata);
    const auto back = energy_to_f(e, st, z, codata);
    CHECK(rel_diff(back.value(), f.value()) < 1e-13L);
    CHECK(rel_diff(back.sigma(), f.sigma()) < 1e-13L);

    auto c = models::coefficients_4p12();
    c.state = st;
    for (auto kind : {Remainder::gse, Remainder::gse7, Remainder::magnifier}) {
      const UncertainValue r(ur(rng), 0.5L);
      const auto rf = reconstruct_f(r, kind, z, c, codata);
      const auto rr = extract(kind, rf, z, c, codata);
      CHECK(rel_diff(rr.value(), r.value(), 1) < 1e-12L);
      CHECK(rel_diff(reconstruct_f(extract(kind, f, z, c, codata), kind, z, c,
                                   codata)
                         .value(),
                     f.value(), 1) < 1e-13L);
    }
  }
}

TEST_CASE("extraction sigmas are linear in the F sigma") {
  const auto c = models::coefficients_4p12();
  const Real za = 20 * codata.alpha;
  for (Real s : {1e-9L, 1e-6L, 1e-3L}) {
    const auto g = extract_gse7({-0.1L, s}, {20}, c, codata);
    CHECK(rel_diff(g.sigma(), s / (za * za * za)) < 1e-12L);
    CHECK(g.value() == extract_gse7({-0.1L, 0}, {20}, c, codata).value());
  }
}

TEST_CASE("truncated estimates") {
  const auto c = models::coefficients_4p12();
  const auto two =
      truncated_estimate_breakdown(p12, {1}, c, codata, Truncation::two_term);
  CHECK(rel_diff(two.central_hz, -1403450.6967408834744L) < 1e-12L);
  CHECK(rel_diff(two.bound_sigma_hz, 677.17642810053044946L) < 1e-12L);
  const auto three =
      truncated_estimate_breakdown(p12, {1}, c, codata, Truncation::three_term);
  CHECK(rel_diff(three.central_hz, -1404260.3885660051942L) < 1e-9L);
  CHECK(rel_diff(three.bound_sigma_hz, 4.9415951474688025941L) < 1e-12L);

  // bound term ratio two/three = 1 / (Z alpha)
  for (int z : {1, 10, 50}) {
    const auto a =
        truncated_estimate_breakdown(p12, {z}, c, codata, Truncation::two_term);
    const auto b = truncated_estimate_breakdown(p12, {z}, c, codata,
                                                Truncation::three_term);
    CHECK(rel_diff(b.bound_sigma_hz / a.bound_sigma_hz, z * codata.alpha) <
          1e-15L);
  }

  const auto zero =
      truncated_estimate(p12, {1}, c, codata, Truncation::two_term, 0);
  CHECK(zero.sigma() == 0);
  CHECK_THROWS_AS(
      truncated_estimate(p12, {1}, c, codata, Truncation::two_term, -1),
      ValidationError);
}

TEST_CASE("remainder and truncation names") {
  CHECK(parse_remainder("gse7") == Remainder::gse7);
  CHECK(to_string(Remainder::magnifier) == "magnifier");
  CHECK(parse_truncation("three_term") == Truncation::three_term);
  CHECK_THROWS_AS(parse_remainder("g"), ValidationError);
  CHECK_THROWS_AS(parse_truncation("four_term"), ValidationError);
}
