#include "models.hpp"
#include <cmath>

namespace models {

ConstantsSet codata2018() {
  return {7.2973525693e-3L, 1.2355899638189e20L, "CODATA 2018"};
}

CoefficientSet coefficients_4p12() {
  CoefficientSet c;
  c.state = StateLabel(4, 1, 1);
  c.a40 = UncertainValue(-0.11072680720255133L, 0);
  c.a61 = UncertainValue(Real{499} / 720, 0);
  c.a60 = UncertainValue(-1.195688142L, 0);
  c.gse_limit = c.a60;
  c.source = "test";
  return c;
}

Real Gse7Model::gse7(Real za) const { return g0 + za * (g1 + za * g2); }

Real Gse7Model::f(Real za) const {
  const Real l = -2 * std::log(za);
  return coeffs.a40->value() +
         za * za * (coeffs.a61->value() * l + coeffs.a60->value()) +
         za * za * za * gse7(za);
}

ModelTable tabulate(const Gse7Model &model, const std::vector<int> &zs,
                    const ConstantsSet &constants, Real rel_sigma,
                    std::mt19937_64 *rng) {
  ModelTable out;
  out.series.state = model.coeffs.state;
  out.series.constants_label = constants.label;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int z : zs) {
    const Real f = model.f(z * constants.alpha);
    const Real sigma = rel_sigma * std::abs(f);
    const Real error = rng ? sigma * static_cast<Real>(unit(*rng)) : Real{0};
    out.series.samples.push_back({NuclearCharge{z}, UncertainValue(f + error, sigma)});
  }
  out.f_at_1 = model.f(constants.alpha);
  const Real a = constants.alpha;
  const Real n = model.coeffs.state.n();
  out.energy_at_1 = a / std::acos(Real{-1}) * a * a * a * a / (n * n * n) *
                    constants.electron_rest_frequency * out.f_at_1;
  return out;
}

Gse7Model random_gse7_model(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Gse7Model m;
  m.coeffs = coefficients_4p12();
  m.g0 = u(rng);
  m.g1 = u(rng);
  m.g2 = u(rng);
  return m;
}

LimitDraw random_limit_series(std::mt19937_64 &rng,
                              const ConstantsSet &constants, Real sigma_f,
                              Real limit_sigma, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::uniform_real_distribution<double> lim(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  LimitDraw d;
  d.true_limit = lim(rng);
  const Real c1 = u(rng), c2 = u(rng), c3 = u(rng);

  d.coeffs.state = StateLabel(4, 2, 5);
  d.coeffs.a40 = UncertainValue(0.0388L, 0);
  d.coeffs.a61 = UncertainValue(Real{1344} / 120960, 0);
  d.coeffs.a60 = UncertainValue(d.true_limit, 0);
  d.coeffs.gse_limit = UncertainValue(
      d.true_limit + limit_sigma * static_cast<Real>(gauss(rng)), limit_sigma);
  d.coeffs.source = "synthetic limit model";

  d.series.state = d.coeffs.state;
  d.series.constants_label = constants.label;
  for (int z : charges(20, 60, 5)) {
    const Real x = z * constants.alpha;
    const Real gse = d.true_limit + x * (c1 + x * (c2 + x * c3));
    const Real f = d.coeffs.a40->value() +
                   x * x * (d.coeffs.a61->value() * (-2 * std::log(x)) + gse);
    d.series.samples.push_back(
        {NuclearCharge{z},
         UncertainValue(f + sigma_f * static_cast<Real>(gauss(rng)), sigma_f)});
  }
  return d;
}

FSeries shift_gse(const FSeries &series, Real shift,
                  const ConstantsSet &constants) {
  FSeries out = series;
  for (auto &s : out.samples) {
    const Real x = s.z.z * constants.alpha;
    s.f = UncertainValue(s.f.value() + x * x * shift, s.f.sigma());
  }
  return out;
}

std::vector<int> charges(int first, int last, int step) {
  std::vector<int> out;
  for (int z = first; z <= last; z += step)
    out.push_back(z);
  return out;
}

} // namespace models
