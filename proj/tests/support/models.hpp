#pragma once
#include "seshift/reduction.hpp"
#include <random>
#include <vector>

// Synthetic reduced-self-energy models with known answers.
namespace models {

using namespace seshift;

/// CODATA 2018 alpha and m_e c^2/h, written out independently of data/.
ConstantsSet codata2018();

/// 4P1/2 coefficients as bundled (A40, A61 = 499/720, A60).
CoefficientSet coefficients_4p12();

/// F = A40 + x^2 (A61 ln x^-2 + A60) + x^3 (g0 + g1 x + g2 x^2), x = Z alpha.
struct Gse7Model {
  CoefficientSet coeffs;
  Real g0{0}, g1{0}, g2{0};

  Real gse7(Real za) const;
  Real f(Real za) const;
};

struct ModelTable {
  FSeries series;
  Real f_at_1{0};
  Real energy_at_1{0}; // Hz
};

/// Tabulates `model` on `charges` with sigma_F = rel_sigma |F|. When `rng` is
/// given, each value carries an error drawn uniformly from [-sigma, sigma].
ModelTable tabulate(const Gse7Model &model, const std::vector<int> &charges,
                    const ConstantsSet &constants, Real rel_sigma,
                    std::mt19937_64 *rng = nullptr);

/// 4P1/2 model with g0, g1, g2 ~ U[-3, 3].
Gse7Model random_gse7_model(std::mt19937_64 &rng);

/// G_SE(x) = limit + c1 x + c2 x^2 + c3 x^3 on a D-state background,
/// c_i ~ U[-spread, spread]; F carries Gaussian errors of standard deviation
/// sigma_f (absolute). The coefficient set holds the limit as A60 and as an
/// independently "computed" GSE0 = limit + N(0, limit_sigma).
struct LimitDraw {
  FSeries series;
  CoefficientSet coeffs;
  Real true_limit{0};
};

LimitDraw random_limit_series(std::mt19937_64 &rng,
                              const ConstantsSet &constants, Real sigma_f,
                              Real limit_sigma, double spread = 3);

/// Adds `shift` to G_SE at every node (F += x^2 shift).
FSeries shift_gse(const FSeries &series, Real shift,
                  const ConstantsSet &constants);

std::vector<int> charges(int first, int last, int step);

} // namespace models
