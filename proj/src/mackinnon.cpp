// Response-surface coefficients for asymptotic Dickey-Fuller p-values, MacKinnon (1994),
// Tables 3 and 4. Rows are N = 1..6.
#include <array>
#include <cmath>
#include <limits>

#include "tsecon/error.hpp"
#include "tsecon/stats.hpp"
#include "tsecon/unitroot.hpp"

namespace tsecon {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Surface {
  std::array<double, 6> tau_star;
  std::array<double, 6> tau_min;
  std::array<double, 6> tau_max;
  std::array<std::array<double, 3>, 6> small;  // cubic in tau, highest term scaled 1e-2
  std::array<std::array<double, 4>, 6> large;  // quartic, scaled 1, 1e-1, 1e-1, 1e-2
};

constexpr Surface kNone{
    {-1.04, -1.53, -2.68, -3.09, -3.07, -3.77},
    {-19.04, -19.62, -21.21, -23.25, -21.63, -25.74},
    {kInf, 1.51, 0.86, 0.88, 1.05, 1.24},
    {{{0.6344, 1.2378, 3.2496},
      {1.9129, 1.3857, 3.5322},
      {2.7648, 1.4502, 3.4186},
      {3.4336, 1.4835, 3.19},
      {4.0999, 1.5533, 3.59},
      {4.5388, 1.5344, 2.9807}}},
    {{{0.4797, 9.3557, -0.6999, 3.3066},
      {1.5578, 8.558, -2.083, -3.3549},
      {2.2268, 6.8093, -3.2362, -5.4448},
      {2.7654, 6.4502, -3.0811, -4.4946},
      {3.2684, 6.8051, -2.6778, -3.4972},
      {3.7268, 7.167, -2.3648, -2.8288}}}};

constexpr Surface kConstant{
    {-1.61, -2.62, -3.13, -3.47, -3.78, -3.93},
    {-18.83, -18.86, -23.48, -28.07, -25.96, -23.27},
    {2.74, 0.92, 0.55, 0.61, 0.79, 1.0},
    {{{2.1659, 1.4412, 3.8269},
      {2.92, 1.5012, 3.9796},
      {3.4699, 1.4856, 3.164},
      {3.9673, 1.4777, 2.6315},
      {4.5509, 1.5338, 2.9545},
      {5.1399, 1.6036, 3.4445}}},
    {{{1.7339, 9.3202, -1.2745, -1.0368},
      {2.1945, 6.4695, -2.9198, -4.2377},
      {2.5893, 4.5168, -3.6529, -5.0074},
      {3.0387, 4.5452, -3.3666, -4.1921},
      {3.5049, 5.2098, -2.9158, -3.3468},
      {3.9489, 5.8933, -2.5359, -2.721}}}};

constexpr Surface kTrend{
    {-2.89, -3.19, -3.50, -3.65, -3.80, -4.36},
    {-16.18, -21.15, -25.37, -26.63, -26.53, -26.18},
    {0.7, 0.63, 0.71, 0.93, 1.19, 1.42},
    {{{3.2512, 1.6047, 4.9588},
      {3.6646, 1.5419, 3.6448},
      {4.0983, 1.5173, 2.9898},
      {4.5844, 1.5338, 2.8796},
      {5.0722, 1.5634, 2.9472},
      {5.53, 1.5914, 3.0392}}},
    {{{2.5261, 6.1654, -3.7956, -6.0285},
      {2.85, 5.272, -3.6622, -5.1695},
      {3.221, 5.255, -3.2685, -4.1501},
      {3.652, 5.9758, -2.7483, -3.2081},
      {4.0712, 6.6428, -2.3464, -2.546},
      {4.4735, 7.1757, -2.0681, -2.1196}}}};

const Surface& surface(Deterministic d) {
  switch (d) {
    case Deterministic::none: return kNone;
    case Deterministic::constant: return kConstant;
    case Deterministic::constant_and_trend: return kTrend;
  }
  return kConstant;
}

}  // namespace

double mackinnon_p(double tau, Deterministic deterministic, int n_vars) {
  if (n_vars < 1 || n_vars > 6) throw SpecError("MacKinnon surfaces cover N = 1..6 variables");
  const Surface& s = surface(deterministic);
  const auto i = static_cast<std::size_t>(n_vars - 1);
  if (tau > s.tau_max[i]) return 1.0;
  if (tau < s.tau_min[i]) return 0.0;
  double z = 0.0;
  if (tau <= s.tau_star[i]) {
    const auto& c = s.small[i];
    z = c[0] + c[1] * tau + c[2] * 1e-2 * tau * tau;
  } else {
    const auto& c = s.large[i];
    z = c[0] + c[1] * 1e-1 * tau + c[2] * 1e-1 * tau * tau + c[3] * 1e-2 * tau * tau * tau;
  }
  return stats::normal_cdf(z);
}

}  // namespace tsecon
