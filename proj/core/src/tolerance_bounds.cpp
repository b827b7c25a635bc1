#include "belltol/tolerance_bounds.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "belltol/errors.hpp"

namespace belltol {

namespace mp = boost::multiprecision;
using BigFloat = mp::cpp_bin_float_50;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_dn(std::size_t d, std::size_t n) {
  if (d < 2) throw DomainError("qudit dimension d must be at least 2");
  if (n < 2) throw DomainError("number of sites N must be at least 2");
}

void require_regime(SettingRegime regime) {
  if (!regime.overall && regime.s < 2) throw DomainError("settings per site S must be at least 2 (or inf)");
}

double pw(double base, double exponent) { return std::pow(base, exponent); }

ActiveValue min_of(std::initializer_list<ActiveValue> terms) {
  ActiveValue best = *terms.begin();
  for (const auto& t : terms)
    if (t.value < best.value) best = t;
  return best;
}

// Υ interval -> full report with T = 2/(1+Υ) and M = 1 - T endpoint-wise.
ToleranceReport make_report(std::string family, std::size_t d, std::size_t n, SettingRegime regime, MeasType meas,
                            const ActiveValue& ups_lo, const ActiveValue& ups_hi) {
  ToleranceReport r;
  r.family = std::move(family);
  r.d = d;
  r.n = n;
  r.settings = regime;
  r.meas = meas;
  r.upsilon = {ups_lo.value, ups_hi.value, ups_hi.term};
  r.tolerance = {tolerance_from_violation(ups_hi.value), tolerance_from_violation(ups_lo.value), ups_hi.term};
  r.max_noise = {1.0 - r.tolerance.upper, 1.0 - r.tolerance.lower, ups_hi.term};
  return r;
}

BigFloat binomial_big(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  mp::cpp_int c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return BigFloat(c);
}

// 2^(n-2)(sqrt2 - 1) / C(n, k)
BigFloat dicke_ratio(std::size_t n, std::size_t k) {
  const BigFloat sqrt2 = mp::sqrt(BigFloat(2));
  return mp::ldexp(BigFloat(1), static_cast<int>(n) - 2) * (sqrt2 - 1) / binomial_big(n, k);
}

}  // namespace

std::string to_string(MeasType m) { return m == MeasType::projective ? "projective" : "generalized"; }

MeasType parse_meas_type(std::string_view text) {
  if (text == "projective" || text == "proj") return MeasType::projective;
  if (text == "generalized" || text == "povm") return MeasType::generalized;
  throw ValidationError("unknown measurement type '" + std::string(text) + "' (expected projective or generalized)");
}

std::string SettingRegime::settings_label() const { return overall ? "inf" : std::to_string(s); }

std::string ToleranceReport::meas_label() const { return settings.overall ? "any" : to_string(meas); }

double tolerance_from_violation(double upsilon) {
  if (!(upsilon >= 1.0)) throw DomainError("maximal violation must be at least 1");
  return 2.0 / (1.0 + upsilon);
}

double max_tolerable_noise(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("noise tolerance must lie in (0, 1]");
  return 1.0 - t;
}

ActiveValue generic_upsilon_upper(std::size_t d, std::size_t n, SettingRegime regime, MeasType meas) {
  require_dn(d, n);
  require_regime(regime);
  const double dd = static_cast<double>(d), nm1 = static_cast<double>(n - 1);
  if (regime.overall) return {pw(2 * dd - 1, nm1), "(2d-1)^(N-1)"};
  const std::size_t s = regime.s;
  const double ds = static_cast<double>(s);
  const ActiveValue mixed{pw(2.0 * static_cast<double>(std::min(d, s)) - 1, nm1), "(2min(d,S)-1)^(N-1)"};
  if (meas == MeasType::generalized) return mixed;
  if (s == 2) return min_of({{pw(dd, nm1 / 2), "d^((N-1)/2)"}, {pw(3, nm1), "3^(N-1)"}});
  return min_of({{pw(dd, ds * nm1 / 2), "d^(S(N-1)/2)"}, mixed});
}

ToleranceReport generic_noise_bounds(std::size_t d, std::size_t n, SettingRegime regime, MeasType meas) {
  const auto hi = generic_upsilon_upper(d, n, regime, meas);
  auto r = make_report("generic", d, n, regime, meas, {1.0, ""}, hi);
  if (!regime.overall && meas == MeasType::generalized)
    r.notes.push_back(d <= regime.s ? "d <= S: max-noise bound independent of S"
                                    : "d >= S: max-noise bound independent of d");
  return r;
}

ActiveValue ghz_upsilon_upper(std::size_t d, std::size_t n, SettingRegime regime, MeasType meas) {
  require_dn(d, n);
  require_regime(regime);
  const double dd = static_cast<double>(d), nm1 = static_cast<double>(n - 1);
  const ActiveValue overall{1.0 + pw(2, nm1) * (dd - 1), "1+2^(N-1)(d-1)"};
  if (regime.overall) return overall;
  const double ds = static_cast<double>(regime.s);
  const ActiveValue settings{pw(2 * ds - 1, nm1), "(2S-1)^(N-1)"};
  if (meas == MeasType::generalized) return min_of({settings, overall});
  if (regime.s == 2) return min_of({{pw(dd, nm1 / 2), "d^((N-1)/2)"}, {pw(3, nm1), "3^(N-1)"}, overall});
  return min_of({{pw(dd, ds * nm1 / 2), "d^(S(N-1)/2)"}, settings, overall});
}

ToleranceReport ghz_noise_bounds(std::size_t d, std::size_t n, SettingRegime regime, MeasType meas) {
  const auto hi = ghz_upsilon_upper(d, n, regime, meas);
  // For qubits the 2-setting projective violation is known exactly, and it
  // lower-bounds the overall violation as well.
  ActiveValue lo{1.0, ""};
  const bool qubit_exact = d == 2 && (regime.overall || (regime.s == 2 && meas == MeasType::projective));
  if (qubit_exact) lo = {pw(2, static_cast<double>(n - 1) / 2), "2^((N-1)/2)"};
  auto r = make_report("ghz", d, n, regime, meas, lo, hi);
  if (qubit_exact) r.asymptotic_note = ghz_qubit_asymptotic(n);
  if (d == 3 && n == 3 && !regime.overall && regime.s == 2 && meas == MeasType::projective)
    r.notes.push_back(
        "the worked value 2/3 quoted in the literature for d=3, N=3 disagrees with the min-expression, which "
        "evaluates to 1/2 (active term d^((N-1)/2))");
  return r;
}

GhzQubitExact ghz_qubit_exact(std::size_t n) {
  if (n < 2) throw DomainError("number of sites N must be at least 2");
  GhzQubitExact out{ghz_noise_bounds(2, n, SettingRegime::per_site(2), MeasType::projective),
                    ghz_noise_bounds(2, n, SettingRegime::all(), MeasType::projective)};
  out.two_setting.family = out.overall.family = "ghz-qubit";
  // Both endpoints coincide; use the closed forms directly.
  const double ups = pw(2, static_cast<double>(n - 1) / 2);
  out.two_setting.upsilon = {ups, ups, "2^((N-1)/2)"};
  out.two_setting.tolerance = {2 / (1 + ups), 2 / (1 + ups), "2^((N-1)/2)"};
  out.two_setting.max_noise = {(ups - 1) / (ups + 1), (ups - 1) / (ups + 1), "2^((N-1)/2)"};
  return out;
}

double ghz_qubit_asymptotic(std::size_t n) {
  return pw(2, -(static_cast<double>(n) - 3) / 2);
}

ToleranceReport dicke_bounds(std::size_t n, std::size_t k) {
  if (n < 2) throw DomainError("number of qubits N must be at least 2");
  if (k < 1 || k >= n) throw DomainError("Dicke excitation number k must satisfy 1 <= k <= N-1");
  const BigFloat ratio = dicke_ratio(n, k);
  const double ups_lo = static_cast<double>(1 + 2 * ratio);
  const double ups_hi = pw(3, static_cast<double>(n - 1));
  auto r = make_report("dicke", 2, n, SettingRegime::all(), MeasType::projective, {ups_lo, "dicke-inequality"},
                       {ups_hi, "3^(N-1)"});
  r.k = k;
  r.tolerance.upper = static_cast<double>(1 / (1 + ratio));
  r.max_noise.lower = 1.0 - r.tolerance.upper;
  if (n % 2 == 0 && 2 * k == n) r.asymptotic_note = dicke_half_asymptotic(n).approx_threshold;
  r.notes.push_back("upsilon lower endpoint is the quoted value of a Dicke-specific Bell inequality; not witnessed numerically");
  return r;
}

ToleranceReport w_bounds(std::size_t n) {
  auto r = dicke_bounds(n, 1);
  r.family = "w";
  const double dn = static_cast<double>(n);
  r.tolerance.upper = dn / (dn + pw(2, dn - 2) * (kSqrt2 - 1));
  r.max_noise.lower = 1.0 - r.tolerance.upper;
  return r;
}

DickeAsymptotic dicke_half_asymptotic(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw DomainError("the k = N/2 asymptotic requires an even N >= 2");
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  const BigFloat sqrt2 = mp::sqrt(BigFloat(2));
  const BigFloat bn(static_cast<unsigned long long>(n));
  const BigFloat stirling = mp::ldexp(BigFloat(1), static_cast<int>(n)) * sqrt2 / mp::sqrt(pi * bn);
  const BigFloat exact = binomial_big(n, n / 2);
  const BigFloat scale = mp::ldexp(BigFloat(1), static_cast<int>(n) - 2) * (sqrt2 - 1);
  DickeAsymptotic out;
  out.approx_threshold = static_cast<double>(4 * sqrt2 / (sqrt2 - 1) / mp::sqrt(pi * bn));
  out.exact_threshold = static_cast<double>(1 / (1 + scale / exact));
  out.stirling_threshold = static_cast<double>(1 / (1 + scale / stirling));
  out.binomial_ratio = static_cast<double>(exact / stirling);
  return out;
}

std::string binomial_exact(std::size_t n, std::size_t k) {
  if (k > n) return "0";
  if (k > n - k) k = n - k;
  mp::cpp_int c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c.str();
}

double binomial(std::size_t n, std::size_t k) { return static_cast<double>(binomial_big(n, k)); }

void write_bounds_csv(std::ostream& os, std::span<const ToleranceReport> rows) {
  os << "d,N,S,meas_type,upsilon_lo,upsilon_hi,tol_lo,tol_hi,noise_lo,noise_hi,active_term,regime,family,k\n";
  char buf[64];
  auto num = [&](double v) -> const char* {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
  };
  for (const auto& r : rows) {
    os << r.d << ',' << r.n << ',' << r.settings.settings_label() << ',' << r.meas_label() << ',';
    os << num(r.upsilon.lower) << ',';
    os << num(r.upsilon.upper) << ',';
    os << num(r.tolerance.lower) << ',';
    os << num(r.tolerance.upper) << ',';
    os << num(r.max_noise.lower) << ',';
    os << num(r.max_noise.upper) << ',';
    os << '"' << r.upsilon.active_term << "\"," << r.settings.label() << ',' << r.family << ',';
    if (r.k) os << *r.k;
    os << '\n';
  }
}

}  // namespace belltol
