#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace belltol {

enum class MeasType { projective, generalized };

std::string to_string(MeasType m);
// Accepts "projective"/"proj" and "generalized"/"povm"; throws ValidationError.
MeasType parse_meas_type(std::string_view text);

// Settings per site, or the overall regime in which every finite number of
// settings is allowed.
struct SettingRegime {
  bool overall = false;
  std::size_t s = 2;

  static SettingRegime per_site(std::size_t settings) { return {false, settings}; }
  static SettingRegime all() { return {true, 0}; }
  // "2", "3", ... or "inf"
  std::string settings_label() const;
  std::string label() const { return overall ? "overall" : "per-setting"; }
  bool operator==(const SettingRegime&) const = default;
};

struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string active_term;  // which expression fixed the bound (empty when exact or not applicable)
};

struct ToleranceReport {
  std::string family;  // generic, ghz, ghz-qubit, dicke, w
  std::size_t d = 2;
  std::size_t n = 2;
  std::optional<std::size_t> k;
  SettingRegime settings;
  MeasType meas = MeasType::projective;
  BoundInterval upsilon;
  BoundInterval tolerance;
  BoundInterval max_noise;
  std::optional<double> asymptotic_note;
  std::vector<std::string> notes;

  // "any" in the overall regime, where the bounds hold for both measurement types.
  std::string meas_label() const;
};

// 2 / (1 + upsilon); throws DomainError for upsilon < 1.
double tolerance_from_violation(double upsilon);
// 1 - t; throws DomainError unless t is in (0, 1].
double max_tolerable_noise(double t);

struct ActiveValue {
  double value = 0.0;
  std::string term;
};

// Upper bounds on the maximal violation by an arbitrary d^n-dimensional
// state. Ties between min-terms resolve to the first listed term.
ActiveValue generic_upsilon_upper(std::size_t d, std::size_t n, SettingRegime regime, MeasType meas);
ToleranceReport generic_noise_bounds(std::size_t d, std::size_t n, SettingRegime regime, MeasType meas);

// Sharper upper bounds for the n-qudit GHZ state.
ActiveValue ghz_upsilon_upper(std::size_t d, std::size_t n, SettingRegime regime, MeasType meas);
ToleranceReport ghz_noise_bounds(std::size_t d, std::size_t n, SettingRegime regime, MeasType meas);

struct GhzQubitExact {
  ToleranceReport two_setting;  // projective, Upsilon = 2^((n-1)/2) exactly
  ToleranceReport overall;
};
GhzQubitExact ghz_qubit_exact(std::size_t n);

// 2^(-(n-3)/2), the large-n form of 2 / (1 + 2^((n-1)/2)).
double ghz_qubit_asymptotic(std::size_t n);

// Overall bounds for the n-qubit Dicke state with k excitations.
ToleranceReport dicke_bounds(std::size_t n, std::size_t k);
// dicke_bounds(n, 1) with the upper endpoint written as n / (n + 2^(n-2)(sqrt2 - 1)).
ToleranceReport w_bounds(std::size_t n);

struct DickeAsymptotic {
  double approx_threshold = 0.0;    // (4 sqrt2 / (sqrt2 - 1)) / sqrt(pi n)
  double exact_threshold = 0.0;     // 1 / (1 + 2^(n-2)(sqrt2 - 1) / C(n, n/2))
  double stirling_threshold = 0.0;  // exact form with C(n, n/2) replaced by its Stirling value
  double binomial_ratio = 0.0;      // C(n, n/2) / (2^n sqrt2 / sqrt(pi n))
};
// Requires even n >= 2; throws DomainError otherwise.
DickeAsymptotic dicke_half_asymptotic(std::size_t n);

// Exact binomial coefficient as a decimal string, and rounded to double.
std::string binomial_exact(std::size_t n, std::size_t k);
double binomial(std::size_t n, std::size_t k);

// Sweep table columns: d,N,S,meas_type,upsilon_lo,upsilon_hi,tol_lo,tol_hi,
// noise_lo,noise_hi,active_term,regime,family,k. Rows in the overall regime
// report meas_type "any".
void write_bounds_csv(std::ostream& os, std::span<const ToleranceReport> rows);

}  // namespace belltol
