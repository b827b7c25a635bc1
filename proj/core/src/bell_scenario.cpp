#include "belltol/bell_scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "belltol/errors.hpp"

namespace belltol {

std::vector<double> default_outcome_values(std::size_t count) {
  if (count == 0) throw ValidationError("outcome grid: at least one outcome required");
  if (count == 1) return {1.0};
  std::vector<double> v(count);
  for (std::size_t k = 0; k < count; ++k)
    v[k] = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(count - 1);
  v.back() = 1.0;
  return v;
}

Scenario::Scenario(OutcomeTable outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw ValidationError("scenario: at least one party required");
  joint_settings_ = 1;
  for (std::size_t n = 0; n < outcomes_.size(); ++n) {
    if (outcomes_[n].empty())
      throw ValidationError("scenario: party " + std::to_string(n) + " has no settings");
    for (std::size_t s = 0; s < outcomes_[n].size(); ++s) {
      const auto& vals = outcomes_[n][s];
      if (vals.empty())
        throw ValidationError("scenario: party " + std::to_string(n) + " setting " +
                              std::to_string(s) + " has no outcomes");
      for (double v : vals)
        if (!(v >= -1.0 && v <= 1.0))
          throw ValidationError("scenario: outcome value outside [-1, 1]");
    }
    joint_settings_ *= outcomes_[n].size();
  }
}

Scenario Scenario::uniform(std::size_t parties, std::size_t settings, std::size_t outcomes) {
  const std::vector<std::size_t> counts(parties, settings);
  return from_counts(counts, outcomes);
}

Scenario Scenario::from_counts(std::span<const std::size_t> settings_per_party, std::size_t outcomes) {
  OutcomeTable t;
  const auto grid = default_outcome_values(outcomes);
  for (std::size_t s : settings_per_party) t.emplace_back(s, grid);
  return Scenario(std::move(t));
}

std::vector<std::size_t> Scenario::decode_joint_setting(std::size_t index) const {
  if (index >= joint_settings_) throw ValidationError("joint setting index out of range");
  std::vector<std::size_t> s(parties());
  for (std::size_t n = parties(); n-- > 0;) {
    s[n] = index % settings(n);
    index /= settings(n);
  }
  return s;
}

std::size_t Scenario::encode_joint_setting(std::span<const std::size_t> s) const {
  if (s.size() != parties()) throw ValidationError("joint setting: one setting per party required");
  std::size_t idx = 0;
  for (std::size_t n = 0; n < parties(); ++n) {
    if (s[n] >= settings(n))
      throw ValidationError("joint setting: setting " + std::to_string(s[n]) + " invalid for party " +
                            std::to_string(n));
    idx = idx * settings(n) + s[n];
  }
  return idx;
}

std::size_t Scenario::table_size(std::size_t joint_setting) const {
  const auto s = decode_joint_setting(joint_setting);
  std::size_t size = 1;
  for (std::size_t n = 0; n < parties(); ++n) size *= outcome_count(n, s[n]);
  return size;
}

std::size_t Scenario::encode_outcome(std::size_t joint_setting, std::span<const std::size_t> o) const {
  const auto s = decode_joint_setting(joint_setting);
  std::size_t idx = 0;
  for (std::size_t n = 0; n < parties(); ++n) idx = idx * outcome_count(n, s[n]) + o[n];
  return idx;
}

std::vector<std::size_t> Scenario::decode_outcome(std::size_t joint_setting, std::size_t index) const {
  const auto s = decode_joint_setting(joint_setting);
  std::vector<std::size_t> o(parties());
  for (std::size_t n = parties(); n-- > 0;) {
    const std::size_t m = outcome_count(n, s[n]);
    o[n] = index % m;
    index /= m;
  }
  return o;
}

bool Scenario::same_shape(const Scenario& other) const {
  if (parties() != other.parties()) return false;
  for (std::size_t n = 0; n < parties(); ++n) {
    if (settings(n) != other.settings(n)) return false;
    for (std::size_t s = 0; s < settings(n); ++s)
      if (outcome_count(n, s) != other.outcome_count(n, s)) return false;
  }
  return true;
}

BellFunctional::BellFunctional(Scenario scenario, std::vector<std::vector<double>> coeffs, std::string name)
    : scenario_(std::move(scenario)), coeffs_(std::move(coeffs)), name_(std::move(name)) {
  if (coeffs_.size() != scenario_.joint_setting_count())
    throw ValidationError("functional: expected " + std::to_string(scenario_.joint_setting_count()) +
                          " coefficient tables, got " + std::to_string(coeffs_.size()));
  for (std::size_t js = 0; js < coeffs_.size(); ++js) {
    if (coeffs_[js].size() != scenario_.table_size(js))
      throw ValidationError("functional: table " + std::to_string(js) + " has the wrong size");
    for (double c : coeffs_[js])
      if (!std::isfinite(c)) throw ValidationError("functional: non-finite coefficient");
  }
}

BellFunctional BellFunctional::scaled(double factor) const {
  auto c = coeffs_;
  for (auto& t : c)
    for (auto& x : t) x *= factor;
  return BellFunctional(scenario_, std::move(c), name_);
}

BellFunctional BellFunctional::renamed(std::string name) const {
  BellFunctional f = *this;
  f.name_ = std::move(name);
  return f;
}

std::uint64_t strategy_count(const Scenario& sc) {
  std::uint64_t count = 1;
  for (std::size_t n = 0; n < sc.parties(); ++n)
    for (std::size_t s = 0; s < sc.settings(n); ++s) {
      const std::uint64_t m = sc.outcome_count(n, s);
      if (count > std::numeric_limits<std::uint64_t>::max() / m) return std::numeric_limits<std::uint64_t>::max();
      count *= m;
    }
  return count;
}

StrategyRange::StrategyRange(const Scenario& sc, std::uint64_t cap) {
  count_ = strategy_count(sc);
  if (count_ > cap)
    throw ResourceLimitError("enumeration infeasible: " +
                             (count_ == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                  : std::to_string(count_)) +
                             " deterministic strategies exceed the cap " + std::to_string(cap));
  for (std::size_t n = 0; n < sc.parties(); ++n) {
    settings_per_party_.push_back(sc.settings(n));
    for (std::size_t s = 0; s < sc.settings(n); ++s) radix_.push_back(sc.outcome_count(n, s));
  }
}

std::vector<std::size_t> StrategyRange::digits_at(std::uint64_t index) const {
  std::vector<std::size_t> flat(radix_.size());
  for (std::size_t k = radix_.size(); k-- > 0;) {
    flat[k] = static_cast<std::size_t>(index % radix_[k]);
    index /= radix_[k];
  }
  return flat;
}

DeterministicStrategy StrategyRange::from_digits(const std::vector<std::size_t>& flat) const {
  DeterministicStrategy st;
  std::size_t k = 0;
  for (std::size_t s : settings_per_party_) {
    st.choice.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(k),
                           flat.begin() + static_cast<std::ptrdiff_t>(k + s));
    k += s;
  }
  return st;
}

DeterministicStrategy StrategyRange::at(std::uint64_t index) const {
  if (index >= count_) throw ValidationError("strategy index out of range");
  return from_digits(digits_at(index));
}

StrategyRange::iterator::iterator(const StrategyRange* range, std::uint64_t index)
    : range_(range), index_(std::min(index, range->count_)) {
  if (index_ < range_->count_) {
    digits_ = range_->digits_at(index_);
    current_ = range_->from_digits(digits_);
  }
}

StrategyRange::iterator& StrategyRange::iterator::operator++() {
  if (++index_ >= range_->count_) return *this;
  for (std::size_t k = digits_.size(); k-- > 0;) {
    if (++digits_[k] < range_->radix_[k]) break;
    digits_[k] = 0;
  }
  current_ = range_->from_digits(digits_);
  return *this;
}

namespace {

// Per joint setting, the outcome-index strides and the (party, setting) pairs
// it reads; strategy values then cost one pass over the settings.
struct CompiledFunctional {
  std::vector<std::vector<std::size_t>> setting;  // [js][party]
  std::vector<std::vector<std::size_t>> stride;   // [js][party]
  const BellFunctional* f;

  explicit CompiledFunctional(const BellFunctional& fn) : f(&fn) {
    const auto& sc = fn.scenario();
    for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
      auto s = sc.decode_joint_setting(js);
      std::vector<std::size_t> st(sc.parties());
      std::size_t acc = 1;
      for (std::size_t n = sc.parties(); n-- > 0;) {
        st[n] = acc;
        acc *= sc.outcome_count(n, s[n]);
      }
      setting.push_back(std::move(s));
      stride.push_back(std::move(st));
    }
  }

  double value(const DeterministicStrategy& st) const {
    double total = 0.0;
    for (std::size_t js = 0; js < setting.size(); ++js) {
      std::size_t idx = 0;
      for (std::size_t n = 0; n < setting[js].size(); ++n) idx += st.choice[n][setting[js][n]] * stride[js][n];
      total += f->coeffs()[js][idx];
    }
    return total;
  }
};

}  // namespace

double strategy_value(const BellFunctional& f, const DeterministicStrategy& strategy) {
  const auto& sc = f.scenario();
  if (strategy.choice.size() != sc.parties()) throw ValidationError("strategy: wrong number of parties");
  for (std::size_t n = 0; n < sc.parties(); ++n) {
    if (strategy.choice[n].size() != sc.settings(n)) throw ValidationError("strategy: wrong number of settings");
    for (std::size_t s = 0; s < sc.settings(n); ++s)
      if (strategy.choice[n][s] >= sc.outcome_count(n, s)) throw ValidationError("strategy: outcome out of range");
  }
  return CompiledFunctional(f).value(strategy);
}

LhvBounds lhv_bounds(const BellFunctional& f, const EnumerationOptions& options) {
  const StrategyRange range(f.scenario(), options.cap);
  const CompiledFunctional compiled(f);
  const std::uint64_t total = range.size();
  const std::size_t workers =
      static_cast<std::size_t>(std::clamp<std::uint64_t>(options.threads, 1, std::max<std::uint64_t>(total, 1)));

  struct Partial {
    double sup = -std::numeric_limits<double>::infinity();
    double inf = std::numeric_limits<double>::infinity();
  };
  std::vector<Partial> partial(workers);
  auto scan = [&](std::size_t w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    Partial p;
    auto it = range.begin_at(lo);
    for (std::uint64_t i = lo; i < hi; ++i, ++it) {
      const double v = compiled.value(*it);
      p.sup = std::max(p.sup, v);
      p.inf = std::min(p.inf, v);
    }
    partial[w] = p;
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }
  LhvBounds b;
  b.sup = -std::numeric_limits<double>::infinity();
  b.inf = std::numeric_limits<double>::infinity();
  for (const auto& p : partial) {
    b.sup = std::max(b.sup, p.sup);
    b.inf = std::min(b.inf, p.inf);
  }
  b.b_lhv = std::max(std::abs(b.sup), std::abs(b.inf));
  return b;
}

BellFunctional correlation_functional(const Scenario& sc, const std::map<std::vector<std::size_t>, double>& terms,
                                      std::string name) {
  std::vector<std::vector<double>> coeffs;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) coeffs.emplace_back(sc.table_size(js), 0.0);
  for (const auto& [settings, c] : terms) {
    const std::size_t js = sc.encode_joint_setting(settings);
    for (std::size_t o = 0; o < coeffs[js].size(); ++o) {
      const auto outs = sc.decode_outcome(js, o);
      double prod = c;
      for (std::size_t n = 0; n < sc.parties(); ++n) prod *= sc.outcome_value(n, settings[n], outs[n]);
      coeffs[js][o] += prod;
    }
  }
  return BellFunctional(sc, std::move(coeffs), std::move(name));
}

BellFunctional chsh() {
  const auto sc = Scenario::uniform(2, 2, 2);
  return correlation_functional(sc, {{{0, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 0}, 1.0}, {{1, 1}, -1.0}}, "chsh");
}

BellFunctional chsh_on_pair(std::size_t n, std::size_t i, std::size_t j) {
  if (n < 2 || i >= n || j >= n || i == j) throw DomainError("chsh_on_pair: invalid party pair");
  std::vector<std::size_t> counts(n, 1);
  counts[i] = counts[j] = 2;
  const auto sc = Scenario::from_counts(counts, 2);
  // Ignored parties still answer +-1; a table constant in their outcome is the
  // correlator of the pair alone.
  std::vector<std::vector<double>> coeffs;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    const auto s = sc.decode_joint_setting(js);
    const double c = (s[i] == 1 && s[j] == 1) ? -1.0 : 1.0;
    std::vector<double> table(sc.table_size(js));
    for (std::size_t o = 0; o < table.size(); ++o) {
      const auto outs = sc.decode_outcome(js, o);
      table[o] = c * sc.outcome_value(i, s[i], outs[i]) * sc.outcome_value(j, s[j], outs[j]);
    }
    coeffs.push_back(std::move(table));
  }
  return BellFunctional(sc, std::move(coeffs),
                        "chsh[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
}

BellFunctional mermin(std::size_t n) {
  if (n < 2) throw DomainError("mermin: requires n >= 2");
  using Poly = std::map<std::vector<std::size_t>, double>;
  // M_1 = a_1, M'_1 = a'_1 (setting 0 = unprimed, 1 = primed).
  Poly m{{{0}, 1.0}}, mp{{{1}, 1.0}};
  for (std::size_t k = 2; k <= n; ++k) {
    Poly next, next_p;
    auto add = [](Poly& out, const Poly& in, std::size_t setting, double w) {
      for (const auto& [key, c] : in) {
        auto k2 = key;
        k2.push_back(setting);
        out[k2] += c * w;
      }
    };
    // M_k  = 1/2 M_{k-1}(a_k + a'_k) + 1/2 M'_{k-1}(a_k - a'_k)
    add(next, m, 0, 0.5);
    add(next, m, 1, 0.5);
    add(next, mp, 0, 0.5);
    add(next, mp, 1, -0.5);
    // M'_k = 1/2 M'_{k-1}(a'_k + a_k) + 1/2 M_{k-1}(a'_k - a_k)
    add(next_p, mp, 1, 0.5);
    add(next_p, mp, 0, 0.5);
    add(next_p, m, 1, 0.5);
    add(next_p, m, 0, -0.5);
    m = std::move(next);
    mp = std::move(next_p);
  }
  Poly terms;
  for (const auto& [key, c] : m)
    if (c != 0.0) terms[key] = 2.0 * c;
  return correlation_functional(Scenario::uniform(n, 2, 2), terms, "mermin" + std::to_string(n));
}

BellFunctional product_expectation_functional(const Scenario& sc, std::span<const std::size_t> joint_setting,
                                              std::span<const std::size_t> subset) {
  if (subset.empty()) throw ValidationError("product expectation: subset must be nonempty");
  const std::size_t target = sc.encode_joint_setting(joint_setting);
  for (std::size_t n : subset)
    if (n >= sc.parties()) throw ValidationError("product expectation: party index out of range");
  std::vector<std::vector<double>> coeffs;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    std::vector<double> table(sc.table_size(js), 0.0);
    if (js == target) {
      for (std::size_t o = 0; o < table.size(); ++o) {
        const auto outs = sc.decode_outcome(js, o);
        double prod = 1.0;
        for (std::size_t n : subset) prod *= sc.outcome_value(n, joint_setting[n], outs[n]);
        table[o] = prod;
      }
    }
    coeffs.push_back(std::move(table));
  }
  return BellFunctional(sc, std::move(coeffs), "product");
}

}  // namespace belltol
