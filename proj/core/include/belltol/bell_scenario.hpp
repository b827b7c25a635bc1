#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace belltol {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

// Equally spaced grid on [-1, 1]; a single outcome gets the value +1.
std::vector<double> default_outcome_values(std::size_t count);

// Settings and outcome values per party. outcome_values()[n][s] lists the
// values attached to the outcomes of setting s at party n.
class Scenario {
 public:
  using OutcomeTable = std::vector<std::vector<std::vector<double>>>;

  Scenario() = default;
  explicit Scenario(OutcomeTable outcomes);

  // Every party has `settings` settings with `outcomes` default-grid outcomes.
  static Scenario uniform(std::size_t parties, std::size_t settings, std::size_t outcomes);
  static Scenario from_counts(std::span<const std::size_t> settings_per_party,
                              std::size_t outcomes);

  std::size_t parties() const { return outcomes_.size(); }
  std::size_t settings(std::size_t party) const { return outcomes_.at(party).size(); }
  std::size_t outcome_count(std::size_t party, std::size_t setting) const {
    return outcomes_.at(party).at(setting).size();
  }
  double outcome_value(std::size_t party, std::size_t setting, std::size_t outcome) const {
    return outcomes_[party][setting][outcome];
  }
  const OutcomeTable& outcome_values() const { return outcomes_; }

  std::size_t joint_setting_count() const { return joint_settings_; }
  // Party 0 is the most significant digit.
  std::vector<std::size_t> decode_joint_setting(std::size_t index) const;
  std::size_t encode_joint_setting(std::span<const std::size_t> settings) const;
  // Number of joint outcomes under a joint setting.
  std::size_t table_size(std::size_t joint_setting) const;
  // Joint outcome index of per-party outcome indices, party 0 most significant.
  std::size_t encode_outcome(std::size_t joint_setting, std::span<const std::size_t> outcomes) const;
  std::vector<std::size_t> decode_outcome(std::size_t joint_setting, std::size_t index) const;

  // Same parties, settings and outcome counts (values may differ).
  bool same_shape(const Scenario& other) const;
  bool operator==(const Scenario&) const = default;

 private:
  OutcomeTable outcomes_;
  std::size_t joint_settings_ = 0;
};

// Linear combination of averages: one dense coefficient table per joint
// setting, indexed like Scenario::encode_outcome.
class BellFunctional {
 public:
  BellFunctional() = default;
  BellFunctional(Scenario scenario, std::vector<std::vector<double>> coeffs, std::string name = {});

  const Scenario& scenario() const { return scenario_; }
  const std::vector<std::vector<double>>& coeffs() const { return coeffs_; }
  const std::vector<double>& table(std::size_t joint_setting) const { return coeffs_.at(joint_setting); }
  const std::string& name() const { return name_; }

  BellFunctional scaled(double factor) const;
  BellFunctional renamed(std::string name) const;

 private:
  Scenario scenario_;
  std::vector<std::vector<double>> coeffs_;
  std::string name_;
};

// One outcome index per (party, setting), flattened party-major.
struct DeterministicStrategy {
  std::vector<std::vector<std::size_t>> choice;  // choice[party][setting]
  bool operator==(const DeterministicStrategy&) const = default;
};

// Lazy lexicographic enumeration of all deterministic strategies; the last
// (party, setting) slot varies fastest.
class StrategyRange {
 public:
  explicit StrategyRange(const Scenario& sc, std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return count_; }
  DeterministicStrategy at(std::uint64_t index) const;

 private:
  std::vector<std::size_t> digits_at(std::uint64_t index) const;
  DeterministicStrategy from_digits(const std::vector<std::size_t>& digits) const;

 public:

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = DeterministicStrategy;
    using difference_type = std::ptrdiff_t;
    using pointer = const DeterministicStrategy*;
    using reference = const DeterministicStrategy&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    friend class StrategyRange;
    iterator(const StrategyRange* range, std::uint64_t index);
    const StrategyRange* range_ = nullptr;
    std::uint64_t index_ = 0;
    std::vector<std::size_t> digits_;
    DeterministicStrategy current_;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator begin_at(std::uint64_t index) const { return iterator(this, index); }
  iterator end() const { return iterator(this, count_); }

 private:
  std::vector<std::size_t> settings_per_party_;
  std::vector<std::size_t> radix_;  // outcome count per flattened slot
  std::uint64_t count_ = 1;
};

// Strategy count without enforcing a cap; saturates at UINT64_MAX.
std::uint64_t strategy_count(const Scenario& sc);

// Value of the functional when every party answers deterministically.
double strategy_value(const BellFunctional& f, const DeterministicStrategy& strategy);

struct LhvBounds {
  double sup = 0.0;
  double inf = 0.0;
  double b_lhv = 0.0;  // max(|sup|, |inf|)
};

struct EnumerationOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  std::size_t threads = 1;
};

// Exact LHV constants by exhaustive enumeration. With threads > 1 the index
// space is split into contiguous blocks; the reduction is exact, so results do
// not depend on the partition.
LhvBounds lhv_bounds(const BellFunctional& f, const EnumerationOptions& options = {});

// A1B1 + A1B2 + A2B1 - A2B2 on outcomes {-1, +1}.
BellFunctional chsh();

// CHSH between parties i and j of an n-party scenario; every other party has
// a single two-outcome setting that the functional ignores.
BellFunctional chsh_on_pair(std::size_t n, std::size_t i, std::size_t j);

// Mermin-Klyshko functional on n parties with two +-1 settings each, scaled
// so that its LHV constant is 2 (mermin(2) coincides with chsh()).
BellFunctional mermin(std::size_t n);

// Correlator table c * prod_k lambda_k on a scenario with two +-1 outcomes
// per setting. terms maps a full joint setting (one index per party) to c.
BellFunctional correlation_functional(const Scenario& sc,
                                      const std::map<std::vector<std::size_t>, double>& terms,
                                      std::string name = {});

// Functional whose only nonzero table sits at `joint_setting` and equals the
// product of outcome values over `subset` (other parties contribute 1).
BellFunctional product_expectation_functional(const Scenario& sc,
                                              std::span<const std::size_t> joint_setting,
                                              std::span<const std::size_t> subset);

}  // namespace belltol
