#include "belltol/quantum_value.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "belltol/errors.hpp"

namespace belltol {

Measurement::Measurement(std::vector<CMatrix> effects, std::vector<double> values)
    : effects_(std::move(effects)), values_(std::move(values)) {
  if (effects_.empty()) throw ValidationError("measurement: at least one effect required");
  if (effects_.size() != values_.size())
    throw ValidationError("measurement: one outcome value per effect required");
  const std::size_t d = effects_.front().rows();
  CMatrix sum(d, d);
  for (std::size_t k = 0; k < effects_.size(); ++k) {
    const auto& e = effects_[k];
    if (!e.square() || e.rows() != d) throw ValidationError("measurement: effects must be square and equal-sized");
    if (!(values_[k] >= -1.0 && values_[k] <= 1.0))
      throw ValidationError("measurement: outcome value outside [-1, 1]");
    if (e.hermiticity_deviation() > kPovmTol) throw ValidationError("measurement: effect is not Hermitian");
    if (!is_psd(e, kPovmTol)) throw ValidationError("measurement: effect is not positive semidefinite");
    sum += e;
  }
  const double dev = max_abs_diff(sum, CMatrix::identity(d));
  if (dev > kPovmTol)
    throw ValidationError("measurement: effects do not sum to the identity (deviation " + std::to_string(dev) + ")");
}

Measurement Measurement::from_observable(const CMatrix& observable, std::span<const double> values) {
  const std::vector<double> vals = values.empty() ? std::vector<double>{-1.0, 1.0}
                                                  : std::vector<double>(values.begin(), values.end());
  if (vals.size() != 2 || std::abs(std::abs(vals[0]) - 1.0) > 0.0 || vals[0] != -vals[1])
    throw ValidationError("observable measurement: outcome values must be {-1, +1}");
  const std::size_t d = observable.rows();
  std::vector<CMatrix> effects;
  for (double v : vals) {
    CMatrix e = CMatrix::identity(d) + observable * Complex(v);
    e *= 0.5;
    // Exact Hermitian part keeps round-off from tripping validation.
    effects.push_back(0.5 * (e + e.adjoint()));
  }
  return Measurement(std::move(effects), vals);
}

Measurement Measurement::computational_basis(std::size_t d) {
  std::vector<CMatrix> effects;
  for (std::size_t k = 0; k < d; ++k) {
    CMatrix e(d, d);
    e(k, k) = 1.0;
    effects.push_back(std::move(e));
  }
  return Measurement(std::move(effects), default_outcome_values(d));
}

CMatrix Measurement::observable() const {
  CMatrix a(dim(), dim());
  for (std::size_t k = 0; k < effects_.size(); ++k) a += effects_[k] * Complex(values_[k]);
  return a;
}

void MeasurementAssignment::validate(std::size_t d) const {
  if (parties.empty()) throw ValidationError("measurement assignment: no parties");
  for (std::size_t n = 0; n < parties.size(); ++n) {
    if (parties[n].empty()) throw ValidationError("measurement assignment: party " + std::to_string(n) + " has no settings");
    for (const auto& m : parties[n])
      if (m.dim() != d)
        throw ValidationError("measurement assignment: party " + std::to_string(n) +
                              " measurement acts on dimension " + std::to_string(m.dim()) + ", expected " +
                              std::to_string(d));
  }
}

Scenario MeasurementAssignment::scenario() const {
  Scenario::OutcomeTable t;
  for (const auto& party : parties) {
    std::vector<std::vector<double>> per_setting;
    for (const auto& m : party) per_setting.push_back(m.values());
    t.push_back(std::move(per_setting));
  }
  return Scenario(std::move(t));
}

Behavior Behavior::deterministic(const Scenario& sc, const DeterministicStrategy& strategy) {
  Behavior b{sc, {}};
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    const auto s = sc.decode_joint_setting(js);
    std::vector<std::size_t> o(sc.parties());
    for (std::size_t n = 0; n < sc.parties(); ++n) o[n] = strategy.choice.at(n).at(s[n]);
    std::vector<double> table(sc.table_size(js), 0.0);
    table.at(sc.encode_outcome(js, o)) = 1.0;
    b.tables.push_back(std::move(table));
  }
  return b;
}

Behavior Behavior::uniform(const Scenario& sc) {
  Behavior b{sc, {}};
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    const std::size_t size = sc.table_size(js);
    b.tables.emplace_back(size, 1.0 / static_cast<double>(size));
  }
  return b;
}

double Behavior::min_probability() const {
  double m = 1.0;
  for (const auto& t : tables)
    for (double p : t) m = std::min(m, p);
  return m;
}

double Behavior::max_normalization_error() const {
  double e = 0.0;
  for (const auto& t : tables) {
    double s = 0.0;
    for (double p : t) s += p;
    e = std::max(e, std::abs(s - 1.0));
  }
  return e;
}

double Behavior::max_signaling_deviation() const {
  const std::size_t parties = scenario.parties();
  double dev = 0.0;
  for (std::size_t js = 0; js < scenario.joint_setting_count(); ++js) {
    const auto s = scenario.decode_joint_setting(js);
    for (std::size_t n = 0; n < parties; ++n) {
      for (std::size_t alt = s[n] + 1; alt < scenario.settings(n); ++alt) {
        auto s2 = s;
        s2[n] = alt;
        const std::size_t js2 = scenario.encode_joint_setting(s2);
        // Marginal of the remaining parties; their outcome tuples are keyed by
        // the joint index with party n's outcome removed.
        auto marginal = [&](std::size_t which) {
          const auto& table = tables[which];
          const std::size_t mn = scenario.outcome_count(n, which == js ? s[n] : alt);
          std::vector<double> out(table.size() / mn, 0.0);
          for (std::size_t o = 0; o < table.size(); ++o) {
            const auto outs = scenario.decode_outcome(which, o);
            std::size_t key = 0;
            for (std::size_t k = 0; k < parties; ++k) {
              if (k == n) continue;
              key = key * scenario.outcome_count(k, s[k]) + outs[k];
            }
            out[key] += table[o];
          }
          return out;
        };
        const auto m1 = marginal(js);
        const auto m2 = marginal(js2);
        for (std::size_t i = 0; i < m1.size(); ++i) dev = std::max(dev, std::abs(m1[i] - m2[i]));
      }
    }
  }
  return dev;
}

Behavior Behavior::affine(const Behavior& a, const Behavior& b, double t) {
  if (!a.scenario.same_shape(b.scenario)) throw ValidationError("behavior combination: shape mismatch");
  Behavior out{a.scenario, a.tables};
  for (std::size_t js = 0; js < out.tables.size(); ++js)
    for (std::size_t o = 0; o < out.tables[js].size(); ++o)
      out.tables[js][o] = (1.0 - t) * a.tables[js][o] + t * b.tables[js][o];
  return out;
}

Behavior behavior(const DensityMatrix& rho, const MeasurementAssignment& meas) {
  meas.validate(rho.dim_per_site());
  if (meas.parties.size() != rho.sites())
    throw ValidationError("behavior: " + std::to_string(meas.parties.size()) + " parties measured on a " +
                          std::to_string(rho.sites()) + "-site state");
  Behavior b{meas.scenario(), {}};
  const auto& sc = b.scenario;
  const std::size_t parties = sc.parties();
  const std::size_t d = rho.dim_per_site();

  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    const auto s = sc.decode_joint_setting(js);
    std::vector<double> table(sc.table_size(js), 0.0);
    // Contract site 0 first; each level peels off the most significant site.
    std::function<void(const CMatrix&, std::size_t, std::size_t)> descend = [&](const CMatrix& r, std::size_t site,
                                                                                  std::size_t prefix) {
      const auto& m = meas.parties[site][s[site]];
      const std::vector<std::size_t> dims(parties - site, d);
      for (std::size_t o = 0; o < m.outcomes(); ++o) {
        const std::size_t idx = prefix * m.outcomes() + o;
        if (site + 1 == parties) {
          table[idx] = trace_product(r, m.effects()[o]).real();
        } else {
          descend(contract_site(r, dims, 0, &m.effects()[o]), site + 1, idx);
        }
      }
    };
    descend(rho.matrix(), 0, 0);
    b.tables.push_back(std::move(table));
  }
  return b;
}

double evaluate(const BellFunctional& f, const Behavior& b) {
  if (!f.scenario().same_shape(b.scenario)) throw ValidationError("evaluate: functional and behavior shapes differ");
  double total = 0.0;
  for (std::size_t js = 0; js < b.tables.size(); ++js) {
    const auto& c = f.table(js);
    const auto& p = b.tables[js];
    for (std::size_t o = 0; o < p.size(); ++o) total += c[o] * p[o];
  }
  return total;
}

double violation_ratio(const BellFunctional& f, const DensityMatrix& rho, const MeasurementAssignment& meas,
                       const EnumerationOptions& enumeration) {
  const auto lhv = lhv_bounds(f, enumeration);
  if (lhv.b_lhv <= 0.0) throw DomainError("violation ratio: functional has a zero LHV constant (degenerate)");
  return std::abs(evaluate(f, behavior(rho, meas))) / lhv.b_lhv;
}

std::vector<BellFunctional> default_functional_library(std::size_t parties) {
  std::vector<BellFunctional> lib;
  lib.push_back(parties == 2 ? chsh() : mermin(parties));
  if (parties > 2)
    for (std::size_t i = 0; i < parties; ++i)
      for (std::size_t j = i + 1; j < parties; ++j) lib.push_back(chsh_on_pair(parties, i, j));
  return lib;
}

}  // namespace belltol
