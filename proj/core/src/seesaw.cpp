#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cmath>
#include <ostream>
#include <random>
#include <string>
#include <thread>

#include "belltol/errors.hpp"
#include "belltol/quantum_value.hpp"

namespace belltol {

namespace {

// One correlator c * <prod_{k in subset} A_{k, settings[k]}>.
struct CorrelatorTerm {
  std::vector<std::size_t> settings;
  std::vector<bool> in_subset;
  double coeff = 0.0;
};

std::vector<CorrelatorTerm> correlator_terms(const BellFunctional& f) {
  const auto& sc = f.scenario();
  // Index of the +1 outcome per (party, setting).
  std::vector<std::vector<std::size_t>> plus(sc.parties());
  for (std::size_t n = 0; n < sc.parties(); ++n)
    for (std::size_t s = 0; s < sc.settings(n); ++s) {
      if (sc.outcome_count(n, s) != 2)
        throw UnsupportedFunctionalError("seesaw: party " + std::to_string(n + 1) + " setting " +
                                         std::to_string(s + 1) + " does not have exactly two outcomes");
      const double v0 = sc.outcome_value(n, s, 0), v1 = sc.outcome_value(n, s, 1);
      if (!((v0 == -1.0 && v1 == 1.0) || (v0 == 1.0 && v1 == -1.0)))
        throw UnsupportedFunctionalError("seesaw: outcome values must be {-1, +1}");
      plus[n].push_back(v0 == 1.0 ? 0 : 1);
    }

  std::vector<CorrelatorTerm> terms;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    const auto s = sc.decode_joint_setting(js);
    const auto& table = f.table(js);
    double scale = 0.0;
    for (double c : table) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) continue;
    const double tol = 1e-12 * scale;

    std::vector<std::size_t> o(sc.parties());
    for (std::size_t n = 0; n < sc.parties(); ++n) o[n] = plus[n][s[n]];
    const double c = table[sc.encode_outcome(js, o)];
    if (std::abs(c) <= tol)
      throw UnsupportedFunctionalError("seesaw: coefficient table " + std::to_string(js) +
                                       " is not a single correlator");
    CorrelatorTerm term{s, std::vector<bool>(sc.parties()), c};
    for (std::size_t n = 0; n < sc.parties(); ++n) {
      auto flipped = o;
      flipped[n] = 1 - flipped[n];
      const double t = table[sc.encode_outcome(js, flipped)];
      if (std::abs(t + c) <= tol) {
        term.in_subset[n] = true;
      } else if (std::abs(t - c) > tol) {
        throw UnsupportedFunctionalError("seesaw: coefficient table " + std::to_string(js) +
                                         " is not a single correlator");
      }
    }
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      const auto outs = sc.decode_outcome(js, idx);
      double expect = c;
      for (std::size_t n = 0; n < sc.parties(); ++n)
        if (term.in_subset[n]) expect *= sc.outcome_value(n, s[n], outs[n]);
      if (std::abs(table[idx] - expect) > tol)
        throw UnsupportedFunctionalError("seesaw: coefficient table " + std::to_string(js) +
                                         " is not a single correlator");
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

using Observables = std::vector<std::vector<CMatrix>>;  // [party][setting]

CMatrix haar_unitary(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(d, d);
  for (auto& z : g.entries()) z = Complex(normal(rng), normal(rng)) * std::sqrt(0.5);
  // Modified Gram-Schmidt on columns; positive R diagonal gives Haar measure.
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(g(i, j)) * g(i, k);
      for (std::size_t i = 0; i < d; ++i) g(i, k) -= proj * g(i, j);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(g(i, k));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) g(i, k) /= norm;
  }
  return g;
}

CMatrix random_observable(std::size_t d, std::mt19937_64& rng) {
  const CMatrix u = haar_unitary(d, rng);
  std::vector<double> spectrum(d, -1.0);
  std::fill(spectrum.begin(), spectrum.begin() + static_cast<std::ptrdiff_t>((d + 1) / 2), 1.0);
  CMatrix a = u * CMatrix::diagonal(spectrum) * u.adjoint();
  return 0.5 * (a + a.adjoint());
}

class SeesawRun {
 public:
  SeesawRun(const std::vector<CorrelatorTerm>& terms, const DensityMatrix& rho, const Scenario& sc)
      : terms_(terms), rho_(rho), sc_(sc), dims_(rho.sites(), rho.dim_per_site()) {}

  double objective(const Observables& obs) const {
    double total = 0.0;
    std::vector<const CMatrix*> ops(dims_.size());
    for (const auto& t : terms_) {
      for (std::size_t n = 0; n < ops.size(); ++n) ops[n] = t.in_subset[n] ? &obs[n][t.settings[n]] : nullptr;
      total += t.coeff * contract_all(rho_.matrix(), dims_, ops).real();
    }
    return total;
  }

  // Best response of one party: A_{n,s} = sign(sigma * L_{n,s}).
  void update_party(Observables& obs, std::size_t n, double sigma) const {
    const std::size_t d = dims_[n];
    std::vector<CMatrix> local(sc_.settings(n), CMatrix(d, d));
    std::vector<const CMatrix*> ops(dims_.size());
    for (const auto& t : terms_) {
      if (!t.in_subset[n]) continue;
      for (std::size_t m = 0; m < ops.size(); ++m)
        ops[m] = (m != n && t.in_subset[m]) ? &obs[m][t.settings[m]] : nullptr;
      local[t.settings[n]] += contract_except(rho_.matrix(), dims_, n, ops) * Complex(t.coeff * sigma);
    }
    for (std::size_t s = 0; s < local.size(); ++s) {
      const CMatrix h = 0.5 * (local[s] + local[s].adjoint());
      CMatrix a = hermitian_sign(h);
      obs[n][s] = 0.5 * (a + a.adjoint());
    }
  }

 private:
  const std::vector<CorrelatorTerm>& terms_;
  const DensityMatrix& rho_;
  const Scenario& sc_;
  std::vector<std::size_t> dims_;
};

struct RestartOutcome {
  double value = -1.0;
  double signed_value = 0.0;
  Observables observables;
  std::vector<double> trace;
};

RestartOutcome run_restart(const SeesawRun& run, const Scenario& sc, std::size_t d, double b_lhv,
                           const SeesawConfig& cfg, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart & 0xffffffffu),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(restart) >> 32)};
  std::mt19937_64 rng(seq);
  RestartOutcome best;
  // Maximise B and -B separately; |B| is the larger of the two optima.
  for (double sigma : {1.0, -1.0}) {
    Observables obs(sc.parties());
    for (std::size_t n = 0; n < sc.parties(); ++n)
      for (std::size_t s = 0; s < sc.settings(n); ++s) obs[n].push_back(random_observable(d, rng));
    std::vector<double> trace{sigma * run.objective(obs) / b_lhv};
    for (std::size_t sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      for (std::size_t n = 0; n < sc.parties(); ++n) run.update_party(obs, n, sigma);
      trace.push_back(sigma * run.objective(obs) / b_lhv);
      if (trace.back() - trace[trace.size() - 2] < cfg.sweep_tol) break;
    }
    const double raw = run.objective(obs);
    const double value = std::abs(raw) / b_lhv;
    if (value > best.value) {
      best.value = value;
      best.signed_value = raw;
      best.observables = std::move(obs);
      best.trace = std::move(trace);
    }
  }
  return best;
}

}  // namespace

SeesawResult seesaw(const BellFunctional& f, const DensityMatrix& rho, const SeesawConfig& config,
                    const EnumerationOptions& enumeration) {
  const auto& sc = f.scenario();
  if (sc.parties() != rho.sites())
    throw ValidationError("seesaw: functional has " + std::to_string(sc.parties()) + " parties, state has " +
                          std::to_string(rho.sites()) + " sites");
  if (config.restarts == 0) throw DomainError("seesaw: at least one restart required");
  const auto terms = correlator_terms(f);
  const auto lhv = lhv_bounds(f, enumeration);
  if (lhv.b_lhv <= 0.0) throw DomainError("seesaw: functional has a zero LHV constant (degenerate)");

  const SeesawRun run(terms, rho, sc);
  const std::size_t d = rho.dim_per_site();
  std::vector<RestartOutcome> outcomes(config.restarts);
  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, config.restarts);
  if (workers == 1) {
    for (std::size_t r = 0; r < config.restarts; ++r) outcomes[r] = run_restart(run, sc, d, lhv.b_lhv, config, r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < config.restarts; r = next++)
          outcomes[r] = run_restart(run, sc, d, lhv.b_lhv, config, r);
      });
    for (auto& t : pool) t.join();
  }

  SeesawResult result;
  result.restarts_used = config.restarts;
  result.value = -1.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.restart_traces.push_back(outcomes[r].trace);
    if (outcomes[r].value > result.value) {
      result.value = outcomes[r].value;
      result.best_restart = r;
    }
  }
  auto& best = outcomes[result.best_restart];
  result.quantum_value = best.signed_value;
  result.trace = best.trace;
  for (std::size_t n = 0; n < sc.parties(); ++n) {
    std::vector<Measurement> party;
    for (std::size_t s = 0; s < sc.settings(n); ++s) {
      const std::vector<double> values = sc.outcome_values()[n][s];
      party.push_back(Measurement::from_observable(best.observables[n][s], values));
    }
    result.assignment.parties.push_back(std::move(party));
  }
  return result;
}

void write_seesaw_trace_csv(std::ostream& os, const SeesawResult& result) {
  os << "restart,sweep,objective\n";
  char buf[64];
  for (std::size_t r = 0; r < result.restart_traces.size(); ++r)
    for (std::size_t k = 0; k < result.restart_traces[r].size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.9g", result.restart_traces[r][k]);
      os << r << ',' << k << ',' << buf << '\n';
    }
}

UpsilonLowerBound upsilon_lower_bound(const DensityMatrix& rho, std::span<const BellFunctional> library,
                                      const SeesawConfig& config, const EnumerationOptions& enumeration) {
  if (library.empty()) throw DomainError("upsilon lower bound: empty functional library");
  UpsilonLowerBound out;
  out.value = -1.0;
  for (std::size_t i = 0; i < library.size(); ++i) {
    auto r = seesaw(library[i], rho, config, enumeration);
    if (r.value > out.value) {
      out.value = r.value;
      out.functional_index = i;
      out.functional_name = library[i].name();
      out.best = std::move(r);
    }
  }
  return out;
}

}  // namespace belltol
