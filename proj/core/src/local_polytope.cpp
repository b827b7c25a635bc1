#include "belltol/local_polytope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "belltol/errors.hpp"

namespace belltol {

namespace {

std::size_t entry_count(const Scenario& sc) {
  std::size_t rows = 0;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) rows += sc.table_size(js);
  return rows;
}

// Offset of each joint setting's block within the flattened behavior.
std::vector<std::size_t> block_offsets(const Scenario& sc) {
  std::vector<std::size_t> off;
  std::size_t acc = 0;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    off.push_back(acc);
    acc += sc.table_size(js);
  }
  return off;
}

}  // namespace

std::vector<double> flatten(const Behavior& b) {
  std::vector<double> out;
  for (const auto& t : b.tables) out.insert(out.end(), t.begin(), t.end());
  return out;
}

LinearProgram vertex_program(const Scenario& sc, const PolytopeOptions& options) {
  const StrategyRange range(sc, options.vertex_cap);
  const std::size_t entries = entry_count(sc);
  const std::size_t rows = entries + 1;
  const std::size_t cols = static_cast<std::size_t>(range.size());
  if (rows * cols > options.lp_entry_cap)
    throw ResourceLimitError("local polytope LP with " + std::to_string(rows) + " rows and " + std::to_string(cols) +
                             " vertices exceeds the LP size cap");
  LinearProgram lp(rows, cols);
  const auto offsets = block_offsets(sc);
  std::vector<std::vector<std::size_t>> settings;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) settings.push_back(sc.decode_joint_setting(js));
  std::size_t col = 0;
  std::vector<std::size_t> o(sc.parties());
  for (const auto& st : range) {
    for (std::size_t js = 0; js < settings.size(); ++js) {
      for (std::size_t n = 0; n < sc.parties(); ++n) o[n] = st.choice[n][settings[js][n]];
      lp.at(offsets[js] + sc.encode_outcome(js, o), col) = 1.0;
    }
    lp.at(entries, col) = 1.0;
    ++col;
  }
  lp.rhs[entries] = 1.0;
  return lp;
}

namespace {

BellFunctional functional_from_rows(const Scenario& sc, const std::vector<double>& y, std::string name) {
  const auto offsets = block_offsets(sc);
  std::vector<std::vector<double>> coeffs;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    const auto first = y.begin() + static_cast<std::ptrdiff_t>(offsets[js]);
    coeffs.emplace_back(first, first + static_cast<std::ptrdiff_t>(sc.table_size(js)));
  }
  return BellFunctional(sc, std::move(coeffs), std::move(name));
}

}  // namespace

LocalityResult is_local(const Behavior& b, const PolytopeOptions& options) {
  LinearProgram lp = vertex_program(b.scenario, options);
  const auto flat = flatten(b);
  std::copy(flat.begin(), flat.end(), lp.rhs.begin());
  const auto res = simplex_max(lp, options.tol, options.lp_entry_cap);
  LocalityResult out;
  if (res.status == LpStatus::optimal) {
    out.local = true;
    out.weights = res.solution;
    return out;
  }
  // Farkas vector y: y.D_v <= 0 for every vertex and y.b > 0. Splitting off
  // the normalisation multiplier gives f(D_v) <= -y_norm < f(b).
  out.local = false;
  const double y_norm = res.farkas.back();
  out.separating = functional_from_rows(b.scenario, res.farkas, "separating");
  out.separating_bound = -y_norm;
  return out;
}

VisibilityResult critical_visibility(const DensityMatrix& rho, const NoiseSpec& noise,
                                     const MeasurementAssignment& meas, const PolytopeOptions& options) {
  const DensityMatrix zeta = noise.resolve(rho);
  const Behavior b_signal = behavior(rho, meas);
  const Behavior b_noise = behavior(zeta, meas);
  const Scenario& sc = b_signal.scenario;
  // The local set in beta is an interval; it starts at 0 only for local noise.
  if (!is_local(b_noise, options).local)
    throw DomainError("critical visibility: the noise behavior is not local for these measurements");

  // Variables: vertex weights, beta, slack t with beta + t = 1.
  const LinearProgram base = vertex_program(sc, options);
  const std::size_t vertices = base.cols;
  const std::size_t entries = base.rows - 1;
  LinearProgram lp(base.rows + 1, vertices + 2);
  for (std::size_t r = 0; r < base.rows; ++r)
    for (std::size_t c = 0; c < vertices; ++c) lp.at(r, c) = base.at(r, c);
  const auto sig = flatten(b_signal);
  const auto nz = flatten(b_noise);
  const std::size_t beta = vertices, slack = vertices + 1;
  for (std::size_t r = 0; r < entries; ++r) {
    lp.at(r, beta) = -(sig[r] - nz[r]);
    lp.rhs[r] = nz[r];
  }
  lp.rhs[entries] = 1.0;
  lp.at(entries + 1, beta) = 1.0;
  lp.at(entries + 1, slack) = 1.0;
  lp.rhs[entries + 1] = 1.0;
  lp.objective[beta] = 1.0;

  const auto res = simplex_max(lp, options.tol, options.lp_entry_cap);
  if (res.status != LpStatus::optimal)
    throw DomainError("critical visibility: LP found no local mixture");

  VisibilityResult out;
  out.beta_star = std::clamp(res.solution[beta], 0.0, 1.0);
  out.scenario = sc;
  out.weights.assign(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(vertices));
  out.noise_label = noise.label();
  out.conditional_on_noise_locality = noise.kind == NoiseSpec::Kind::explicit_state;

  const double probe = out.beta_star + out.certificate_step;
  if (probe <= 1.0) {
    const auto loc = is_local(Behavior::affine(b_noise, b_signal, probe), options);
    if (!loc.local) {
      out.dual = loc.separating;
      out.dual_bound = loc.separating_bound;
    }
  }
  return out;
}

}  // namespace belltol
