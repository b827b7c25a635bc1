#include "belltol/serialization.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "belltol/errors.hpp"

namespace belltol {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("JSON: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("JSON: field '") + key + "': " + e.what());
  }
}

std::vector<double> rounded(const std::vector<double>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(round_reported(x));
  return out;
}

}  // namespace

double round_reported(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

json matrix_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
  const auto re = field<std::vector<std::vector<double>>>(j, "re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = field<std::vector<std::vector<double>>>(j, "im");
  if (re.empty() || re.front().empty()) throw ValidationError("JSON: empty matrix");
  const std::size_t rows = re.size(), cols = re.front().size();
  if (!im.empty() && im.size() != rows) throw ValidationError("JSON: re and im shapes differ");
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (re[r].size() != cols || (!im.empty() && im[r].size() != cols))
      throw ValidationError("JSON: ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(re[r][c], im.empty() ? 0.0 : im[r][c]);
  }
  if (!m.all_finite()) throw ValidationError("JSON: non-finite matrix entry");
  return m;
}

json state_to_json(const DensityMatrix& rho) {
  json j = matrix_to_json(rho.matrix());
  j["d"] = rho.dim_per_site();
  j["n"] = rho.sites();
  return j;
}

DensityMatrix state_from_json(const json& j) {
  const auto d = field<std::size_t>(j, "d");
  const auto n = field<std::size_t>(j, "n");
  return DensityMatrix(d, n, matrix_from_json(j));
}

json scenario_to_json(const Scenario& sc) {
  json settings = json::array(), outcomes = json::array();
  for (std::size_t n = 0; n < sc.parties(); ++n) {
    const auto& per = sc.outcome_values()[n];
    settings.push_back(per.size());
    const bool shared = std::all_of(per.begin(), per.end(), [&](const auto& v) { return v == per.front(); });
    outcomes.push_back(shared ? json(per.front()) : json(per));
  }
  return {{"settings", settings}, {"outcomes", outcomes}};
}

Scenario scenario_from_json(const json& j) {
  const auto settings = field<std::vector<std::size_t>>(j, "settings");
  const json& outcomes = j.contains("outcomes") ? j.at("outcomes") : json();
  if (!outcomes.is_array() || outcomes.size() != settings.size())
    throw ValidationError("JSON: 'outcomes' must list one entry per party");
  Scenario::OutcomeTable table;
  try {
    for (std::size_t n = 0; n < settings.size(); ++n) {
      const json& o = outcomes[n];
      if (!o.is_array() || o.empty()) throw ValidationError("JSON: empty outcome list");
      if (o.front().is_array()) {
        auto per = o.get<std::vector<std::vector<double>>>();
        if (per.size() != settings[n]) throw ValidationError("JSON: outcome lists do not match the settings count");
        table.push_back(std::move(per));
      } else {
        table.emplace_back(settings[n], o.get<std::vector<double>>());
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("JSON: outcomes: ") + e.what());
  }
  return Scenario(std::move(table));
}

json functional_to_json(const BellFunctional& f) {
  const auto& sc = f.scenario();
  json j = scenario_to_json(sc);
  j["name"] = f.name();
  json coeffs = json::object();
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
    const auto& t = f.table(js);
    if (std::all_of(t.begin(), t.end(), [](double c) { return c == 0.0; })) continue;
    std::string key;
    for (auto s : sc.decode_joint_setting(js)) key += (key.empty() ? "" : ",") + std::to_string(s);
    coeffs[key] = t;
  }
  j["coeffs"] = coeffs;
  return j;
}

BellFunctional functional_from_json(const json& j) {
  const Scenario sc = scenario_from_json(j);
  std::vector<std::vector<double>> coeffs;
  for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) coeffs.emplace_back(sc.table_size(js), 0.0);
  const json& c = j.contains("coeffs") ? j.at("coeffs") : json::object();
  if (!c.is_object()) throw ValidationError("JSON: 'coeffs' must be an object");
  for (const auto& [key, value] : c.items()) {
    std::vector<std::size_t> settings;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(part.c_str(), &end, 10);
      if (part.empty() || *end != '\0') throw ValidationError("JSON: bad joint setting key '" + key + "'");
      settings.push_back(v);
    }
    if (settings.size() != sc.parties()) throw ValidationError("JSON: joint setting key '" + key + "' has wrong arity");
    for (std::size_t n = 0; n < settings.size(); ++n)
      if (settings[n] >= sc.settings(n)) throw ValidationError("JSON: joint setting key '" + key + "' out of range");
    const std::size_t js = sc.encode_joint_setting(settings);
    std::vector<double> table;
    try {
      table = value.get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw ValidationError("JSON: coefficient table '" + key + "': " + e.what());
    }
    if (table.size() != sc.table_size(js))
      throw ValidationError("JSON: coefficient table '" + key + "' has " + std::to_string(table.size()) +
                            " entries, expected " + std::to_string(sc.table_size(js)));
    coeffs[js] = std::move(table);
  }
  return BellFunctional(sc, std::move(coeffs), j.value("name", std::string("custom")));
}

json measurements_to_json(const MeasurementAssignment& m) {
  json parties = json::array();
  for (const auto& party : m.parties) {
    json settings = json::array();
    for (const auto& meas : party) {
      json effects = json::array();
      for (const auto& e : meas.effects()) effects.push_back(matrix_to_json(e));
      settings.push_back({{"values", meas.values()}, {"effects", effects}});
    }
    parties.push_back(std::move(settings));
  }
  return {{"parties", parties}};
}

MeasurementAssignment measurements_from_json(const json& j) {
  if (!j.contains("parties") || !j.at("parties").is_array()) throw ValidationError("JSON: missing field 'parties'");
  MeasurementAssignment out;
  for (const auto& party : j.at("parties")) {
    if (!party.is_array()) throw ValidationError("JSON: each party must be a list of measurements");
    std::vector<Measurement> settings;
    for (const auto& meas : party) {
      const auto values = field<std::vector<double>>(meas, "values");
      if (!meas.contains("effects") || !meas.at("effects").is_array())
        throw ValidationError("JSON: missing field 'effects'");
      std::vector<CMatrix> effects;
      for (const auto& e : meas.at("effects")) effects.push_back(matrix_from_json(e));
      settings.emplace_back(std::move(effects), values);
    }
    out.parties.push_back(std::move(settings));
  }
  return out;
}

json visibility_to_json(const VisibilityResult& v) {
  json j;
  j["beta_star"] = round_reported(v.beta_star);
  j["scenario"] = scenario_to_json(v.scenario);
  j["certificate_kind"] = v.certificate_kind();
  j["label"] = "fixed-measurement";
  j["noise"] = v.noise_label;
  if (v.conditional_on_noise_locality) j["conditional"] = "assumes the supplied noise state is local";
  if (v.dual) {
    json dual = functional_to_json(*v.dual);
    for (auto& [key, table] : dual["coeffs"].items()) table = rounded(table.get<std::vector<double>>());
    dual["lhv_bound"] = round_reported(v.dual_bound);
    dual["at_beta"] = round_reported(v.beta_star + v.certificate_step);
    j["dual"] = std::move(dual);
  }
  j["weights"] = rounded(v.weights);
  return j;
}

json report_to_json(const ToleranceReport& r) {
  auto interval = [](const BoundInterval& b) {
    return json{{"lower", round_reported(b.lower)}, {"upper", round_reported(b.upper)}, {"active_term", b.active_term}};
  };
  json j{{"family", r.family},
         {"d", r.d},
         {"N", r.n},
         {"S", r.settings.settings_label()},
         {"regime", r.settings.label()},
         {"meas_type", r.meas_label()},
         {"upsilon", interval(r.upsilon)},
         {"tolerance", interval(r.tolerance)},
         {"max_noise", interval(r.max_noise)}};
  if (r.k) j["k"] = *r.k;
  if (r.asymptotic_note) j["asymptotic_note"] = round_reported(*r.asymptotic_note);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
}

}  // namespace belltol
