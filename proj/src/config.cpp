#include "qgibbs/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qgibbs/errors.hpp"
#include "qgibbs/pauli.hpp"

namespace qgibbs {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ValidationError("config." + path + ": " + what);
}

void expect_keys(const json& j, const std::string& path, const std::set<std::string>& known) {
  if (!j.is_object()) schema_error(path, "must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) schema_error(path + "." + it.key(), "unknown key");
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "must be an integer");
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "must be a string");
  return j.get<std::string>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  expect_keys(j, "<root>",
              {"model", "boxes", "buffer", "boundary", "omega", "tolerances",
               "max_dimension", "seed", "output_dir", "mean_field_resolution",
               "extrapolation_window", "inner_sites", "ambient_sites"});

  if (j.contains("model")) {
    const json& m = j.at("model");
    expect_keys(m, "model", {"preset", "couplings", "beta", "nu"});
    if (m.contains("preset")) c.preset = get_string(m.at("preset"), "model.preset");
    if (m.contains("beta")) c.beta = get_number(m.at("beta"), "model.beta");
    if (m.contains("nu")) c.nu = get_int(m.at("nu"), "model.nu");
    if (m.contains("couplings")) {
      const json& cp = m.at("couplings");
      if (!cp.is_object()) schema_error("model.couplings", "must be an object");
      c.couplings.clear();
      for (auto it = cp.begin(); it != cp.end(); ++it)
        c.couplings[it.key()] =
            get_number(it.value(), "model.couplings." + it.key());
    }
  }
  if (c.beta <= 0.0) schema_error("model.beta", "must be > 0");
  if (c.nu < 1 || c.nu > 2) schema_error("model.nu", "must be 1 or 2");

  if (j.contains("boxes")) {
    const json& b = j.at("boxes");
    if (!b.is_array() || b.empty()) schema_error("boxes", "must be a nonempty array");
    c.box_sizes.clear();
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::ostringstream p;
      p << "boxes[" << i << "]";
      const int n = get_int(b[i], p.str());
      if (n < 1) schema_error(p.str(), "must be >= 1");
      c.box_sizes.push_back(n);
    }
    for (std::size_t i = 0; i + 1 < c.box_sizes.size(); ++i)
      if (c.box_sizes[i] >= c.box_sizes[i + 1])
        schema_error("boxes", "sizes must be strictly increasing");
  }

  if (j.contains("buffer")) {
    c.buffer = get_int(j.at("buffer"), "buffer");
    if (c.buffer < 0) schema_error("buffer", "must be >= 0");
  }
  if (j.contains("boundary")) {
    c.boundary = get_string(j.at("boundary"), "boundary");
    if (c.boundary != "open" && c.boundary != "periodic")
      schema_error("boundary", "must be 'open' or 'periodic'");
  }

  if (j.contains("omega")) {
    const json& o = j.at("omega");
    expect_keys(o, "omega", {"kind", "diag", "bloch", "beta_prime", "buffer"});
    if (o.contains("kind")) c.omega.kind = get_string(o.at("kind"), "omega.kind");
    const std::set<std::string> kinds = {"product", "tracial", "internal_gibbs",
                                         "buffered_gibbs"};
    if (!kinds.count(c.omega.kind))
      schema_error("omega.kind", "must be one of product|tracial|internal_gibbs|buffered_gibbs");
    if (o.contains("diag")) {
      const json& d = o.at("diag");
      if (!d.is_array() || d.size() != 2) schema_error("omega.diag", "must be [p, 1-p]");
      c.omega.diag = {get_number(d[0], "omega.diag[0]"), get_number(d[1], "omega.diag[1]")};
    }
    if (o.contains("bloch")) {
      const json& bl = o.at("bloch");
      if (!bl.is_array() || bl.size() != 3) schema_error("omega.bloch", "must be [x, y, z]");
      c.omega.bloch = {{get_number(bl[0], "omega.bloch[0]"),
                        get_number(bl[1], "omega.bloch[1]"),
                        get_number(bl[2], "omega.bloch[2]")}};
    }
    if (o.contains("beta_prime"))
      c.omega.beta_prime = get_number(o.at("beta_prime"), "omega.beta_prime");
    if (o.contains("buffer")) c.omega.buffer = get_int(o.at("buffer"), "omega.buffer");
  }

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    expect_keys(t, "tolerances", {"drift_gate", "theorem_final", "identity", "mcmillan_mean"});
    if (t.contains("drift_gate"))
      c.tolerances.drift_gate = get_number(t.at("drift_gate"), "tolerances.drift_gate");
    if (t.contains("theorem_final"))
      c.tolerances.theorem_final = get_number(t.at("theorem_final"), "tolerances.theorem_final");
    if (t.contains("identity"))
      c.tolerances.identity = get_number(t.at("identity"), "tolerances.identity");
    if (t.contains("mcmillan_mean"))
      c.tolerances.mcmillan_mean = get_number(t.at("mcmillan_mean"), "tolerances.mcmillan_mean");
  }

  if (j.contains("max_dimension")) {
    const int cap = get_int(j.at("max_dimension"), "max_dimension");
    if (cap < 2) schema_error("max_dimension", "must be >= 2");
    c.max_dimension = static_cast<std::size_t>(cap);
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      schema_error("seed", "must be a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("output_dir")) c.output_dir = get_string(j.at("output_dir"), "output_dir");
  if (j.contains("mean_field_resolution")) {
    c.mean_field_resolution = get_int(j.at("mean_field_resolution"), "mean_field_resolution");
    if (c.mean_field_resolution < 2) schema_error("mean_field_resolution", "must be >= 2");
  }
  if (j.contains("extrapolation_window")) {
    c.extrapolation_window = get_int(j.at("extrapolation_window"), "extrapolation_window");
    if (c.extrapolation_window < 1) schema_error("extrapolation_window", "must be >= 1");
  }
  if (j.contains("inner_sites")) {
    c.inner_sites = get_int(j.at("inner_sites"), "inner_sites");
    if (c.inner_sites < 1) schema_error("inner_sites", "must be >= 1");
  }
  if (j.contains("ambient_sites")) {
    c.ambient_sites = get_int(j.at("ambient_sites"), "ambient_sites");
    if (c.ambient_sites <= c.inner_sites)
      schema_error("ambient_sites", "must exceed inner_sites");
  }

  // omega-specific validation
  if (c.omega.kind == "product" && !c.omega.bloch) {
    const double p0 = c.omega.diag[0], p1 = c.omega.diag[1];
    if (p0 < 0 || p1 < 0 || std::abs(p0 + p1 - 1.0) > 1e-12)
      schema_error("omega.diag", "entries must be nonnegative and sum to 1");
  }
  if (c.omega.kind == "internal_gibbs" && c.omega.beta_prime <= 0.0)
    schema_error("omega.beta_prime", "must be > 0");
  if (c.omega.kind == "buffered_gibbs" && c.omega.buffer < 0)
    schema_error("omega.buffer", "must be >= 0");
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config file not readable: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  json o;
  o["model"] = {{"preset", preset}, {"couplings", couplings}, {"beta", beta}, {"nu", nu}};
  o["boxes"] = box_sizes;
  o["buffer"] = buffer;
  o["boundary"] = boundary;
  json om;
  om["kind"] = omega.kind;
  om["diag"] = omega.diag;
  if (omega.bloch) om["bloch"] = *omega.bloch;
  om["beta_prime"] = omega.beta_prime;
  om["buffer"] = omega.buffer;
  o["omega"] = om;
  o["tolerances"] = {{"drift_gate", tolerances.drift_gate},
                     {"theorem_final", tolerances.theorem_final},
                     {"identity", tolerances.identity},
                     {"mcmillan_mean", tolerances.mcmillan_mean}};
  o["max_dimension"] = max_dimension;
  o["seed"] = seed;
  o["output_dir"] = output_dir;
  o["mean_field_resolution"] = mean_field_resolution;
  o["extrapolation_window"] = extrapolation_window;
  o["inner_sites"] = inner_sites;
  o["ambient_sites"] = ambient_sites;
  return o;
}

ModelSpec ExperimentConfig::model_spec() const {
  return ModelSpec{preset, couplings, beta, nu};
}

Potential ExperimentConfig::potential() const { return make_potential(model_spec()); }

Boundary ExperimentConfig::bc() const {
  return boundary == "periodic" ? Boundary::periodic : Boundary::open;
}

Region ExperimentConfig::centered_box(int side) const {
  const std::int32_t lo = -static_cast<std::int32_t>((side - 1) / 2);
  const std::int32_t hi = lo + side - 1;
  if (nu == 1) return Region::box({lo}, {hi});
  return Region::box({lo, lo}, {hi, hi});
}

std::vector<Region> ExperimentConfig::boxes() const {
  std::vector<Region> out;
  out.reserve(box_sizes.size());
  for (const int n : box_sizes) out.push_back(centered_box(n));
  return out;
}

StateFamily ExperimentConfig::omega_family() const {
  if (omega.kind == "tracial") return StateFamily::tracial(2, nu);
  if (omega.kind == "product") {
    Matrix rho0;
    if (omega.bloch) {
      const auto& v = *omega.bloch;
      rho0 = 0.5 * (pauli::id2() + v[0] * pauli::x() + v[1] * pauli::y() + v[2] * pauli::z());
    } else {
      rho0 = Matrix::Zero(2, 2);
      rho0(0, 0) = omega.diag[0];
      rho0(1, 1) = omega.diag[1];
    }
    return StateFamily::product(rho0, 2, nu);
  }
  if (omega.kind == "internal_gibbs")
    return StateFamily::internal_gibbs(potential(), omega.beta_prime, bc());
  return StateFamily::buffered_gibbs(potential(), beta, omega.buffer, bc());
}

void ExperimentConfig::apply() const { set_dimension_cap(max_dimension); }

}  // namespace qgibbs
