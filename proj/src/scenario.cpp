#include "berth/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace berth {

namespace detail {
const std::map<std::string, std::string>& embedded_files();
}

using nlohmann::json;

namespace {

constexpr const char* kBuiltinPrefix = "builtin:";

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Converts a possibly unit-annotated quantity to SI. `lpp` enables lengths in
// multiples of the ship length.
double quantity(const json& j, const std::string& path, double lpp = 0.0) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_object() || !j.contains("value") || !j["value"].is_number())
    throw Error("expected a number or {\"value\", \"unit\"}", path);
  const double v = j["value"].get<double>();
  if (!j.contains("unit")) return v;
  if (!j["unit"].is_string()) throw Error("unit must be a string", path + ".unit");
  const auto unit = j["unit"].get<std::string>();
  if (unit == "m" || unit == "m/s" || unit == "s" || unit == "rad" || unit == "rad/s" ||
      unit == "kg" || unit == "m2" || unit == "1/s")
    return v;
  if (unit == "kn") return knots_to_mps(v);
  if (unit == "deg" || unit == "deg/s") return deg_to_rad(v);
  if (unit == "t") return v * 1000.0;
  if (unit == "rpm") return v / 60.0;
  if (unit == "Lpp") {
    if (!(lpp > 0.0)) throw Error("unit Lpp needs a ship length", path + ".unit");
    return v * lpp;
  }
  throw Error("unknown unit '" + unit + "'", path + ".unit");
}

class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw Error("expected an object", path_);
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const json& at(const std::string& key) const {
    if (!j_.contains(key)) throw Error("missing field", join(path_, key));
    return j_.at(key);
  }
  std::string sub(const std::string& key) const { return join(path_, key); }

  double number(const std::string& key, double lpp = 0.0) const {
    return quantity(at(key), sub(key), lpp);
  }
  void optional(const std::string& key, double& out, double lpp = 0.0) const {
    if (has(key)) out = number(key, lpp);
  }
  void integer(const std::string& key, int& out) const {
    if (!has(key)) return;
    const auto& v = at(key);
    if (!v.is_number_integer()) throw Error("expected an integer", sub(key));
    out = v.get<int>();
  }
  void integer(const std::string& key, long& out) const {
    if (!has(key)) return;
    const auto& v = at(key);
    if (!v.is_number_integer()) throw Error("expected an integer", sub(key));
    out = v.get<long>();
  }
  std::string text(const std::string& key) const {
    const auto& v = at(key);
    if (!v.is_string()) throw Error("expected a string", sub(key));
    return v.get<std::string>();
  }
  void boolean(const std::string& key, bool& out) const {
    if (!has(key)) return;
    const auto& v = at(key);
    if (!v.is_boolean()) throw Error("expected true or false", sub(key));
    out = v.get<bool>();
  }

 private:
  const json& j_;
  std::string path_;
};

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("parse failure: ") + e.what(), what);
  }
}

ShipState parse_state(const Section& s) {
  ShipState x;
  x.x0 = s.number("x0");
  x.u = s.number("u");
  x.y0 = s.number("y0");
  x.vm = s.number("vm");
  x.psi = s.number("psi");
  x.r = s.number("r");
  if (!x.is_finite()) throw Error("state must be finite", "");
  x.psi = wrap_angle(x.psi);
  return x;
}

json state_json(const ShipState& x) {
  return {{"x0", x.x0}, {"u", x.u}, {"y0", x.y0}, {"vm", x.vm}, {"psi", x.psi}, {"r", x.r}};
}

ToleranceVector default_tolerance(Mode mode) {
  if (mode == Mode::kBerthing)
    return {{1.0, 0.1, 1.0, 0.1, deg_to_rad(1.0), deg_to_rad(0.0764)}};
  return {{1.0, 0.1, 1.0, 0.0, deg_to_rad(1.0), deg_to_rad(0.764)}};
}

ShipParameters parse_ship(const Section& s) {
  ShipParameters p;
  s.optional("Lpp", p.Lpp);
  s.optional("B", p.B);
  s.optional("d", p.d);
  s.optional("Dp", p.Dp);
  s.optional("A_R", p.A_R);
  s.optional("D_BT", p.D_BT);
  s.optional("D_ST", p.D_ST);
  s.optional("mass", p.mass);
  s.optional("x_G", p.x_G);
  s.optional("A_T", p.A_T);
  s.optional("A_L", p.A_L);
  s.optional("L_OA", p.L_OA);
  s.optional("Cb", p.Cb);
  s.optional("x_BT", p.x_BT);
  s.optional("x_ST", p.x_ST);
  s.optional("rho_water", p.rho_water);
  s.optional("rho_air", p.rho_air);
  s.optional("u_threshold", p.u_threshold);
  return p;
}

json ship_json(const ShipParameters& p) {
  return {{"Lpp", p.Lpp},       {"B", p.B},
          {"d", p.d},           {"Dp", p.Dp},
          {"A_R", p.A_R},       {"D_BT", p.D_BT},
          {"D_ST", p.D_ST},     {"mass", p.mass},
          {"x_G", p.x_G},       {"A_T", p.A_T},
          {"A_L", p.A_L},       {"L_OA", p.L_OA},
          {"Cb", p.Cb},         {"x_BT", p.x_BT},
          {"x_ST", p.x_ST},     {"rho_water", p.rho_water},
          {"rho_air", p.rho_air}, {"u_threshold", p.u_threshold}};
}

// Coefficient groups are flat objects of numbers; each field is optional and
// keeps its struct default when omitted.
template <class T>
using FieldList = std::vector<std::pair<const char*, double T::*>>;

const FieldList<AddedMass>& fields(const AddedMass*) {
  static const FieldList<AddedMass> f{
      {"mx", &AddedMass::mx}, {"my", &AddedMass::my}, {"Jzz", &AddedMass::Jzz}, {"kzz", &AddedMass::kzz}};
  return f;
}
const FieldList<HullCoefficients>& fields(const HullCoefficients*) {
  using H = HullCoefficients;
  static const FieldList<H> f{{"X0F", &H::X0F}, {"X0A", &H::X0A}, {"Xvr", &H::Xvr}, {"Yv", &H::Yv},
                              {"Yr", &H::Yr},   {"Nv", &H::Nv},   {"Nr", &H::Nr},   {"CD", &H::CD},
                              {"CrY", &H::CrY}, {"CrN", &H::CrN}};
  return f;
}
const FieldList<PropellerForward>& fields(const PropellerForward*) {
  using P = PropellerForward;
  static const FieldList<P> f{
      {"wP0", &P::wP0}, {"tP", &P::tP}, {"k0", &P::k0}, {"k1", &P::k1}, {"k2", &P::k2}};
  return f;
}
const FieldList<PropellerReverse>& fields(const PropellerReverse*) {
  using P = PropellerReverse;
  static const FieldList<P> f{{"c0", &P::c0},       {"c1", &P::c1}, {"J_min", &P::J_min},
                              {"J_max", &P::J_max}, {"A0", &P::A0}, {"A1", &P::A1},
                              {"B0", &P::B0},       {"B1", &P::B1}};
  return f;
}
const FieldList<RudderCoefficients>& fields(const RudderCoefficients*) {
  using R = RudderCoefficients;
  static const FieldList<R> f{{"f_alpha", &R::f_alpha}, {"epsilon", &R::epsilon},
                              {"kappa", &R::kappa},     {"eta", &R::eta},
                              {"tR", &R::tR},           {"aH", &R::aH},
                              {"xH", &R::xH},           {"xR", &R::xR},
                              {"gammaR", &R::gammaR},   {"lR", &R::lR}};
  return f;
}
const FieldList<RudderThirdQuadrant>& fields(const RudderThirdQuadrant*) {
  using R = RudderThirdQuadrant;
  static const FieldList<R> f{{"kappa_slip", &R::kappa_slip}, {"gammaR", &R::gammaR}};
  return f;
}
const FieldList<WindCoefficients>& fields(const WindCoefficients*) {
  using W = WindCoefficients;
  static const FieldList<W> f{{"X0", &W::X0}, {"X1", &W::X1}, {"X3", &W::X3}, {"X5", &W::X5},
                              {"Y1", &W::Y1}, {"Y3", &W::Y3}, {"Y5", &W::Y5}, {"N1", &W::N1},
                              {"N2", &W::N2}, {"N3", &W::N3}};
  return f;
}
const FieldList<ThrusterCoefficients>& fields(const ThrusterCoefficients*) {
  using T = ThrusterCoefficients;
  static const FieldList<T> f{{"K_TBT", &T::K_TBT}, {"K_TST", &T::K_TST}, {"a_YSB", &T::a_YSB},
                              {"a_YST", &T::a_YST}, {"a_NSB", &T::a_NSB}, {"a_NST", &T::a_NST}};
  return f;
}

template <class T>
void read_group(const json& root, const char* key, std::optional<T>& out) {
  if (!root.contains(key)) return;
  const std::string path = std::string("coefficients.") + key;
  const Section s(root.at(key), path);
  T g{};
  const auto& list = fields(static_cast<const T*>(nullptr));
  for (const auto& [name, member] : list) s.optional(name, g.*member);
  for (const auto& [k, v] : root.at(key).items()) {
    bool known = false;
    for (const auto& [name, member] : list) known = known || k == name;
    if (!known) throw Error("unknown coefficient", join(path, k));
  }
  out = g;
}

template <class T>
void write_group(json& root, const char* key, const std::optional<T>& g) {
  if (!g) return;
  json obj = json::object();
  for (const auto& [name, member] : fields(static_cast<const T*>(nullptr))) obj[name] = (*g).*member;
  root[key] = obj;
}

HydroCoefficients parse_coefficients_json(const json& root) {
  if (!root.is_object()) throw Error("expected an object", "coefficients");
  HydroCoefficients c;
  if (root.contains("name")) {
    if (!root["name"].is_string()) throw Error("expected a string", "coefficients.name");
    c.name = root["name"].get<std::string>();
  }
  read_group(root, "added_mass", c.added_mass);
  read_group(root, "hull", c.hull);
  read_group(root, "propeller_forward", c.propeller_forward);
  read_group(root, "propeller_reverse", c.propeller_reverse);
  read_group(root, "rudder", c.rudder);
  read_group(root, "rudder_third_quadrant", c.rudder_third_quadrant);
  read_group(root, "wind", c.wind);
  read_group(root, "thruster", c.thruster);
  return c;
}

json coefficients_json(const HydroCoefficients& c) {
  json root = json::object();
  if (!c.name.empty()) root["name"] = c.name;
  write_group(root, "added_mass", c.added_mass);
  write_group(root, "hull", c.hull);
  write_group(root, "propeller_forward", c.propeller_forward);
  write_group(root, "propeller_reverse", c.propeller_reverse);
  write_group(root, "rudder", c.rudder);
  write_group(root, "rudder_third_quadrant", c.rudder_third_quadrant);
  write_group(root, "wind", c.wind);
  write_group(root, "thruster", c.thruster);
  return root;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file", path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string* embedded(const std::string& key) {
  const auto& files = detail::embedded_files();
  auto it = files.find(key);
  return it == files.end() ? nullptr : &it->second;
}

Polygon parse_polygon(const json& j, const std::string& path) {
  const json* verts = &j;
  if (j.is_object()) {
    if (!j.contains("vertices")) throw Error("missing field", path + ".vertices");
    verts = &j.at("vertices");
  }
  if (!verts->is_array()) throw Error("expected an array of [x0, y0] pairs", path);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < verts->size(); ++i) {
    const auto& v = (*verts)[i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw Error("expected [x0, y0]", index(path, i));
    pts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  if (auto defect = polygon_defect(pts); !defect.empty()) throw Error(defect, path);
  return Polygon(std::move(pts));
}

}  // namespace

BoxBounds make_box_bounds(const BoundsSpec& spec, int m) {
  BoxBounds b;
  const std::size_t n = 4 * static_cast<std::size_t>(m) + 1;
  b.lower.resize(n);
  b.upper.resize(n);
  b.lower[0] = spec.tf_min;
  b.upper[0] = spec.tf_max;
  const double limits[4] = {spec.delta_max, spec.np_max, spec.nbt_max, spec.nst_max};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < m; ++i) {
      b.lower[1 + k * m + i] = -limits[k];
      b.upper[1 + k * m + i] = limits[k];
    }
  return b;
}

bool Scenario::operator==(const Scenario& o) const {
  return name == o.name && note == o.note && mode == o.mode && x_int == o.x_int &&
         x_des == o.x_des && tol == o.tol && weights == o.weights &&
         env.wind == o.env.wind && env.wind_enabled == o.env.wind_enabled &&
         obstacles == o.obstacles && domain == o.domain && waypoints == o.waypoints &&
         bounds == o.bounds && m == o.m && t_c == o.t_c && dt == o.dt &&
         model.params == o.model.params && model.coeffs == o.model.coeffs &&
         optimizer == o.optimizer;
}

std::vector<Diagnostic> check_scenario(const Scenario& s) {
  std::vector<Diagnostic> out;
  auto guard = [&out](const std::string& fallback_path, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      std::string msg = e.what();
      const std::string& p = e.path().empty() ? fallback_path : e.path();
      if (!e.path().empty()) msg = msg.substr(e.path().size() + 2);
      out.push_back({p, msg});
    }
  };
  guard("ship", [&] { validate(s.model.params); });
  guard("coefficients", [&] { require_all_groups(s.model.coeffs); });
  guard("domain", [&] { validate(s.domain); });
  if (s.domain.Lpp != s.model.params.Lpp || s.domain.B != s.model.params.B)
    out.push_back({"domain", "ship dimensions differ from the ship section"});
  guard("objective.tolerance", [&] {
    try {
      validate(s.tol);
    } catch (const Error& e) {
      throw Error(std::string(e.what()).substr(e.path().size() + 2), "objective." + e.path());
    }
  });
  guard("objective", [&] { validate(s.weights); });
  guard("optimizer", [&] { validate(s.optimizer); });
  if (s.m <= 0) out.push_back({"control.segments", "must be positive"});
  if (!(s.t_c > 0.0)) out.push_back({"control.segment_duration", "must be positive"});
  if (!(s.dt > 0.0)) out.push_back({"control.dt", "must be positive"});
  const auto& b = s.bounds;
  if (!(b.tf_min > 0.0) || !(b.tf_min < b.tf_max))
    out.push_back({"bounds.tf_min", "requires 0 < tf_min < tf_max"});
  if (s.m > 0 && s.t_c > 0.0 && b.tf_max > s.m * s.t_c * (1.0 + 1e-12))
    out.push_back({"bounds.tf_max", "exceeds the schedule horizon m * t_c"});
  if (!(b.delta_max > 0.0) || !(b.np_max > 0.0) || !(b.nbt_max > 0.0) || !(b.nst_max > 0.0))
    out.push_back({"bounds", "actuator limits must be positive"});
  if (!s.x_int.is_finite()) out.push_back({"initial_state", "must be finite"});
  if (!s.x_des.is_finite()) out.push_back({"desired_state", "must be finite"});
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    const std::string p = index("obstacles", i);
    if (auto d = polygon_defect(s.obstacles[i].vertices()); !d.empty()) {
      out.push_back({p, d});
      continue;
    }
    if (point_in_polygon({s.x_int.x0, s.x_int.y0}, s.obstacles[i]))
      out.push_back({p, "initial midship position lies inside this obstacle"});
  }
  for (std::size_t i = 0; i < s.waypoints.size(); ++i) {
    const auto& w = s.waypoints[i];
    if (!std::isfinite(w.x0) || !std::isfinite(w.y0) || !(w.L_tol > 0.0))
      out.push_back({index("waypoints", i), "requires finite position and L_tol > 0"});
  }
  if (!std::isfinite(s.env.wind.gamma_T) || !(s.env.wind.U_T >= 0.0))
    out.push_back({"wind", "requires finite gamma_T and U_T >= 0"});
  return out;
}

void validate(const Scenario& s) {
  const auto d = check_scenario(s);
  if (!d.empty()) throw Error(d.front().message, d.front().path);
}

HydroCoefficients parse_coefficients(const std::string& json_text) {
  return parse_coefficients_json(parse_json(json_text, "coefficients"));
}

std::string coefficients_to_json(const HydroCoefficients& c) {
  return coefficients_json(c).dump(2) + "\n";
}

HydroCoefficients load_coefficients(const std::string& ref, const std::filesystem::path& base_dir) {
  if (ref.starts_with(kBuiltinPrefix)) {
    const std::string name = ref.substr(std::string(kBuiltinPrefix).size());
    const auto* text = embedded("coefficients/" + name + ".json");
    if (!text) throw Error("unknown built-in coefficient set '" + name + "'", "coefficients");
    return parse_coefficients(*text);
  }
  std::filesystem::path p(ref);
  if (p.is_relative()) p = base_dir / p;
  return parse_coefficients(read_file(p));
}

Scenario parse_scenario_unchecked(const std::string& json_text,
                                  const std::filesystem::path& base_dir) {
  const json root = parse_json(json_text, "scenario");
  const Section top(root, "");
  Scenario s;
  if (top.has("name")) s.name = top.text("name");
  if (top.has("note")) s.note = top.text("note");
  try {
    s.mode = mode_from_string(top.text("mode"));
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw Error(e.what(), "mode");
  }

  if (top.has("ship")) s.model.params = parse_ship(Section(top.at("ship"), "ship"));
  const double lpp = s.model.params.Lpp;

  if (top.has("coefficients")) {
    const auto& c = top.at("coefficients");
    if (c.is_string()) {
      s.coefficients_ref = c.get<std::string>();
      s.model.coeffs = load_coefficients(s.coefficients_ref, base_dir);
    } else {
      s.coefficients_ref = "inline";
      s.model.coeffs = parse_coefficients_json(c);
    }
  } else {
    s.model.coeffs = load_coefficients(s.coefficients_ref, base_dir);
  }

  auto state = [&](const char* key) {
    try {
      return parse_state(Section(top.at(key), key));
    } catch (const Error& e) {
      if (!e.path().empty()) throw;
      throw Error(e.what(), key);
    }
  };
  s.x_int = state("initial_state");
  s.x_des = state("desired_state");

  // Objective defaults depend on mode and the boundary speeds.
  s.tol = default_tolerance(s.mode);
  double w_pen = 1.0e4, w_c = 1.0e10;
  double w_L = 0.1 * lpp;
  double w_U = 0.5 * (s.mode == Mode::kBerthing ? s.x_int.u : s.x_des.u);
  double L_tol = 0.5 * lpp;
  if (top.has("objective")) {
    const Section o(top.at("objective"), "objective");
    o.optional("w_pen", w_pen);
    o.optional("w_c", w_c);
    o.optional("w_L", w_L, lpp);
    o.optional("w_U", w_U);
    o.optional("L_tol", L_tol, lpp);
    if (o.has("tolerance")) {
      const Section t(o.at("tolerance"), "objective.tolerance");
      const char* keys[6] = {"x0", "u", "y0", "vm", "psi", "r"};
      for (int i = 0; i < 6; ++i) t.optional(keys[i], s.tol.values[i]);
    }
  }
  s.weights.w_pen = w_pen;
  s.weights.w_c = w_c;
  s.weights.w_L = w_L;
  s.weights.w_U = w_U;
  s.weights.L_tol = L_tol;
  s.weights.w_dim = dimension_weights(w_L, w_U);

  {
    const Section d(top.at("domain"), "domain");
    const double W = d.number("W", lpp);
    double U_min = knots_to_mps(1.0), U_max = knots_to_mps(6.0);
    int n = 13;
    d.optional("U_min", U_min);
    d.optional("U_max", U_max);
    d.integer("n_vertices", n);
    s.domain = derive_domain_config(W, lpp, s.model.params.B, U_min, U_max, n);
  }

  if (top.has("bounds")) {
    const Section b(top.at("bounds"), "bounds");
    b.optional("tf_min", s.bounds.tf_min);
    b.optional("tf_max", s.bounds.tf_max);
    b.optional("delta_max", s.bounds.delta_max);
    b.optional("np_max", s.bounds.np_max);
    b.optional("nbt_max", s.bounds.nbt_max);
    b.optional("nst_max", s.bounds.nst_max);
  }

  if (top.has("control")) {
    const Section c(top.at("control"), "control");
    c.integer("segments", s.m);
    c.optional("segment_duration", s.t_c);
    c.optional("dt", s.dt);
  }

  if (top.has("obstacles")) {
    const auto& obs = top.at("obstacles");
    if (!obs.is_array()) throw Error("expected an array", "obstacles");
    for (std::size_t i = 0; i < obs.size(); ++i)
      s.obstacles.push_back(parse_polygon(obs[i], index("obstacles", i)));
  }

  if (top.has("waypoints")) {
    const auto& wps = top.at("waypoints");
    if (!wps.is_array()) throw Error("expected an array", "waypoints");
    for (std::size_t i = 0; i < wps.size(); ++i) {
      const Section w(wps[i], index("waypoints", i));
      Waypoint wp;
      wp.x0 = w.number("x0");
      wp.y0 = w.number("y0");
      wp.L_tol = L_tol;
      w.optional("L_tol", wp.L_tol, lpp);
      s.waypoints.push_back(wp);
    }
  }

  if (top.has("wind")) {
    const Section w(top.at("wind"), "wind");
    double gamma = 0.0, U = 0.0;
    w.optional("gamma_T", gamma);
    w.optional("U_T", U);
    if (!std::isfinite(gamma) || !(U >= 0.0)) throw Error("requires finite gamma_T and U_T >= 0", "wind");
    s.env.wind = make_wind(gamma, U);
    s.env.wind_enabled = U > 0.0;
    w.boolean("enabled", s.env.wind_enabled);
  }

  if (top.has("optimizer")) {
    const Section o(top.at("optimizer"), "optimizer");
    auto& c = s.optimizer;
    o.integer("initial_population", c.initial_population);
    o.integer("max_population", c.max_population);
    o.integer("max_evaluations", c.max_evaluations);
    if (o.has("seed")) {
      const auto& v = o.at("seed");
      if (!v.is_number_unsigned()) throw Error("expected a non-negative integer", "optimizer.seed");
      c.seed = v.get<std::uint64_t>();
    }
    o.optional("initial_sigma", c.initial_sigma);
    o.optional("tol_fun_hist", c.tol_fun_hist);
    o.optional("tol_sigma", c.tol_sigma);
    o.optional("max_condition", c.max_condition);
    o.integer("threads", c.threads);
  }
  return s;
}

Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
  Scenario s = parse_scenario_unchecked(json_text, base_dir);
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.parent_path());
}

std::string scenario_to_json(const Scenario& s) {
  json root;
  root["name"] = s.name;
  if (!s.note.empty()) root["note"] = s.note;
  root["mode"] = to_string(s.mode);
  root["ship"] = ship_json(s.model.params);
  if (s.coefficients_ref.starts_with(kBuiltinPrefix))
    root["coefficients"] = s.coefficients_ref;
  else
    root["coefficients"] = coefficients_json(s.model.coeffs);
  root["initial_state"] = state_json(s.x_int);
  root["desired_state"] = state_json(s.x_des);
  const auto& t = s.tol.values;
  root["objective"] = {{"w_pen", s.weights.w_pen},
                       {"w_c", s.weights.w_c},
                       {"w_L", s.weights.w_L},
                       {"w_U", s.weights.w_U},
                       {"L_tol", s.weights.L_tol},
                       {"tolerance",
                        {{"x0", t[0]}, {"u", t[1]}, {"y0", t[2]}, {"vm", t[3]}, {"psi", t[4]}, {"r", t[5]}}}};
  root["domain"] = {{"W", s.domain.W},
                    {"U_min", s.domain.U_min},
                    {"U_max", s.domain.U_max},
                    {"n_vertices", s.domain.n_vertices}};
  root["bounds"] = {{"tf_min", s.bounds.tf_min},   {"tf_max", s.bounds.tf_max},
                    {"delta_max", s.bounds.delta_max}, {"np_max", s.bounds.np_max},
                    {"nbt_max", s.bounds.nbt_max}, {"nst_max", s.bounds.nst_max}};
  root["control"] = {{"segments", s.m}, {"segment_duration", s.t_c}, {"dt", s.dt}};
  json obs = json::array();
  for (const auto& poly : s.obstacles) {
    json verts = json::array();
    for (const auto& p : poly.vertices()) verts.push_back({p.x, p.y});
    obs.push_back({{"vertices", verts}});
  }
  root["obstacles"] = obs;
  json wps = json::array();
  for (const auto& w : s.waypoints) wps.push_back({{"x0", w.x0}, {"y0", w.y0}, {"L_tol", w.L_tol}});
  root["waypoints"] = wps;
  root["wind"] = {{"gamma_T", s.env.wind.gamma_T},
                  {"U_T", s.env.wind.U_T},
                  {"enabled", s.env.wind_enabled}};
  const auto& c = s.optimizer;
  root["optimizer"] = {{"initial_population", c.initial_population},
                       {"max_population", c.max_population},
                       {"max_evaluations", c.max_evaluations},
                       {"seed", c.seed},
                       {"initial_sigma", c.initial_sigma},
                       {"tol_fun_hist", c.tol_fun_hist},
                       {"tol_sigma", c.tol_sigma},
                       {"max_condition", c.max_condition},
                       {"threads", c.threads}};
  return root.dump(2) + "\n";
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    const std::string prefix = "scenarios/";
    for (const auto& [key, text] : detail::embedded_files())
      if (key.starts_with(prefix) && key.ends_with(".json"))
        v.push_back(key.substr(prefix.size(), key.size() - prefix.size() - 5));
    return v;
  }();
  return names;
}

bool is_builtin(const std::string& name) {
  return embedded("scenarios/" + name + ".json") != nullptr;
}

const std::string& builtin_source(const std::string& name) {
  const auto* text = embedded("scenarios/" + name + ".json");
  if (!text) {
    std::string list;
    for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
    throw Error("unknown built-in scenario '" + name + "'; valid names: " + list, "scenario");
  }
  return *text;
}

Scenario builtin(const std::string& name) { return parse_scenario(builtin_source(name), {}); }

Scenario resolve_scenario(const std::string& name_or_path) {
  if (is_builtin(name_or_path)) return builtin(name_or_path);
  if (std::filesystem::exists(name_or_path)) return load_scenario(name_or_path);
  return builtin(name_or_path);
}

}  // namespace berth
