#include "groupoidal/json_io.hpp"

#include <fstream>
#include <sstream>

#include "groupoidal/errors.hpp"

namespace groupoidal {

namespace {

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field: ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad field ") + key + ": " + e.what());
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? get<T>(j, key) : fallback;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

FiniteGroupoid construct_standard(const std::string& kind, const Json& params) {
  if (kind == "pair") return make_pair_groupoid(get<int>(params, "n"));
  if (kind == "cyclic") return make_cyclic_group(get<int>(params, "n"));
  if (kind == "symmetric") return make_symmetric_group(get<int>(params, "n"));
  if (kind == "group")
    return make_group(get<std::vector<std::vector<int>>>(params, "table"),
                      get_or<std::vector<std::string>>(params, "labels", {}));
  if (kind == "z2-swap") return make_action_groupoid(z2_swap_action());
  if (kind == "action") {
    FiniteGroupAction a{groupoid_from_json(get<Json>(params, "group")), get<int>(params, "carrier"),
                        get<std::vector<std::vector<int>>>(params, "act")};
    check_action(a);
    return make_action_groupoid(a);
  }
  if (kind == "fibred-pair") return make_fibred_pair_groupoid(get<std::vector<int>>(params, "projection"));
  if (kind == "product")
    return make_product_groupoid(groupoid_from_json(get<Json>(params, "left")),
                                 groupoid_from_json(get<Json>(params, "right")));
  throw InputError("unknown groupoid kind: " + kind);
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  const auto t = g.tables();
  Json arrows = Json::array();
  for (int a = 0; a < g.num_arrows(); ++a)
    arrows.push_back({{"id", a}, {"src", t.src[a]}, {"tgt", t.tgt[a]}, {"label", g.arrow_label(a)}});
  Json mul = Json::array();
  for (const auto& m : t.mul) mul.push_back({m[0], m[1], m[2]});
  Json objects = Json::array();
  for (int m = 0; m < g.num_objects(); ++m) objects.push_back(g.object_label(m));
  return {{"objects", g.num_objects()}, {"object_labels", objects}, {"arrows", arrows},
          {"units", t.unit}, {"inv", t.inv}, {"mul", mul}};
}

FiniteGroupoid groupoid_from_json(const Json& j) {
  if (j.is_object() && j.contains("kind")) return construct_standard(get<std::string>(j, "kind"), j);
  GroupoidTables t;
  t.objects = get<int>(j, "objects");
  const Json arrows = get<Json>(j, "arrows");
  if (!arrows.is_array()) throw InputError("arrows must be an array");
  const auto n = arrows.size();
  t.src.assign(n, -1);
  t.tgt.assign(n, -1);
  t.arrow_labels.assign(n, "");
  for (const auto& a : arrows) {
    const int id = get<int>(a, "id");
    if (id < 0 || static_cast<std::size_t>(id) >= n) throw InputError("arrow id out of range");
    t.src[id] = get<int>(a, "src");
    t.tgt[id] = get<int>(a, "tgt");
    t.arrow_labels[id] = get_or<std::string>(a, "label", "");
  }
  bool labelled = false;
  for (const auto& l : t.arrow_labels) labelled = labelled || !l.empty();
  if (!labelled) t.arrow_labels.clear();
  t.unit = get<std::vector<int>>(j, "units");
  t.inv = get<std::vector<int>>(j, "inv");
  for (const auto& m : get<std::vector<std::vector<int>>>(j, "mul")) {
    if (m.size() != 3) throw InputError("mul entries are [a, b, a.b]");
    t.mul.push_back({m[0], m[1], m[2]});
  }
  t.object_labels = get_or<std::vector<std::string>>(j, "object_labels", {});
  return FiniteGroupoid(std::move(t));
}

Json bisection_to_json(const Bisection& b) { return b.assign; }

Bisection bisection_from_json(const Json& j) {
  try {
    return Bisection{j.get<std::vector<Arrow>>()};
  } catch (const Json::exception& e) {
    throw InputError(std::string("bisections are arrays of arrow ids: ") + e.what());
  }
}

int base_point_from_json(const CechBase& base, const Json& j) {
  if (j.is_string()) return base.index_of(j.get<std::string>());
  if (j.is_number_integer()) {
    const int s = j.get<int>();
    if (s < 0 || s >= base.size()) throw InputError("base point out of range");
    return s;
  }
  throw InputError("base points are indices or labels");
}

Json bundle_to_json(const PrincipaloidBundle& bundle) {
  const auto& base = bundle.base();
  Json cover = Json::array();
  for (int i = 0; i < base.num_charts(); ++i) cover.push_back(base.chart(i));
  Json cocycle = Json::array();
  for (const auto& [key, b] : bundle.cocycle().entries()) {
    auto [i, j, s] = key;
    cocycle.push_back({{"i", i}, {"j", j}, {"sigma", base.label(s)}, {"bisection", b.assign}});
  }
  return {{"base", base.labels()}, {"cover", cover}, {"cocycle", cocycle},
          {"groupoid", groupoid_to_json(bundle.fibre())}};
}

PrincipaloidBundle bundle_from_json(const Json& j, bool skip_validation) {
  CechBase base(get<std::vector<std::string>>(j, "base"), get<std::vector<std::vector<int>>>(j, "cover"));
  FiniteGroupoid g = groupoid_from_json(get<Json>(j, "groupoid"));
  Cocycle c;
  for (const auto& e : get_or<Json>(j, "cocycle", Json::array())) {
    const int i = get<int>(e, "i"), k = get<int>(e, "j");
    if (i < 0 || k < 0 || i >= base.num_charts() || k >= base.num_charts())
      throw InputError("chart index out of range");
    c.set(i, k, base_point_from_json(base, get<Json>(e, "sigma")), bisection_from_json(get<Json>(e, "bisection")));
  }
  return PrincipaloidBundle(std::move(base), std::move(c), std::move(g), skip_validation);
}

Json automorphism_to_json(const AutomorphismData& d) {
  Json gamma = Json::array();
  for (const auto& [key, b] : d.gamma) {
    auto [j, i, s] = key;
    gamma.push_back({{"j", j}, {"i", i}, {"sigma", s}, {"bisection", b.assign}});
  }
  return {{"f", d.f}, {"f_inv", d.f_inv}, {"gamma", gamma}};
}

AutomorphismData automorphism_from_json(const CechBase& base, const Json& j) {
  AutomorphismData d;
  d.f = get<std::vector<int>>(j, "f");
  d.f_inv = get<std::vector<int>>(j, "f_inv");
  for (const auto& e : get<Json>(j, "gamma"))
    d.gamma[{get<int>(e, "j"), get<int>(e, "i"), base_point_from_json(base, get<Json>(e, "sigma"))}] =
        bisection_from_json(get<Json>(e, "bisection"));
  return d;
}

Json atiyah_element_to_json(const AtiyahGroupoid& at, const AtiyahElement& e) {
  const auto& P = at.bundle();
  return {P.base().label(e.sigma1), P.fibre().arrow_label(e.g), P.base().label(e.sigma2), e.chart1, e.chart2};
}

Json report_to_json(const ValidationReport& r) {
  Json checks = Json::object();
  for (const auto& [name, count] : r.evaluated())
    checks[name] = {{"evaluated", count}, {"failures", r.failures(name)}, {"passed", r.passed(name)}};
  Json violations = Json::array();
  for (const auto& v : r.violations())
    violations.push_back({{"check", v.check}, {"detail", v.detail}, {"witness", v.witness}});
  return {{"ok", r.ok()}, {"checks", checks}, {"violations", violations}};
}

Vec vec_from_json(const Json& j) {
  try {
    auto v = j.get<std::vector<double>>();
    return Eigen::Map<Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
  } catch (const Json::exception& e) {
    throw InputError(std::string("expected a number array: ") + e.what());
  }
}

Json vec_to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec_to_json(m.row(r).transpose()));
  return rows;
}

namespace {

Phase phase_from_json(const Json& j) {
  Phase p;
  p.offset = get_or<double>(j, "offset", 0.0);
  p.amplitude = get_or<double>(j, "amplitude", 0.0);
  p.radial = get_or<double>(j, "radial", 0.0);
  if (j.contains("slope")) p.slope = vec_from_json(j.at("slope"));
  if (j.contains("frequency")) p.frequency = vec_from_json(j.at("frequency"));
  return p;
}

Json phase_to_json(const Phase& p) {
  Json j{{"offset", p.offset}, {"amplitude", p.amplitude}, {"radial", p.radial}};
  if (p.slope.size()) j["slope"] = vec_to_json(p.slope);
  if (p.frequency.size()) j["frequency"] = vec_to_json(p.frequency);
  return j;
}

}  // namespace

ScenarioParams scenario_from_json(const Json& j) {
  ScenarioParams p;
  if (j.is_object() && j.contains("scenario")) {
    p = scenario_params_by_name(get<std::string>(j, "scenario"));
  } else {
    p.name = get_or<std::string>(j, "name", "custom");
    p.group = get<std::string>(j, "group");
    p.base_dim = get<int>(j, "base_dim");
    for (const auto& c : get<Json>(j, "charts"))
      p.charts.push_back({vec_from_json(get<Json>(c, "lo")), vec_from_json(get<Json>(c, "hi"))});
    for (const auto& f : get<Json>(j, "frames"))
      p.frames.push_back({vec_from_json(get<Json>(f, "axis")), phase_from_json(get_or<Json>(f, "phase", Json::object()))});
  }
  p.config.fd_step = get_or<double>(j, "fd_step", p.config.fd_step);
  p.config.ode_step = get_or<double>(j, "ode_step", p.config.ode_step);
  p.config.tolerance = get_or<double>(j, "tolerance", p.config.tolerance);
  p.config.newton.tolerance = get_or<double>(j, "newton_tolerance", p.config.newton.tolerance);
  return p;
}

Json scenario_to_json(const ScenarioParams& p) {
  Json charts = Json::array(), frames = Json::array();
  for (const auto& c : p.charts) charts.push_back({{"lo", vec_to_json(c.lo)}, {"hi", vec_to_json(c.hi)}});
  for (const auto& f : p.frames) frames.push_back({{"axis", vec_to_json(f.axis)}, {"phase", phase_to_json(f.phase)}});
  return {{"name", p.name},
          {"group", p.group},
          {"base_dim", p.base_dim},
          {"charts", charts},
          {"frames", frames},
          {"fd_step", p.config.fd_step},
          {"ode_step", p.config.ode_step},
          {"tolerance", p.config.tolerance},
          {"newton_tolerance", p.config.newton.tolerance}};
}

BasePath path_from_json(const Json& j) {
  BasePath path;
  if (j.contains("polyline")) {
    std::vector<Vec> pts;
    for (const auto& p : get<Json>(j, "polyline")) pts.push_back(vec_from_json(p));
    if (pts.size() < 2) throw InputError("polyline needs two points");
    const double segs = static_cast<double>(pts.size() - 1);
    auto locate = [pts, segs](double t) {
      const double x = std::clamp(t, 0.0, 1.0) * segs;
      const auto k = std::min(static_cast<std::size_t>(x), pts.size() - 2);
      return std::make_pair(k, x - static_cast<double>(k));
    };
    // Each segment is timed by the smootherstep 6u^5 - 15u^4 + 10u^3, so the
    // curve is C^2 and halts at every vertex.
    path.sigma = [pts, locate](double t) {
      auto [k, u] = locate(t);
      const double w = u * u * u * (u * (6 * u - 15) + 10);
      return (pts[k] + w * (pts[k + 1] - pts[k])).eval();
    };
    path.velocity = [pts, locate, segs](double t) {
      auto [k, u] = locate(t);
      const double dw = 30 * u * u * (u - 1) * (u - 1);
      return (segs * dw * (pts[k + 1] - pts[k])).eval();
    };
  } else {
    path = straight_path(vec_from_json(get<Json>(j, "from")), vec_from_json(get<Json>(j, "to")));
  }
  try {
    for (const auto& leg : get_or<Json>(j, "itinerary", Json::array()))
      path.itinerary.emplace_back(leg.at(0).get<double>(), leg.at(1).get<int>());
  } catch (const Json::exception& e) {
    throw InputError(std::string("itinerary legs are [t, chart]: ") + e.what());
  }
  return path;
}

LocalConnectionData connection_from_json(const MatrixGroupScenario& sc, const Json& doc) {
  const Json conn = doc.value("connection", Json("constructed"));
  const std::string kind = conn.is_string() ? conn.get<std::string>() : conn.value("kind", std::string());
  if (kind == "constructed") return construct_connection(sc, box_partition(sc));
  if (kind == "zero") return zero_connection(sc);
  if (kind == "constant") {
    std::vector<Mat> x;
    for (const auto& c : conn.at("coefficients")) x.push_back(from_coefficients(sc.group().basis, vec_from_json(c)));
    if (static_cast<int>(x.size()) != sc.base_dim()) throw InputError("one coefficient vector per base direction");
    return constant_connection(sc, std::move(x));
  }
  throw InputError("unknown connection kind: " + kind);
}

}  // namespace groupoidal
