#include "fixlab/config.hpp"

#include <fstream>
#include <set>

namespace fixlab {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config parse error in " + path + ": " + e.what());
  }
}

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& context) {
  if (!obj.is_object()) throw std::invalid_argument(context + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key()))
      throw std::invalid_argument(context + ": unknown key \"" + it.key() + "\"");
}

namespace {

double number(const json& obj, const std::string& key, std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument("missing required key \"" + key + "\"");
  }
  if (!obj[key].is_number())
    throw std::invalid_argument("key \"" + key + "\" must be a number");
  return obj[key].get<double>();
}

std::string text(const json& obj, const std::string& key,
                 std::optional<std::string> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument("missing required key \"" + key + "\"");
  }
  if (!obj[key].is_string())
    throw std::invalid_argument("key \"" + key + "\" must be a string");
  return obj[key].get<std::string>();
}

std::vector<double> number_list(const json& arr, const std::string& context) {
  if (!arr.is_array()) throw std::invalid_argument(context + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) throw std::invalid_argument(context + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

ScalarSpace parse_space(const json& spec, json& resolved) {
  std::string kind = text(spec, "kind");
  if (kind == "interval") {
    require_keys(spec, {"kind", "lo", "hi", "step", "metric", "s", "p"}, "space");
    double lo = number(spec, "lo"), hi = number(spec, "hi"), step = number(spec, "step");
    double p = number(spec, "p", 1.0);
    double s = number(spec, "s", 1.0);
    std::string metric = text(spec, "metric", std::string("euclidean"));
    resolved = {{"kind", "interval"}, {"lo", lo}, {"hi", hi},     {"step", step},
                {"metric", metric},   {"s", s},   {"p", p}};
    return make_interval_space("interval:" + metric, lo, hi, step,
                               named_scalar_metric(metric, p), s);
  }
  if (kind == "finite-points") {
    require_keys(spec, {"kind", "points", "metric", "s", "p"}, "space");
    auto points = number_list(spec.at("points"), "space.points");
    double p = number(spec, "p", 1.0);
    double s = number(spec, "s", 1.0);
    std::string metric = text(spec, "metric", std::string("euclidean"));
    resolved = {{"kind", "finite-points"}, {"points", points}, {"metric", metric},
                {"s", s},                  {"p", p}};
    return make_finite_points_space("finite:" + metric, points, named_scalar_metric(metric, p), s);
  }
  if (kind == "finite-table") {
    require_keys(spec, {"kind", "points", "table", "s"}, "space");
    auto points = number_list(spec.at("points"), "space.points");
    if (!spec.at("table").is_array())
      throw std::invalid_argument("space.table: expected a square matrix");
    std::vector<std::vector<double>> table;
    for (const auto& row : spec.at("table")) table.push_back(number_list(row, "space.table"));
    double s = number(spec, "s", 1.0);
    resolved = {{"kind", "finite-table"}, {"points", points}, {"table", spec.at("table")},
                {"s", s}};
    return make_finite_table_space("finite-table", points, table, s);
  }
  throw std::invalid_argument("unknown space kind: " + kind);
}

SelfMap<double> parse_map(const json& spec, const ScalarSpace& space, json& resolved) {
  std::string name = text(spec, "name");
  if (name == "identity") {
    require_keys(spec, {"name"}, "map");
    resolved = {{"name", "identity"}};
    return {"identity", [](double x) { return x; }};
  }
  if (name == "affine") {
    require_keys(spec, {"name", "mul", "add"}, "map");
    double mul = number(spec, "mul"), add = number(spec, "add", 0.0);
    resolved = {{"name", "affine"}, {"mul", mul}, {"add", add}};
    return {"affine", [mul, add](double x) { return mul * x + add; }};
  }
  if (name == "index-shift-down") {
    require_keys(spec, {"name"}, "map");
    resolved = {{"name", "index-shift-down"}};
    auto points = space.sample;
    return {"index-shift-down", [points](double x) {
              for (std::size_t i = 0; i < points.size(); ++i)
                if (points[i] == x) return points[i == 0 ? 0 : i - 1];
              throw std::invalid_argument("index-shift-down: point not in space sample");
            }};
  }
  if (name == "table") {
    require_keys(spec, {"name", "images"}, "map");
    auto images = number_list(spec.at("images"), "map.images");
    if (images.size() != space.sample.size())
      throw std::invalid_argument("map.images size must match the space sample");
    resolved = {{"name", "table"}, {"images", images}};
    auto points = space.sample;
    return {"table", [points, images](double x) {
              for (std::size_t i = 0; i < points.size(); ++i)
                if (points[i] == x) return images[i];
              throw std::invalid_argument("table map: point not in space sample");
            }};
  }
  throw std::invalid_argument("unknown map name: " + name);
}

AuxiliaryMap<double> parse_aux(const json& spec, json& resolved) {
  std::string name = text(spec, "name");
  if (name == "const" || name == "distinct-const") {
    require_keys(spec, {"name", "value"}, "aux");
    double value = number(spec, "value");
    resolved = {{"name", name}, {"value", value}};
    return named_scalar_aux(name, value);
  }
  if (name == "shift-second") {
    require_keys(spec, {"name", "a"}, "aux");
    double a = number(spec, "a");
    resolved = {{"name", name}, {"a", a}};
    return named_scalar_aux(name, a);
  }
  require_keys(spec, {"name"}, "aux");
  resolved = {{"name", name}};
  return named_scalar_aux(name);
}

// Assembles space/map/aux/f either from a named fixture (with optional
// overrides) or from explicit blocks.
ScalarInstance parse_instance(const json& doc, std::vector<std::string> extra_keys) {
  std::vector<std::string> allowed = {"fixture", "horizon", "step", "space", "map", "aux", "f"};
  allowed.insert(allowed.end(), extra_keys.begin(), extra_keys.end());
  require_keys(doc, allowed, "config");

  ScalarInstance inst;
  json resolved;
  if (doc.contains("fixture")) {
    std::string id = text(doc, "fixture");
    auto horizon = static_cast<std::size_t>(number(doc, "horizon", 0.0));
    double step = number(doc, "step", 0.0);
    auto fx = build_example(id, horizon, step);
    inst.space = fx.space;
    inst.map = fx.map;
    inst.aux = fx.aux;
    inst.f = fx.f;
    resolved["fixture"] = id;
    if (fx.horizon) resolved["horizon"] = static_cast<double>(fx.horizon);
    if (fx.grid_step > 0.0) resolved["step"] = fx.grid_step;
  } else {
    if (!doc.contains("space") || !doc.contains("map") || !doc.contains("aux"))
      throw std::invalid_argument("config needs either \"fixture\" or space/map/aux blocks");
    json rspace, rmap, raux;
    inst.space = parse_space(doc.at("space"), rspace);
    inst.map = parse_map(doc.at("map"), inst.space, rmap);
    inst.aux = parse_aux(doc.at("aux"), raux);
    resolved["space"] = rspace;
    resolved["map"] = rmap;
    resolved["aux"] = raux;
  }
  if (doc.contains("f")) {
    json rf;
    inst.f = parse_f(doc.at("f"), rf);
    resolved["f"] = rf;
  } else if (inst.f) {
    resolved["f"] = {{"name", inst.f->name}};
  }
  inst.resolved = std::move(resolved);
  return inst;
}

}  // namespace

FFunction parse_f(const json& spec, json& resolved) {
  if (spec.contains("name")) {
    require_keys(spec, {"name"}, "f");
    std::string name = text(spec, "name");
    resolved = {{"name", name}};
    return builtin_f(name);
  }
  require_keys(spec, {"terms", "k", "label"}, "f");
  if (!spec.contains("terms") || !spec.at("terms").is_array())
    throw std::invalid_argument("custom f needs a \"terms\" array");
  std::vector<FTerm> terms;
  for (const auto& t : spec.at("terms")) {
    require_keys(t, {"kind", "c", "q"}, "f.terms");
    std::string kind = text(t, "kind");
    FTerm term;
    term.c = number(t, "c", 1.0);
    if (kind == "ln") {
      term.kind = FTerm::Kind::log;
    } else if (kind == "linear") {
      term.kind = FTerm::Kind::linear;
    } else if (kind == "power") {
      term.kind = FTerm::Kind::power;
      term.q = number(t, "q");
    } else {
      throw std::invalid_argument("unknown f term kind: " + kind);
    }
    terms.push_back(term);
  }
  double k = number(spec, "k");
  std::string label = text(spec, "label", std::string("custom"));
  resolved = spec;
  return make_term_f(label, std::move(terms), k);
}

CertifyJob parse_certify_config(const json& doc) {
  CertifyJob job;
  job.instance = parse_instance(doc, {"kind", "margin", "reich"});
  if (!doc.contains("kind")) {
    // fixtures carry their own headline kind
    if (!doc.contains("fixture"))
      throw std::invalid_argument("certify config needs a \"kind\"");
    job.kind = build_example(text(doc, "fixture")).kind;
  } else {
    job.kind = contraction_kind_from_name(text(doc, "kind"));
  }
  job.options.margin = number(doc, "margin", 1e-9);
  if (doc.contains("reich")) {
    require_keys(doc.at("reich"), {"a", "b", "c"}, "reich");
    job.options.reich = {number(doc.at("reich"), "a"), number(doc.at("reich"), "b"),
                         number(doc.at("reich"), "c")};
  }
  job.instance.resolved["kind"] = contraction_kind_name(job.kind);
  job.instance.resolved["margin"] = job.options.margin;
  if (is_omega_kind(job.kind) && !job.instance.f)
    throw std::invalid_argument("certify: gauge kinds need an \"f\" block");
  return job;
}

PicardJob parse_picard_config(const json& doc) {
  PicardJob job;
  job.instance = parse_instance(doc, {"start", "max-iter", "tol", "omega"});
  job.start = number(doc, "start");
  job.max_iter = static_cast<std::size_t>(number(doc, "max-iter", 100.0));
  job.tol = number(doc, "tol", 0.0);
  if (doc.contains("omega")) job.omega = number(doc, "omega");
  job.instance.resolved["start"] = job.start;
  job.instance.resolved["max-iter"] = static_cast<double>(job.max_iter);
  job.instance.resolved["tol"] = job.tol;
  if (job.omega) job.instance.resolved["omega"] = *job.omega;
  return job;
}

SpaceVerifyJob parse_space_verify_config(const json& doc) {
  require_keys(doc, {"space", "witnesses", "triples", "tail-window", "tol"}, "config");
  SpaceVerifyJob job;
  if (!doc.contains("space")) throw std::invalid_argument("space-verify needs a \"space\" block");

  const json& spec = doc.at("space");
  if (text(spec, "kind") == "function-grid") {
    require_keys(spec, {"kind", "grid", "p"}, "space");
    require_keys(spec.at("grid"), {"lo", "hi", "step"}, "space.grid");
    auto grid = uniform_grid(number(spec.at("grid"), "lo"), number(spec.at("grid"), "hi"),
                             number(spec.at("grid"), "step"));
    job.function_p = number(spec, "p");
    job.function_grid_size = grid.size();
    job.resolved["space"] = {{"kind", "function-grid"},
                             {"grid-size", static_cast<double>(grid.size())},
                             {"p", *job.function_p}};
  } else {
    json rspace;
    job.instance.space = parse_space(spec, rspace);
    job.instance.map = {"identity", [](double x) { return x; }};
    job.instance.aux = named_scalar_aux("first");
    job.resolved["space"] = rspace;
  }

  if (doc.contains("witnesses")) {
    for (const auto& w : doc.at("witnesses")) {
      require_keys(w, {"seq-a", "seq-b", "target"}, "witness");
      SequenceWitness<double> witness;
      witness.seq_a = number_list(w.at("seq-a"), "witness.seq-a");
      witness.seq_b = number_list(w.at("seq-b"), "witness.seq-b");
      witness.target = number(w, "target");
      job.witnesses.push_back(std::move(witness));
    }
    job.resolved["witnesses"] = doc.at("witnesses");
  }
  if (doc.contains("triples")) {
    require_keys(doc.at("triples"), {"count", "seed"}, "triples");
    job.triple_count = static_cast<std::size_t>(number(doc.at("triples"), "count"));
    job.triple_seed = static_cast<std::uint64_t>(number(doc.at("triples"), "seed", 1.0));
    job.resolved["triples"] = {{"count", static_cast<double>(job.triple_count)},
                               {"seed", static_cast<double>(job.triple_seed)}};
  }
  job.tail_window = static_cast<std::size_t>(number(doc, "tail-window", 16.0));
  job.tol = number(doc, "tol", kDefaultTailTol);
  job.resolved["tail-window"] = static_cast<double>(job.tail_window);
  job.resolved["tol"] = job.tol;
  return job;
}

FCheckJob parse_f_check_config(const json& doc) {
  require_keys(doc, {"f", "w3-tol", "w2-floor", "suggest-k"}, "config");
  if (!doc.contains("f")) throw std::invalid_argument("f-check needs an \"f\" block");
  FCheckJob job;
  json rf;
  job.f = parse_f(doc.at("f"), rf);
  job.w3_tol = number(doc, "w3-tol", kDefaultW3Tol);
  job.w2_floor = number(doc, "w2-floor", kDefaultW2Floor);
  if (doc.contains("suggest-k")) {
    if (!doc.at("suggest-k").is_boolean())
      throw std::invalid_argument("suggest-k must be a boolean");
    job.suggest_k = doc.at("suggest-k").get<bool>();
  }
  job.resolved = {{"f", rf},
                  {"w3-tol", job.w3_tol},
                  {"w2-floor", job.w2_floor},
                  {"suggest-k", job.suggest_k}};
  return job;
}

TerrainJob parse_terrain_config(const json& doc) {
  require_keys(doc,
               {"grid", "gamma", "speed", "gain-k", "scale-g", "delta", "sigma-max", "p",
                "shift-a", "omega", "plant-mode", "ode", "max-iterations", "tol", "blowup",
                "start"},
               "config");
  TerrainJob job;
  TerrainConfig& cfg = job.config;

  if (doc.contains("grid")) {
    require_keys(doc.at("grid"), {"lo", "hi", "step"}, "grid");
    cfg.xi_lo = number(doc.at("grid"), "lo", 0.0);
    cfg.xi_hi = number(doc.at("grid"), "hi", 100.0);
    cfg.step = number(doc.at("grid"), "step", 0.5);
  }
  if (doc.contains("gamma")) {
    const json& g = doc.at("gamma");
    std::string name = text(g, "name");
    if (name == "flat") {
      require_keys(g, {"name", "level"}, "gamma");
      cfg.gamma.kind = GammaSpec::Kind::flat;
      cfg.gamma.level = number(g, "level", 1.0);
    } else if (name == "ramp") {
      require_keys(g, {"name", "level", "slope"}, "gamma");
      cfg.gamma.kind = GammaSpec::Kind::ramp;
      cfg.gamma.level = number(g, "level", 0.0);
      cfg.gamma.slope = number(g, "slope", 0.01);
    } else if (name == "hills") {
      require_keys(g, {"name", "amplitude", "wavelength", "offset"}, "gamma");
      cfg.gamma.kind = GammaSpec::Kind::hills;
      cfg.gamma.amplitude = number(g, "amplitude", 0.3);
      cfg.gamma.wavelength = number(g, "wavelength", 50.0);
      cfg.gamma.offset = number(g, "offset", 1.0);
    } else if (name == "values") {
      require_keys(g, {"name", "values"}, "gamma");
      cfg.gamma.kind = GammaSpec::Kind::values;
      cfg.gamma.values = number_list(g.at("values"), "gamma.values");
    } else {
      throw std::invalid_argument("unknown gamma generator: " + name);
    }
  }
  cfg.speed = number(doc, "speed", cfg.speed);
  cfg.gain_k = number(doc, "gain-k", cfg.gain_k);
  cfg.scale_g = number(doc, "scale-g", cfg.scale_g);
  cfg.delta = number(doc, "delta", cfg.delta);
  cfg.sigma_max = number(doc, "sigma-max", cfg.sigma_max);
  cfg.p = number(doc, "p", cfg.p);
  cfg.shift_a = number(doc, "shift-a", cfg.shift_a);
  cfg.omega = number(doc, "omega", cfg.omega);
  if (doc.contains("plant-mode")) {
    std::string mode = text(doc, "plant-mode");
    if (mode == "linear") cfg.plant_mode = PlantMode::linear;
    else if (mode == "integral") cfg.plant_mode = PlantMode::integral;
    else if (mode == "ode") cfg.plant_mode = PlantMode::ode;
    else throw std::invalid_argument("unknown plant mode: " + mode);
  }
  if (doc.contains("ode")) {
    require_keys(doc.at("ode"), {"a1", "a2", "b0", "b1", "b2"}, "ode");
    cfg.ode.a1 = number(doc.at("ode"), "a1", cfg.ode.a1);
    cfg.ode.a2 = number(doc.at("ode"), "a2", cfg.ode.a2);
    cfg.ode.b0 = number(doc.at("ode"), "b0", cfg.ode.b0);
    cfg.ode.b1 = number(doc.at("ode"), "b1", cfg.ode.b1);
    cfg.ode.b2 = number(doc.at("ode"), "b2", cfg.ode.b2);
  }
  cfg.max_iterations = static_cast<std::size_t>(number(doc, "max-iterations", 50.0));
  cfg.tol = number(doc, "tol", cfg.tol);
  cfg.blowup = number(doc, "blowup", cfg.blowup);
  if (doc.contains("start")) cfg.kappa0 = number_list(doc.at("start"), "start");
  cfg.validate();

  json rgamma;
  switch (cfg.gamma.kind) {
    case GammaSpec::Kind::flat:
      rgamma = {{"name", "flat"}, {"level", cfg.gamma.level}};
      break;
    case GammaSpec::Kind::ramp:
      rgamma = {{"name", "ramp"}, {"level", cfg.gamma.level}, {"slope", cfg.gamma.slope}};
      break;
    case GammaSpec::Kind::hills:
      rgamma = {{"name", "hills"},
                {"amplitude", cfg.gamma.amplitude},
                {"wavelength", cfg.gamma.wavelength},
                {"offset", cfg.gamma.offset}};
      break;
    case GammaSpec::Kind::values:
      rgamma = {{"name", "values"}, {"count", static_cast<double>(cfg.gamma.values.size())}};
      break;
  }
  job.resolved = {{"grid", {{"lo", cfg.xi_lo}, {"hi", cfg.xi_hi}, {"step", cfg.step}}},
                  {"gamma", rgamma},
                  {"speed", cfg.speed},
                  {"gain-k", cfg.gain_k},
                  {"scale-g", cfg.scale_g},
                  {"delta", cfg.delta},
                  {"sigma-max", cfg.sigma_max},
                  {"p", cfg.p},
                  {"shift-a", cfg.shift_a},
                  {"omega", cfg.omega},
                  {"plant-mode", plant_mode_name(cfg.plant_mode)},
                  {"ode",
                   {{"a1", cfg.ode.a1},
                    {"a2", cfg.ode.a2},
                    {"b0", cfg.ode.b0},
                    {"b1", cfg.ode.b1},
                    {"b2", cfg.ode.b2}}},
                  {"max-iterations", static_cast<double>(cfg.max_iterations)},
                  {"tol", cfg.tol},
                  {"blowup", cfg.blowup},
                  {"start", cfg.kappa0.empty() ? json("zero") : json("custom")}};
  return job;
}

}  // namespace fixlab
