#include "cuav/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "cuav/errors.hpp"
#include "cuav/units.hpp"

namespace cuav {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

class Reader {
 public:
  Reader(const toml::table& t, std::string where) : t_(t), where_(std::move(where)) {}

  void allow_only(const std::set<std::string>& keys) const {
    for (const auto& [k, v] : t_) {
      if (!keys.count(std::string(k.str()))) {
        fail("unknown key '" + std::string(k.str()) + "'");
      }
    }
  }

  // Bare number, or a string "<number> <unit>" whose unit must match exactly.
  std::optional<double> scalar(const std::string& key, const std::string& unit) const {
    const toml::node* n = t_.get(key);
    if (!n) return std::nullopt;
    if (auto v = n->value<double>()) return *v;
    if (auto str = n->value<std::string>()) return from_string(key, *str, unit);
    fail("'" + key + "' must be a number or a string with unit '" + unit + "'");
  }

  std::optional<Vec2> point(const std::string& key) const {
    const toml::node* n = t_.get(key);
    if (!n) return std::nullopt;
    return as_point(*n, key);
  }

  Vec2 as_point(const toml::node& n, const std::string& what) const {
    const toml::array* a = n.as_array();
    if (!a || a->size() != 2) fail("'" + what + "' must be a two-element array [x, y]");
    auto x = (*a)[0].value<double>();
    auto y = (*a)[1].value<double>();
    if (!x || !y) fail("'" + what + "' must contain numbers");
    return Vec2(*x, *y);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(where_ + ": " + msg); }

  const toml::table& table() const { return t_; }

 private:
  double from_string(const std::string& key, const std::string& str, const std::string& unit) const {
    const char* begin = str.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || errno == ERANGE) fail("'" + key + "': cannot parse number in \"" + str + "\"");
    const std::string got = trim(std::string_view(end));
    if (got != unit) {
      fail("'" + key + "': expected unit '" + unit + "', got '" + (got.empty() ? "<none>" : got) +
           "'");
    }
    return v;
  }

  const toml::table& t_;
  std::string where_;
};

toml::table parse_toml(std::string_view text, std::string_view source) {
  try {
    return toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
       << e.description();
    throw ConfigError(os.str());
  }
}

MissionProfile read_mission(const Reader& r) {
  r.allow_only({"q_initial", "q_final", "z_initial", "z_final", "v_h", "v_a", "v_d", "t_seconds",
                "n_slots"});
  MissionProfile m;
  if (auto v = r.point("q_initial")) m.q_initial = *v;
  if (auto v = r.point("q_final")) m.q_final = *v;
  if (auto v = r.scalar("z_initial", "m")) m.z_initial = *v;
  if (auto v = r.scalar("z_final", "m")) m.z_final = *v;
  if (auto v = r.scalar("v_h", "m/s")) m.v_h = *v;
  if (auto v = r.scalar("v_a", "m/s")) m.v_a = *v;
  if (auto v = r.scalar("v_d", "m/s")) m.v_d = *v;
  if (auto v = r.scalar("t_seconds", "s")) m.duration_t = *v;
  if (const toml::node* n = r.table().get("n_slots")) {
    auto v = n->value<int64_t>();
    if (!v || *v < 0) r.fail("'n_slots' must be a non-negative integer");
    m.n_slots = static_cast<std::size_t>(*v);
  }
  return m;
}

const std::set<std::string> kScenarioKeys = {"prs",       "beta_u_db", "beta_0_db",
                                             "sigma2_dbm", "alpha",     "gamma_dbm",
                                             "p_max_dbm", "h_min_m",   "h_max_m"};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string num(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep floats recognizable as floats.
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

ScenarioFile parse_scenario(std::string_view toml_text, std::string_view source_name) {
  const toml::table root = parse_toml(toml_text, source_name);
  const std::string src(source_name);
  Reader r(root, src);

  std::set<std::string> keys = kScenarioKeys;
  keys.insert("mission");
  r.allow_only(keys);

  ScenarioParams p;
  const toml::array* prs = root.get_as<toml::array>("prs");
  if (!prs) r.fail("missing required array 'prs'");
  for (std::size_t i = 0; i < prs->size(); ++i) {
    p.pr_locations.push_back(r.as_point((*prs)[i], "prs[" + std::to_string(i) + "]"));
  }
  if (auto v = r.scalar("beta_u_db", "dB")) p.beta_u = db_to_linear(*v);
  if (auto v = r.scalar("beta_0_db", "dB")) p.beta_0 = db_to_linear(*v);
  if (auto v = r.scalar("sigma2_dbm", "dBm")) p.sigma2 = dbm_to_watts(*v);
  if (auto v = r.scalar("alpha", "")) p.alpha = *v;
  if (auto v = r.scalar("gamma_dbm", "dBm")) p.gamma_it = dbm_to_watts(*v);
  if (auto v = r.scalar("p_max_dbm", "dBm")) p.p_max = dbm_to_watts(*v);
  if (auto v = r.scalar("h_min_m", "m")) p.h_min = *v;
  if (auto v = r.scalar("h_max_m", "m")) p.h_max = *v;

  std::optional<Scenario> scenario;
  try {
    scenario.emplace(std::move(p));
  } catch (const InvalidArgument& e) {
    r.fail(e.what());
  }

  ScenarioFile out{*scenario, std::nullopt};
  if (const toml::node* n = root.get("mission")) {
    const toml::table* mt = n->as_table();
    if (!mt) r.fail("'mission' must be a table");
    Reader mr(*mt, src + " [mission]");
    MissionProfile m = read_mission(mr);
    try {
      m.validate(out.scenario);
    } catch (const InvalidArgument& e) {
      mr.fail(e.what());
    }
    out.mission = m;
  }
  return out;
}

ScenarioFile load_scenario(const std::string& path) { return parse_scenario(read_file(path), path); }

MissionProfile parse_mission(std::string_view toml_text, std::string_view source_name) {
  const toml::table root = parse_toml(toml_text, source_name);
  const std::string src(source_name);
  if (const toml::node* n = root.get("mission")) {
    const toml::table* mt = n->as_table();
    if (!mt) throw ConfigError(src + ": 'mission' must be a table");
    // A full scenario file may be passed as the mission file too.
    Reader top(root, src);
    std::set<std::string> keys = kScenarioKeys;
    keys.insert("mission");
    top.allow_only(keys);
    return read_mission(Reader(*mt, src + " [mission]"));
  }
  return read_mission(Reader(root, src));
}

MissionProfile load_mission(const std::string& path) { return parse_mission(read_file(path), path); }

std::string format_scenario(const Scenario& s, const std::optional<MissionProfile>& m) {
  std::ostringstream os;
  os << "prs = [";
  for (std::size_t k = 0; k < s.num_prs(); ++k) {
    if (k) os << ", ";
    os << "[" << num(s.pr(k).x()) << ", " << num(s.pr(k).y()) << "]";
  }
  os << "]\n";
  os << "beta_u_db = " << num(linear_to_db(s.beta_u())) << "\n";
  os << "beta_0_db = " << num(linear_to_db(s.beta_0())) << "\n";
  os << "sigma2_dbm = " << num(watts_to_dbm(s.sigma2())) << "\n";
  os << "alpha = " << num(s.alpha()) << "\n";
  os << "gamma_dbm = " << num(watts_to_dbm(s.gamma_it())) << "\n";
  os << "p_max_dbm = " << num(watts_to_dbm(s.p_max())) << "\n";
  os << "h_min_m = " << num(s.h_min()) << "\n";
  os << "h_max_m = " << num(s.h_max()) << "\n";
  if (m) {
    os << "\n[mission]\n";
    os << "q_initial = [" << num(m->q_initial.x()) << ", " << num(m->q_initial.y()) << "]\n";
    os << "q_final = [" << num(m->q_final.x()) << ", " << num(m->q_final.y()) << "]\n";
    os << "z_initial = " << num(m->z_initial) << "\n";
    os << "z_final = " << num(m->z_final) << "\n";
    os << "v_h = " << num(m->v_h) << "\n";
    os << "v_a = " << num(m->v_a) << "\n";
    os << "v_d = " << num(m->v_d) << "\n";
    os << "t_seconds = " << num(m->duration_t) << "\n";
    os << "n_slots = " << m->n_slots << "\n";
  }
  return os.str();
}

void save_scenario(const std::string& path, const Scenario& s, const std::optional<MissionProfile>& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << format_scenario(s, m);
  if (!out) throw ConfigError(path + ": write failed");
}

}  // namespace cuav
