#include "mpmsa/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mpmsa/text.hpp"

namespace mpmsa {

namespace {

struct Field {
  ConfigKey name;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_shortest(v[i]);
  return s;
}

template <typename T>
std::string join_ints(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& what) {
  std::vector<double> v;
  if (trim(s).empty()) return v;
  for (const std::string& t : split(s, ',')) v.push_back(parse_double(trim(t), what));
  return v;
}

template <typename T>
std::vector<T> parse_ints(const std::string& s, const std::string& what) {
  std::vector<T> v;
  if (trim(s).empty()) return v;
  for (const std::string& t : split(s, ',')) v.push_back(static_cast<T>(parse_integer(trim(t), what)));
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const long long v = parse_integer(s, what);
  if (v < INT_MIN || v > INT_MAX) throw ConfigError(what + ": out of range");
  return static_cast<int>(v);
}

std::uint64_t parse_seed(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) throw ConfigError(what + ": expected an unsigned integer");
  return v;
}

#define MPMSA_DOUBLE(sec, name, member)                                                        \
  Field {                                                                                     \
    {sec, name}, [](const ExperimentConfig& c) { return format_shortest(c.member); },         \
        [](ExperimentConfig& c, const std::string& s) { c.member = parse_double(s, name); }   \
  }
#define MPMSA_INT(sec, name, member)                                                           \
  Field {                                                                                     \
    {sec, name}, [](const ExperimentConfig& c) { return std::to_string(c.member); },          \
        [](ExperimentConfig& c, const std::string& s) { c.member = parse_int(s, name); }      \
  }
#define MPMSA_STRING(sec, name, member)                                                        \
  Field {                                                                                     \
    {sec, name}, [](const ExperimentConfig& c) { return c.member; },                          \
        [](ExperimentConfig& c, const std::string& s) { c.member = s; }                       \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      MPMSA_STRING("model", "graph", graph),
      MPMSA_INT("model", "N", N),
      MPMSA_STRING("model", "distribution", distribution),
      MPMSA_STRING("model", "interaction", interaction),
      MPMSA_DOUBLE("model", "g", g),
      Field{{"model", "g_grid"}, [](const ExperimentConfig& c) { return join_doubles(c.g_grid); },
            [](ExperimentConfig& c, const std::string& s) { c.g_grid = parse_doubles(s, "g_grid"); }},

      Field{{"params", "mode"}, [](const ExperimentConfig& c) { return to_string(c.params.mode); },
            [](ExperimentConfig& c, const std::string& s) { c.params.mode = parse_mode(s); }},
      MPMSA_INT("params", "N_star", params.N_star),
      MPMSA_DOUBLE("params", "zeta", params.zeta),
      MPMSA_DOUBLE("params", "kappa", params.kappa),
      MPMSA_DOUBLE("params", "beta", params.beta),
      MPMSA_DOUBLE("params", "delta", params.delta),
      MPMSA_DOUBLE("params", "m_star", params.m_star),
      MPMSA_DOUBLE("params", "nu_star", params.nu_star),
      MPMSA_INT("params", "K", params.K),
      Field{{"params", "B"}, [](const ExperimentConfig& c) { return std::to_string(c.params.B); },
            [](ExperimentConfig& c, const std::string& s) { c.params.B = parse_integer(s, "B"); }},
      MPMSA_DOUBLE("params", "alpha", params.alpha),
      MPMSA_DOUBLE("params", "tau", params.tau),
      MPMSA_DOUBLE("params", "P_star", params.P_star),
      Field{{"params", "L0"}, [](const ExperimentConfig& c) { return std::to_string(c.params.L0); },
            [](ExperimentConfig& c, const std::string& s) { c.params.L0 = parse_integer(s, "L0"); }},
      MPMSA_DOUBLE("params", "d", params.d),

      MPMSA_STRING("experiment", "kind", kind),
      Field{{"experiment", "trials"}, [](const ExperimentConfig& c) { return std::to_string(c.trials); },
            [](ExperimentConfig& c, const std::string& s) { c.trials = parse_integer(s, "trials"); }},
      Field{{"experiment", "seed"}, [](const ExperimentConfig& c) { return std::to_string(c.seed); },
            [](ExperimentConfig& c, const std::string& s) { c.seed = parse_seed(s, "seed"); }},
      MPMSA_STRING("experiment", "out", out),
      Field{{"experiment", "center"}, [](const ExperimentConfig& c) { return join_ints(c.center); },
            [](ExperimentConfig& c, const std::string& s) { c.center = parse_ints<Vertex>(s, "center"); }},
      Field{{"experiment", "center2"}, [](const ExperimentConfig& c) { return join_ints(c.center2); },
            [](ExperimentConfig& c, const std::string& s) { c.center2 = parse_ints<Vertex>(s, "center2"); }},
      MPMSA_INT("experiment", "radius", radius),
      MPMSA_INT("experiment", "kmax", kmax),
      MPMSA_DOUBLE("experiment", "energy", energy),
      Field{{"experiment", "energies"}, [](const ExperimentConfig& c) { return join_doubles(c.energies); },
            [](ExperimentConfig& c, const std::string& s) { c.energies = parse_doubles(s, "energies"); }},
      Field{{"experiment", "s_grid"}, [](const ExperimentConfig& c) { return join_doubles(c.s_grid); },
            [](ExperimentConfig& c, const std::string& s) { c.s_grid = parse_doubles(s, "s_grid"); }},
      Field{{"experiment", "q_sizes"}, [](const ExperimentConfig& c) { return join_ints(c.q_sizes); },
            [](ExperimentConfig& c, const std::string& s) { c.q_sizes = parse_ints<int>(s, "q_sizes"); }},
      MPMSA_INT("experiment", "ell", ell),
      MPMSA_DOUBLE("experiment", "level", level),
      MPMSA_DOUBLE("experiment", "shift", shift),
      MPMSA_INT("experiment", "batches", batches),
      MPMSA_INT("experiment", "volume_budget", volume_budget),
      MPMSA_INT("experiment", "vertex_budget", vertex_budget),
  };
  return f;
}

#undef MPMSA_DOUBLE
#undef MPMSA_INT
#undef MPMSA_STRING

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    for (const Field& f : fields()) k.push_back(f.name);
    return k;
  }();
  return keys;
}

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::pair<std::string, std::string>, const Field*> index;
  for (const Field& f : fields()) index[{f.name.section, f.name.key}] = &f;
  ExperimentConfig c;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "params" && section != "experiment")
        throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = index.find({section, key});
    if (it == index.end()) throw ConfigError(where + ": unknown key " + section + "." + key);
    it->second->set(c, value);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize(const ExperimentConfig& c) {
  std::string out, section;
  for (const Field& f : fields()) {
    if (f.name.section != section) {
      section = f.name.section;
      out += (out.empty() ? "[" : "\n[") + section + "]\n";
    }
    out += f.name.key + " = " + f.get(c) + "\n";
  }
  return out;
}

std::vector<std::string> validate_config(const ExperimentConfig& c) {
  std::vector<std::string> v;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) v.push_back(what);
  };
  auto parses = [&](auto&& fn, const std::string& what) {
    try {
      fn();
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const std::exception& e) {
      v.push_back(what + ": " + e.what());
    }
  };
  parses([&] { build_graph(c.graph, c.vertex_budget); }, "graph");
  parses([&] { parse_distribution(c.distribution); }, "distribution");
  parses([&] { parse_interaction(c.interaction); }, "interaction");
  check(c.N >= 1, "N >= 1");
  check(c.trials >= 1, "trials >= 1");
  check(c.radius >= 0, "radius >= 0");
  check(c.kmax >= 0, "kmax >= 0");
  check(c.ell >= 0, "ell >= 0");
  check(c.batches >= 1, "batches >= 1");
  check(c.volume_budget >= 1, "volume_budget >= 1");
  check(c.vertex_budget >= 1, "vertex_budget >= 1");
  check(c.level >= 0, "level >= 0");
  check(c.center.empty() || static_cast<int>(c.center.size()) == c.N, "center has N coordinates");
  check(c.center2.empty() || static_cast<int>(c.center2.size()) == c.N, "center2 has N coordinates");
  for (const std::string& s : validate_structure(c.params)) v.push_back(s);
  return v;
}

}  // namespace mpmsa
