#include <cvlab/config_file.hpp>

#include <cvlab/errors.hpp>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace cvlab {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string s) {
  s = trim(std::move(s));
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') &&
      s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

// INI values may carry trailing "; comment" text.
std::string value_of(const std::string& raw) {
  std::string s = trim(raw);
  if (!s.empty() && (s.front() == '"' || s.front() == '\'')) {
    const auto close = s.find(s.front(), 1);
    if (close != std::string::npos) return s.substr(1, close - 1);
    return s;
  }
  const auto semi = s.find_first_of(";#");
  if (semi != std::string::npos) s = s.substr(0, semi);
  return unquote(s);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end || v.empty())
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc{} || r.ptr != end || v.empty())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v +
                      "'");
  return out;
}

}  // namespace

SurfaceModel parse_surface_config(const std::string& text,
                                  const std::string& fallback_name) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("malformed config: " + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }

  std::map<std::string, std::string> top;
  std::map<int, const pt::ptree*> end_sections;
  for (const auto& [key, child] : tree) {
    if (child.empty()) {
      top[key] = value_of(child.data());
      continue;
    }
    if (key.rfind("end.", 0) != 0)
      throw ConfigError("unknown section [" + key + "]");
    const int index = to_int(key, key.substr(4));
    if (index < 1) throw ConfigError("end sections are numbered from 1");
    end_sections[index] = &child;
  }

  static const char* known[] = {"name",  "genus",           "ends",
                                "core",  "chi",             "hypothesis_hint",
                                "orientable"};
  for (const auto& [key, _] : top) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ConfigError("unknown key '" + key + "'");
  }
  auto required = [&](const char* key) {
    const auto it = top.find(key);
    if (it == top.end()) throw ConfigError(std::string("missing key '") + key + "'");
    return it->second;
  };

  SurfaceModel model;
  model.name = top.count("name") ? top["name"] : fallback_name;
  model.topology.genus = to_int("genus", required("genus"));
  model.topology.ends = to_int("ends", required("ends"));
  if (top.count("orientable")) {
    const std::string o = top["orientable"];
    if (o != "true" && o != "false")
      throw ConfigError("key 'orientable': expected true or false");
    model.topology.orientable = o == "true";
  }
  if (model.topology.genus < 0) throw ConfigError("genus must be >= 0");
  if (model.topology.ends < 1) throw ConfigError("ends must be >= 1");

  const std::string core = required("core");
  if (core == "polar-cap") {
    model.core = PolarCap{};
  } else if (core.rfind("analytic:", 0) == 0) {
    AnalyticCore a;
    a.total_curvature = to_double("core", trim(core.substr(9)));
    model.core = a;
  } else {
    throw ConfigError("key 'core': expected polar-cap or analytic:<value>");
  }

  if (static_cast<int>(end_sections.size()) != model.topology.ends)
    throw ConfigError("ends = " + std::to_string(model.topology.ends) +
                      " but " + std::to_string(end_sections.size()) +
                      " [end.N] sections");
  int expected = 1;
  for (const auto& [index, section] : end_sections) {
    if (index != expected++)
      throw ConfigError("end sections must be numbered 1.." +
                        std::to_string(model.topology.ends));
    const std::string where = "[end." + std::to_string(index) + "]";
    std::string g;
    double t_min = 0.0;
    bool have_g = false;
    for (const auto& [key, child] : *section) {
      const std::string v = value_of(child.data());
      if (key == "g") {
        g = v;
        have_g = true;
      } else if (key == "t_min") {
        t_min = to_double(where + " t_min", v);
      } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
      }
    }
    if (!have_g) throw ConfigError(where + ": missing key 'g'");
    model.ends.push_back(EndChart::from_expression(parse_metric(g), t_min));
  }

  if (auto* a = std::get_if<AnalyticCore>(&model.core)) {
    for (const auto& e : model.ends) a->boundary_heights.push_back(e.t_min());
  }
  if (top.count("hypothesis_hint"))
    model.hypothesis_hint = to_double("hypothesis_hint", top["hypothesis_hint"]);
  if (top.count("chi")) {
    const int chi = to_int("chi", top["chi"]);
    if (chi != euler_char(model.topology))
      throw ConfigError("chi = " + std::to_string(chi) +
                        " is inconsistent with genus and ends (chi = " +
                        std::to_string(euler_char(model.topology)) + ")");
  }
  return model;
}

SurfaceModel load_surface_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_surface_config(text.str(), path.stem().string());
}

}  // namespace cvlab
