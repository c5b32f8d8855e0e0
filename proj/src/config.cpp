#include "wtp/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "wtp/error.hpp"

namespace wtp {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_error(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::ParseError, (path.empty() ? "/" : path) + ": " + message);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    parse_error(path, "missing \"" + key + "\"");
  }
  return obj.at(key);
}

const json& array_at(const json& value, const std::string& path) {
  if (!value.is_array()) parse_error(path, "expected an array");
  return value;
}

long long integer_at(const json& value, const std::string& path) {
  if (!value.is_number_integer()) parse_error(path, "expected an integer");
  return value.get<long long>();
}

double number_at(const json& value, const std::string& path) {
  if (!value.is_number()) parse_error(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) parse_error(path, "expected a finite number");
  return x;
}

std::vector<int> int_list(const json& value, const std::string& path) {
  std::vector<int> out;
  const json& arr = array_at(value, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const long long x = integer_at(arr[i], path + "/" + std::to_string(i));
    if (x < -1'000'000'000 || x > 1'000'000'000) {
      parse_error(path + "/" + std::to_string(i), "integer out of range");
    }
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<Digit> digit_list(const json& value, const std::string& path) {
  std::vector<Digit> out;
  const json& arr = array_at(value, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(int_list(arr[i], path + "/" + std::to_string(i)));
  }
  return out;
}

template <class F>
auto validated(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ValidationError, (path.empty() ? "/" : path) + ": " + e.what());
  }
}

Chain parse_system(const json& doc, json& echo) {
  const json& system = member(doc, "system", "");
  if (!system.is_object() || system.size() != 1) {
    parse_error("/system", "expected exactly one of \"sponge\" or \"sofic\"");
  }
  if (system.contains("sponge")) {
    const std::string path = "/system/sponge";
    const json& s = system.at("sponge");
    auto bases = int_list(member(s, "bases", path), path + "/bases");
    auto digits = digit_list(member(s, "digits", path), path + "/digits");
    echo["system"] = {{"sponge", {{"bases", bases}, {"digits", digits}}}};
    return validated(path, [&] {
      return Chain::full_shift(DigitSystem::validate(std::move(bases), std::move(digits)));
    });
  }
  if (system.contains("sofic")) {
    const std::string path = "/system/sofic";
    const json& s = system.at("sofic");
    auto bases = int_list(member(s, "bases", path), path + "/bases");
    const json& vertices = array_at(member(s, "vertices", path), path + "/vertices");
    LabeledGraph graph;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (!vertices[i].is_string()) {
        parse_error(path + "/vertices/" + std::to_string(i), "expected a string");
      }
      const auto name = vertices[i].get<std::string>();
      if (!index.emplace(name, i).second) {
        parse_error(path + "/vertices/" + std::to_string(i), "duplicate vertex \"" + name + "\"");
      }
      graph.vertices.push_back(name);
    }
    const json& edges = array_at(member(s, "edges", path), path + "/edges");
    json edge_echo = json::array();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string epath = path + "/edges/" + std::to_string(k);
      const json& e = array_at(edges[k], epath);
      if (e.size() != 3 || !e[0].is_string() || !e[1].is_string()) {
        parse_error(epath, "expected [source, target, [digit...]]");
      }
      auto src = index.find(e[0].get<std::string>());
      auto dst = index.find(e[1].get<std::string>());
      if (src == index.end() || dst == index.end()) {
        parse_error(epath, "unknown vertex");
      }
      Digit label = int_list(e[2], epath + "/2");
      edge_echo.push_back({e[0], e[1], label});
      graph.edges.push_back({src->second, dst->second, std::move(label)});
    }
    echo["system"] = {{"sofic", {{"bases", bases}, {"vertices", vertices}, {"edges", edge_echo}}}};
    return validated(path, [&] {
      std::vector<Digit> labels;
      for (const auto& e : graph.edges) labels.push_back(e.label);
      if (labels.empty()) {
        throw Error(ErrorCode::EmptyDigits, "graph has no edges");
      }
      auto sys = DigitSystem::validate(std::move(bases), std::move(labels));
      return Chain::sofic(std::move(sys), std::move(graph));
    });
  }
  parse_error("/system", "expected \"sponge\" or \"sofic\"");
}

Exponents parse_exponents(const json& doc, const Chain& chain, json& echo) {
  const std::size_t r = chain.rank();
  const std::vector<int> own(chain.system().bases().begin(), chain.system().bases().end());
  if (!doc.contains("exponents")) {
    echo["exponents"] = "from-bases";
    return exponents_from_bases(own);
  }
  const json& e = doc.at("exponents");
  if (e.is_string()) {
    if (e.get<std::string>() != "from-bases") {
      parse_error("/exponents", "expected \"from-bases\", a list, or {\"from_bases\": [...]}");
    }
    echo["exponents"] = "from-bases";
    return exponents_from_bases(own);
  }
  if (e.is_array()) {
    std::vector<double> values;
    for (std::size_t i = 0; i < e.size(); ++i) {
      values.push_back(number_at(e[i], "/exponents/" + std::to_string(i)));
    }
    echo["exponents"] = values;
    return validated("/exponents", [&] {
      if (values.size() + 1 != r) {
        throw Error(ErrorCode::ExponentLengthMismatch,
                    "expected " + std::to_string(r - 1) + " values, got " +
                        std::to_string(values.size()));
      }
      return Exponents::validate(values);
    });
  }
  if (e.is_object()) {
    auto bases = int_list(member(e, "from_bases", "/exponents"), "/exponents/from_bases");
    echo["exponents"] = {{"from_bases", bases}};
    return validated("/exponents", [&] {
      if (bases.size() != r) {
        throw Error(ErrorCode::ExponentLengthMismatch,
                    "from_bases needs " + std::to_string(r) + " bases");
      }
      return exponents_from_bases(bases);
    });
  }
  parse_error("/exponents", "unsupported form");
}

std::optional<Potential> parse_potential(const json& doc, const Chain& chain, json& echo) {
  if (!doc.contains("potential") || doc.at("potential").is_null()) return std::nullopt;
  const std::string path = "/potential";
  const json& p = doc.at("potential");
  const long long window = integer_at(member(p, "window", path), path + "/window");
  if (window < 1) parse_error(path + "/window", "window must be at least 1");
  std::vector<Potential::Entry> entries;
  json table_echo = json::array();
  if (p.contains("table")) {
    const json& table = array_at(p.at("table"), path + "/table");
    for (std::size_t k = 0; k < table.size(); ++k) {
      const std::string epath = path + "/table/" + std::to_string(k);
      auto word = digit_list(member(table[k], "word", epath), epath + "/word");
      const double value = number_at(member(table[k], "value", epath), epath + "/value");
      table_echo.push_back({{"word", word}, {"value", value}});
      entries.emplace_back(std::move(word), value);
    }
  }
  std::optional<double> fallback;
  json pot_echo = {{"window", window}, {"table", table_echo}};
  if (p.contains("default")) {
    fallback = number_at(p.at("default"), path + "/default");
    pot_echo["default"] = *fallback;
  }
  echo["potential"] = pot_echo;
  return validated(path, [&] {
    return Potential::from_entries(chain.system(), static_cast<std::size_t>(window), entries,
                                   fallback);
  });
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) parse_error("", "expected a JSON object");
  json echo = json::object();
  Chain chain = parse_system(doc, echo);
  Exponents a = parse_exponents(doc, chain, echo);
  std::optional<Potential> potential = parse_potential(doc, chain, echo);

  EstimatorConfig est;
  if (doc.contains("estimator")) {
    const json& e = doc.at("estimator");
    if (!e.is_object()) parse_error("/estimator", "expected an object");
    if (e.contains("n_max")) {
      const long long n = integer_at(e.at("n_max"), "/estimator/n_max");
      if (n < 1) parse_error("/estimator/n_max", "must be at least 1");
      est.n_max = static_cast<std::size_t>(n);
    }
    if (e.contains("budget")) {
      const long long b = integer_at(e.at("budget"), "/estimator/budget");
      if (b < 1) parse_error("/estimator/budget", "must be positive");
      est.budget = static_cast<std::uint64_t>(b);
    }
  }
  echo["estimator"] = {{"n_max", est.n_max}, {"budget", est.budget}};

  OptimizerConfig opt;
  if (doc.contains("optimizer")) {
    const json& o = doc.at("optimizer");
    if (!o.is_object()) parse_error("/optimizer", "expected an object");
    if (o.contains("max_iters")) {
      const long long m = integer_at(o.at("max_iters"), "/optimizer/max_iters");
      if (m < 1 || m > 100'000'000) parse_error("/optimizer/max_iters", "out of range");
      opt.max_iters = static_cast<int>(m);
    }
    if (o.contains("tolerance")) {
      opt.tolerance = number_at(o.at("tolerance"), "/optimizer/tolerance");
      if (!(opt.tolerance > 0.0)) parse_error("/optimizer/tolerance", "must be positive");
    }
  }
  echo["optimizer"] = {{"max_iters", opt.max_iters}, {"tolerance", opt.tolerance}};

  return RunConfig{std::move(chain), std::move(a), std::move(potential), est, opt,
                   std::move(echo)};
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("/: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig with_estimator(const RunConfig& config, EstimatorConfig estimator) {
  RunConfig out = config;
  out.estimator = estimator;
  out.echo["estimator"] = {{"n_max", estimator.n_max}, {"budget", estimator.budget}};
  return out;
}

}  // namespace wtp
