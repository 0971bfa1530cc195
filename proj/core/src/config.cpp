#include "hp/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hp/errors.hpp"

namespace hp {

namespace {

using nlohmann::json;

real real_field(const json& v, const char* what) {
  if (v.is_string()) return real(v.get<std::string>());
  if (v.is_number_integer()) return real(v.get<long>());
  if (v.is_number_float()) return real(v.get<double>());
  throw validation_error(std::string(what) + " must be a number or a decimal string");
}

long long_field(const json& v, const char* what) {
  if (!v.is_number_integer())
    throw validation_error(std::string(what) + " must be an integer");
  return v.get<long>();
}

measure_spec parse_measure(const json& v, size_t pos) {
  std::string where = "measures[" + std::to_string(pos) + "]";
  if (!v.is_object() || !v.contains("interval"))
    throw validation_error(where + " needs an interval");
  const json& iv = v["interval"];
  if (!iv.is_array() || iv.size() != 2)
    throw validation_error(where + ".interval must be [a, b]");
  interval support{real_field(iv[0], "interval endpoint"),
                   real_field(iv[1], "interval endpoint")};

  real alpha(0L), beta(0L);
  if (v.contains("weight")) {
    const json& w = v["weight"];
    std::string type = w.value("type", "jacobi");
    if (type == "jacobi") {
      if (w.contains("alpha")) alpha = real_field(w["alpha"], "alpha");
      if (w.contains("beta")) beta = real_field(w["beta"], "beta");
    } else if (type == "chebyshev") {
      alpha = real(-0.5);
      beta = real(-0.5);
    } else if (type == "legendre") {
      // zero exponents already
    } else {
      throw validation_error(where + ": unknown weight type '" + type + "'");
    }
  }
  int sign = 1;
  if (v.contains("sign")) {
    long s = long_field(v["sign"], "sign");
    if (s != 1 && s != -1)
      throw validation_error(where + ".sign must be 1 or -1");
    sign = static_cast<int>(s);
  }
  return measure_spec::jacobi(support, alpha, beta, sign);
}

std::vector<long> parse_index(const json& v, const char* what) {
  std::vector<long> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<long>());
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(long_field(e, what));
  } else {
    throw validation_error(std::string(what) +
                           " must be an integer or an array of integers");
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

run_config parse_config(const std::string& text, long bits_override) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw validation_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw validation_error("config root must be an object");

  run_config cfg;
  cfg.raw = text;
  if (root.contains("precision_bits"))
    cfg.policy.bits = long_field(root["precision_bits"], "precision_bits");
  if (bits_override > 0) cfg.policy.bits = bits_override;
  if (root.contains("escalation_factor"))
    cfg.policy.escalation_factor = static_cast<int>(
        long_field(root["escalation_factor"], "escalation_factor"));
  if (root.contains("max_escalations"))
    cfg.policy.max_escalations = static_cast<int>(
        long_field(root["max_escalations"], "max_escalations"));
  validate(cfg.policy);

  // everything numeric below parses at the final precision
  precision_guard guard(cfg.policy.bits + 32);

  if (!root.contains("measures") || !root["measures"].is_array() ||
      root["measures"].empty())
    throw validation_error("config needs a non-empty measures array");
  size_t pos = 0;
  for (const auto& mj : root["measures"])
    cfg.gen.sigma.push_back(parse_measure(mj, pos++));
  validate(cfg.gen);
  require_adjacency(cfg.gen);

  if (root.contains("degree_budget"))
    cfg.degree_budget = long_field(root["degree_budget"], "degree_budget");
  if (cfg.degree_budget < 0)
    throw validation_error("degree_budget must be non-negative");

  if (root.contains("pole_sheet"))
    cfg.pole_sheet =
        static_cast<int>(long_field(root["pole_sheet"], "pole_sheet"));

  if (root.contains("index")) cfg.index = parse_index(root["index"], "index");

  if (root.contains("level"))
    cfg.level = static_cast<int>(long_field(root["level"], "level"));

  if (root.contains("ladder")) {
    const json& lad = root["ladder"];
    if (lad.is_object()) {
      cfg.ladder_from = long_field(lad.value("from", json(1)), "ladder.from");
      cfg.ladder_to = long_field(lad.value("to", json(1)), "ladder.to");
    } else if (lad.is_array()) {
      for (const auto& e : lad)
        cfg.ladder.push_back(parse_index(e, "ladder entry"));
    } else {
      throw validation_error("ladder must be {from, to} or an array of indices");
    }
  }

  if (root.contains("probes")) {
    const json& ps = root["probes"];
    if (!ps.is_array()) throw validation_error("probes must be an array");
    for (const auto& pz : ps) {
      if (pz.is_array() && pz.size() == 2) {
        cfg.probes.push_back({real_field(pz[0], "probe"),
                              real_field(pz[1], "probe")});
      } else if (pz.is_number() || pz.is_string()) {
        cfg.probes.push_back(complex(real_field(pz, "probe")));
      } else {
        throw validation_error("each probe must be [re, im] or a real value");
      }
    }
  }

  if (root.contains("jobs")) cfg.jobs = long_field(root["jobs"], "jobs");
  if (cfg.jobs < 1 || cfg.jobs > 64)
    throw validation_error("jobs must be between 1 and 64");

  return cfg;
}

run_config load_config(const std::string& path, long bits_override) {
  return parse_config(read_file(path), bits_override);
}

long env_precision_bits() {
  const char* s = std::getenv("HP_PRECISION_BITS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  long bits = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || bits <= 0)
    throw validation_error("HP_PRECISION_BITS must be a positive integer");
  return bits;
}

long needed_budget(const multi_index& n) {
  long widest = 0;
  for (long v : n.n) widest = std::max(widest, v);
  return n.total() + widest + 4;
}

}  // namespace hp
