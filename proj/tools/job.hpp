#pragma once

#include "defsum/decomp.hpp"
#include "defsum/error.hpp"
#include "defsum/expsum.hpp"
#include "defsum/formula.hpp"
#include "defsum/parser.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace defsum::tools {

using nlohmann::json;

/// Formula job: a definable set plus optional sum data.
struct Job {
  std::string name;
  DefinableFormula phi;
  RationalMap f{Term{}};
  RationalMap g{Term::constant(1)};
  std::int64_t psi = 0;
  /// Character exponent, or nullopt for the quadratic character.
  std::optional<std::int64_t> chi = 0;
  std::vector<std::int64_t> y;
};

/// Existential block job for the reduction check.
struct BlockJob {
  std::string name;
  ExistentialBlock block;
  std::vector<std::int64_t> y;
};

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open job file '" + path + "'");
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw Error(std::string("job file '") + path + "': " + e.what());
  }
}

inline std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (j.contains(key)) out = j.at(key).get<std::vector<std::string>>();
  return out;
}

inline RationalMap parse_map(const json& j, const std::vector<std::string>& names, const Term& fallback) {
  if (j.is_null()) return RationalMap(fallback);
  if (j.is_string()) return RationalMap(parse_term(j.get<std::string>(), names));
  if (j.is_number_integer()) return RationalMap(Term::constant(j.get<std::int64_t>()));
  const auto num = parse_term(j.at("num").get<std::string>(), names);
  const auto den = j.contains("den") ? parse_term(j.at("den").get<std::string>(), names) : Term::constant(1);
  return RationalMap(num, den);
}

inline std::optional<std::int64_t> parse_chi(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "legendre") return std::nullopt;
    throw DomainError("chi must be an integer or \"legendre\"");
  }
  return j.get<std::int64_t>();
}

inline Job job_from_json(const json& j) {
  Job job;
  job.name = j.value("name", std::string("job"));
  const auto vars = string_list(j, "vars");
  const auto params = string_list(j, "params");
  job.phi = parse_definable(j.at("formula").get<std::string>(), vars, params);
  std::vector<std::string> names = vars;
  names.insert(names.end(), params.begin(), params.end());
  job.f = parse_map(j.value("f", json()), names, Term{});
  job.g = parse_map(j.value("g", json()), names, Term::constant(1));
  job.psi = j.value("psi", std::int64_t{0});
  if (j.contains("chi")) job.chi = parse_chi(j.at("chi"));
  if (j.contains("y")) job.y = j.at("y").get<std::vector<std::int64_t>>();
  return job;
}

inline Job load_job(const std::string& path) { return job_from_json(read_json(path)); }

inline BlockJob block_from_json(const json& j) {
  const auto vars = string_list(j, "vars");
  const auto params = string_list(j, "params");
  std::vector<std::string> names = vars;
  names.insert(names.end(), params.begin(), params.end());
  std::vector<Term> eqs;
  for (const auto& e : string_list(j, "equations")) eqs.push_back(parse_term(e, names));
  std::vector<Witness> ws;
  if (j.contains("witnesses")) {
    for (const auto& w : j.at("witnesses")) {
      const auto var = w.at("var").get<std::string>();
      auto scope = names;
      scope.push_back(var);
      ws.push_back(Witness{var, parse_term(w.at("h").get<std::string>(), scope)});
    }
  }
  BlockJob out{j.value("name", std::string("block")), ExistentialBlock(vars, params, std::move(eqs), std::move(ws)), {}};
  if (j.contains("y")) out.y = j.at("y").get<std::vector<std::int64_t>>();
  return out;
}

inline BlockJob load_block(const std::string& path) { return block_from_json(read_json(path)); }

/// "1,2,-3" -> {1, 2, -3}.
inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ParseError("'" + item + "' is not an integer", 1, 1);
    out.push_back(v);
  }
  return out;
}

}  // namespace defsum::tools
