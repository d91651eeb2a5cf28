#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "exk/errors.hpp"
#include "exk/excursion.hpp"
#include "exk/jump_law.hpp"
#include "exk/montecarlo.hpp"
#include "exk/rational.hpp"
#include "exk/transforms.hpp"
#include "exk/tree.hpp"

namespace exk::io {

using json = nlohmann::ordered_json;

inline json to_json(const Excursion& x) { return json{{"jumps", x.jumps()}}; }

// Accepts {"jumps":[...]} or {"values":[...]}.
inline Excursion excursion_from_json(const json& j) {
  if (!j.is_object()) throw NotAnExcursion("bad-step");
  if (j.contains("jumps")) return Excursion::from_jumps(j.at("jumps").get<std::vector<int>>());
  if (j.contains("values")) return Excursion::from_values(j.at("values").get<std::vector<int>>());
  throw NotAnExcursion("empty");
}

inline json to_json(const OrderedTree& t) { return json::parse(t.str()); }

inline OrderedTree tree_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("tree must be a nested array");
  std::vector<std::vector<int>> children(1);
  std::vector<std::pair<const json*, int>> stack{{&j, 0}};
  while (!stack.empty()) {
    auto [node, id] = stack.back();
    stack.pop_back();
    for (const auto& c : *node) {
      if (!c.is_array()) throw std::invalid_argument("tree must be a nested array");
      const int cid = static_cast<int>(children.size());
      children.emplace_back();
      children[static_cast<std::size_t>(id)].push_back(cid);
      stack.emplace_back(&c, cid);
    }
  }
  return OrderedTree(std::move(children));
}

inline json to_json(const ShiftOp& op) {
  return json{{"a", op.a}, {"b", op.b}, {"c", op.c}, {"h", op.h}, {"kind", to_string(op.kind)}};
}

inline ShiftOp shift_from_json(const json& j) {
  ShiftOp op{j.at("a").get<int>(), j.at("b").get<int>(), j.at("c").get<int>(), j.at("h").get<int>(),
             ShiftKind::bridge};
  const auto kind = j.value("kind", std::string("bridge"));
  if (kind == "excursion") op.kind = ShiftKind::excursion;
  else if (kind != "bridge") throw std::invalid_argument("kind must be bridge or excursion");
  return op;
}

inline json to_json(const std::vector<ShiftOp>& ops) {
  json a = json::array();
  for (const auto& op : ops) a.push_back(to_json(op));
  return a;
}

inline std::vector<ShiftOp> shifts_from_json(const json& j) {
  std::vector<ShiftOp> ops;
  if (j.is_object()) ops.push_back(shift_from_json(j));
  else
    for (const auto& e : j) ops.push_back(shift_from_json(e));
  return ops;
}

// Probabilities: "num/den" strings in rational mode, plain numbers in float mode.
inline json value_json(const Rational& r) { return to_string(r); }
inline json value_json(double d) { return d; }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return rational_from_double(j.get<double>());
  throw InvalidLaw("probability must be a number or a \"num/den\" string");
}

enum class Mode { rational, floating };

// Laws are held exactly and converted to doubles only for float-mode evaluation.
struct LawConfig {
  JumpLaw<Rational> law;
  Mode mode = Mode::rational;
};

inline LawConfig law_from_json(const json& j) {
  try {
    const int k = j.at("K").get<int>();
    std::vector<Rational> table;
    const auto& p = j.at("p");
    for (int i = -k; i <= k; ++i) {
      const auto key = std::to_string(i);
      if (!p.contains(key)) throw InvalidLaw("missing p[" + key + "]");
      table.push_back(rational_from_json(p.at(key)));
    }
    Mode mode = Mode::rational;
    const auto m = j.value("mode", std::string("rational"));
    if (m == "float") mode = Mode::floating;
    else if (m != "rational") throw InvalidLaw("mode must be rational or float");
    return {JumpLaw<Rational>(k, std::move(table), rational_from_json(j.at("p_plus")),
                              rational_from_json(j.at("p_minus"))),
            mode};
  } catch (const json::exception& e) {
    throw InvalidLaw(e.what());
  }
}

inline json to_json(const JumpLaw<Rational>& law, Mode mode = Mode::rational) {
  json p = json::object();
  for (int i = -law.k(); i <= law.k(); ++i) {
    const auto& v = law.p(i);
    p[std::to_string(i)] = mode == Mode::rational ? value_json(v) : value_json(to_double(v));
  }
  auto val = [&](const Rational& v) { return mode == Mode::rational ? value_json(v) : value_json(to_double(v)); };
  return json{{"K", law.k()},
              {"p", p},
              {"p_plus", val(law.p_plus())},
              {"p_minus", val(law.p_minus())},
              {"mode", mode == Mode::rational ? "rational" : "float"}};
}

// "homog:p" (rational mode), an inline JSON object, or a path to a JSON file.
inline LawConfig parse_law_arg(const std::string& arg) {
  if (arg.rfind("homog:", 0) == 0) return {JumpLaw<Rational>::homogeneous(parse_rational(arg.substr(6))), Mode::rational};
  if (!arg.empty() && arg.front() == '{') {
    try {
      return law_from_json(json::parse(arg));
    } catch (const json::parse_error& e) {
      throw InvalidLaw(e.what());
    }
  }
  std::ifstream in(arg);
  if (!in) throw InvalidLaw("cannot open law file '" + arg + "'");
  try {
    return law_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw InvalidLaw(e.what());
  }
}

inline json to_json(const SampleReport& r) {
  json j{{"event", r.event}, {"n", r.n}, {"estimate", r.estimate}, {"stderr", r.std_error}};
  j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
  j["z"] = r.z && std::isfinite(*r.z) ? json(*r.z) : json(nullptr);
  j["capped"] = r.capped;
  return j;
}

inline json error_json(const DomainError& e) { return json{{"error", e.code()}, {"detail", e.detail()}}; }

}  // namespace exk::io
