#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exk/enumeration.hpp"
#include "exk/io.hpp"
#include "exk/montecarlo.hpp"
#include "exk/probability.hpp"
#include "exk/transforms.hpp"
#include "exk/tree.hpp"
#include "exk/verify/acceptance.hpp"
#include "exk/vervaat.hpp"

namespace exk::cli {

using io::json;

namespace detail {

inline std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    std::istringstream t(tok);
    long v;
    if (!(t >> v) || !(t >> std::ws).eof()) throw std::invalid_argument("bad integer list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

struct ExcursionInput {
  std::string jumps, values, json_text;

  void add_to(CLI::App* app, const std::string& prefix = "") {
    app->add_option("--" + prefix + "jumps", jumps, "comma-separated +-1 jumps");
    app->add_option("--" + prefix + "values", values, "path values, comma or space separated");
    app->add_option("--" + prefix + "json", json_text, "excursion JSON {\"jumps\":[...]}");
  }

  Excursion get() const {
    if (!jumps.empty()) {
      std::vector<int> j;
      for (long v : parse_list(jumps)) j.push_back(static_cast<int>(v));
      return Excursion::from_jumps(j);
    }
    if (!values.empty()) {
      std::string v = values;
      for (char& c : v)
        if (c == ',') c = ' ';
      return Excursion::parse_values(v);
    }
    if (!json_text.empty()) return io::excursion_from_json(json::parse(json_text));
    throw CLI::ValidationError("an excursion is required (--jumps, --values or --json)");
  }
};

inline LevelNumbers parse_levels(const std::string& text) { return LevelNumbers(parse_list(text)); }

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("EXK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("EXK_SEED must be an unsigned integer");
    }
  }
  return 1;
}

// Evaluates f on the law in the backend named by its mode.
template <class F>
json with_law(const io::LawConfig& cfg, F&& f) {
  if (cfg.mode == io::Mode::rational) return f(cfg.law);
  return f(to_float(cfg.law));
}

inline json individual_json(const Individual& i) {
  return json{{"birth", i.birth}, {"level", i.level}, {"death", i.death}, {"rank", i.rank}};
}

}  // namespace detail

// Parses argv and runs one subcommand. Exit codes: 0 success, 1 domain error
// (JSON on err), 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Excursions of +-1 walks: trees, level numbers, shifts, exact laws, sampling"};
  app.require_subcommand(1, 1);
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

  detail::ExcursionInput ex;
  std::string law_arg, levels_arg, kind, op_name, shift_json, tree_json, event, histogram;
  detail::ExcursionInput target;
  long s_value = 0, total = 0, theta = 0;
  std::uint64_t n_samples = 0, mc_samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::size_t theta_max = default_theta_max;

  auto* validate = app.add_subcommand("validate", "check that a path is an excursion");
  ex.add_to(validate);
  auto* inds = app.add_subcommand("individuals", "list individuals in level order");
  ex.add_to(inds);
  auto* levels = app.add_subcommand("levels", "level numbers N_h");
  ex.add_to(levels);
  auto* tree = app.add_subcommand("tree", "tree of an excursion, or the contour of a tree");
  ex.add_to(tree);
  tree->add_option("--tree", tree_json, "nested-array tree; prints its contour excursion");
  auto* count = app.add_subcommand("count", "number of positive excursions with given level numbers");
  count->add_option("--levels", levels_arg, "N_0,N_1,...");
  count->add_option("--total", total, "list every N with this total");
  auto* enumerate = app.add_subcommand("enumerate", "all positive excursions with given level numbers");
  enumerate->add_option("--levels", levels_arg, "N_0,N_1,...");
  enumerate->add_option("--theta", theta, "all positive excursions of this length instead");
  auto* transform = app.add_subcommand("transform", "apply reverse, negate, vervaat or a shift");
  ex.add_to(transform);
  transform->add_option("--op", op_name, "reverse|negate|vervaat|shift")
      ->required()
      ->check(CLI::IsMember({"reverse", "negate", "vervaat", "shift"}));
  transform->add_option("--shift", shift_json, "shift JSON, one op or an array applied in order");
  auto* shift_seq = app.add_subcommand("shift-seq", "excursion shifts turning one excursion into another");
  ex.add_to(shift_seq);
  target.add_to(shift_seq, "to-");
  auto* prob = app.add_subcommand("prob", "exact probabilities of an excursion or a level class");
  ex.add_to(prob);
  prob->add_option("--law", law_arg, "homog:p, inline law JSON, or a law file")->required();
  prob->add_option("--kind", kind, "excursion|conditional|path|class")
      ->check(CLI::IsMember({"excursion", "conditional", "path", "class"}));
  prob->add_option("--levels", levels_arg, "N for --kind class");
  auto* height = app.add_subcommand("height", "height laws started from 1");
  height->add_option("--law", law_arg, "law")->required();
  height->add_option("--s", s_value, "height s >= 1")->required();
  height->add_option("--kind", kind, "tail|unique")->check(CLI::IsMember({"tail", "unique"}));
  auto* doob = app.add_subcommand("doob", "Doob transform of a law, with boundary data");
  doob->add_option("--law", law_arg, "law")->required();
  auto* sample = app.add_subcommand("sample", "sample excursions under the conditioned law");
  sample->add_option("--law", law_arg, "law")->required();
  sample->add_option("--seed", seed, "seed (falls back to EXK_SEED)");
  sample->add_option("--n", n_samples, "number of samples; omitted for a single excursion");
  sample->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  sample->add_option("--theta-max", theta_max, "length cap");
  sample->add_option("--event", event, "tail:s or unique:s, conditioned on a positive excursion");
  sample->add_option("--histogram", histogram, "all|unique-max|vervaat-of-unique-max")
      ->check(CLI::IsMember({"all", "unique-max", "vervaat-of-unique-max"}));
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--seed", seed, "seed (falls back to EXK_SEED)");
  verify->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
  verify->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const bool csv = format == "csv";
  auto emit = [&](const json& j) { out << j.dump() << "\n"; };

  try {
    if (validate->parsed()) {
      const auto x = ex.get();
      emit({{"valid", true}, {"sign", to_string(x.sign())}, {"length", x.length()}, {"height", x.height()}});
    } else if (inds->parsed()) {
      const auto list = individuals(ex.get());
      if (csv) {
        out << "rank,birth,level,death\n";
        for (const auto& i : list) out << i.rank << "," << i.birth << "," << i.level << "," << i.death << "\n";
      } else {
        json a = json::array();
        for (const auto& i : list) a.push_back(detail::individual_json(i));
        emit({{"individuals", a}});
      }
    } else if (levels->parsed()) {
      const auto x = ex.get();
      const auto n = level_numbers(x);
      if (csv) {
        out << "h,N\n";
        for (int h = 0; h < n.height(); ++h) out << (x.positive() ? h : -h) << "," << n[static_cast<std::size_t>(h)] << "\n";
      } else {
        emit({{"levels", std::vector<long>(n.counts().begin(), n.counts().end())}, {"height", n.height()}});
      }
    } else if (tree->parsed()) {
      if (!tree_json.empty()) {
        emit(io::to_json(contour(io::tree_from_json(json::parse(tree_json)))));
      } else {
        const auto x = ex.get();
        emit({{"tree", io::to_json(tree_of(x))}, {"index_sequence", index_sequence(x)}});
      }
    } else if (count->parsed()) {
      if (!levels_arg.empty()) {
        emit({{"count", count_excursions(detail::parse_levels(levels_arg)).str()}});
      } else if (total > 0) {
        const auto all = all_level_numbers(total);
        if (csv) {
          out << "levels,count\n";
          for (const auto& n : all) out << "\"" << n.str() << "\"," << count_excursions(n).str() << "\n";
        } else {
          json a = json::array();
          for (const auto& n : all) a.push_back({{"levels", n.str()}, {"count", count_excursions(n).str()}});
          emit({{"classes", a}});
        }
      } else {
        throw CLI::ValidationError("count needs --levels or --total");
      }
    } else if (enumerate->parsed()) {
      std::vector<Excursion> xs;
      if (!levels_arg.empty()) xs = enumerate_excursions(detail::parse_levels(levels_arg));
      else if (theta > 0) xs = brute_force(static_cast<int>(theta));
      else throw CLI::ValidationError("enumerate needs --levels or --theta");
      if (csv) {
        out << "jumps\n";
        for (const auto& x : xs) out << x.jump_string() << "\n";
      } else {
        json a = json::array();
        for (const auto& x : xs) a.push_back(io::to_json(x));
        emit({{"excursions", a}});
      }
    } else if (transform->parsed()) {
      const auto x = ex.get();
      if (op_name == "reverse") emit(io::to_json(reverse(x)));
      else if (op_name == "negate") emit(io::to_json(negate(x)));
      else if (op_name == "vervaat") emit(io::to_json(vervaat(x)));
      else {
        if (shift_json.empty()) throw CLI::ValidationError("--op shift needs --shift");
        const auto res = compose(x, io::shifts_from_json(json::parse(shift_json)));
        auto j = io::to_json(res.x);
        j["phi"] = res.phi;
        emit(j);
      }
    } else if (shift_seq->parsed()) {
      const auto x = ex.get();
      const auto y = target.get();
      const auto ops = shift_sequence(x, y);
      emit({{"ops", io::to_json(ops)}});
    } else if (prob->parsed()) {
      const auto cfg = io::parse_law_arg(law_arg);
      const std::string k = kind.empty() ? "excursion" : kind;
      if (k == "class") {
        if (levels_arg.empty()) throw CLI::ValidationError("--kind class needs --levels");
        const auto n = detail::parse_levels(levels_arg);
        emit(detail::with_law(cfg, [&](const auto& law) { return json{{"value", io::value_json(class_prob(law, n))}}; }));
      } else {
        const auto x = ex.get();
        emit(detail::with_law(cfg, [&](const auto& law) {
          if (k == "path") return json{{"value", io::value_json(path_probability(law, x))}};
          if (k == "conditional") return json{{"value", io::value_json(conditional_excursion_prob(law, x))}};
          return json{{"value", io::value_json(excursion_prob(law, x))}};
        }));
      }
    } else if (height->parsed()) {
      const auto cfg = io::parse_law_arg(law_arg);
      const bool unique = kind == "unique";
      emit(detail::with_law(cfg, [&](const auto& law) {
        return json{{"value", io::value_json(unique ? height_unique(law, s_value) : height_tail(law, s_value))}};
      }));
    } else if (doob->parsed()) {
      const auto cfg = io::parse_law_arg(law_arg);
      const auto bd = boundary(cfg.law);
      auto jl = io::to_json(doob_law(bd), cfg.mode);
      auto val = [&](const Rational& v) { return cfg.mode == io::Mode::rational ? io::value_json(v) : io::value_json(to_double(v)); };
      json betas = json::object();
      for (long i = -cfg.law.k() - 1; i <= cfg.law.k() + 1; ++i) betas[std::to_string(i)] = val(bd.beta(i));
      emit({{"law", jl}, {"beta", betas}, {"beta0", val(bd.beta0())}});
    } else if (sample->parsed()) {
      const auto cfg = io::parse_law_arg(law_arg);
      const auto s = detail::resolve_seed(seed);
      if (n_samples == 0) {
        const auto o = sample_excursion(cfg.law, s, theta_max);
        if (o.capped()) emit({{"capped", true}, {"steps", o.steps}});
        else emit(io::to_json(*o.x));
      } else if (!histogram.empty()) {
        const auto cond = histogram == "all"          ? HistogramCondition::all
                          : histogram == "unique-max" ? HistogramCondition::unique_max
                                                      : HistogramCondition::vervaat_of_unique_max;
        const auto h = level_process_histogram(cfg.law, n_samples, cond, s, workers, theta_max);
        if (csv) {
          out << "H,h,N,count\n";
          for (const auto& [key, c] : h.counts)
            out << std::get<0>(key) << "," << std::get<1>(key) << "," << std::get<2>(key) << "," << c << "\n";
        } else {
          json a = json::array();
          for (const auto& [key, c] : h.counts)
            a.push_back({{"H", std::get<0>(key)}, {"h", std::get<1>(key)}, {"N", std::get<2>(key)}, {"count", c}});
          emit({{"samples", h.samples}, {"capped", h.capped}, {"counts", a}});
        }
      } else {
        if (event.empty()) throw CLI::ValidationError("sample --n needs --event or --histogram");
        const auto colon = event.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--event must be tail:s or unique:s");
        const std::string ek = event.substr(0, colon);
        const long sv = std::stol(event.substr(colon + 1));
        if ((ek != "tail" && ek != "unique") || sv < 1) throw CLI::ValidationError("--event must be tail:s or unique:s");
        const auto bd = boundary(cfg.law);
        const double b1 = to_double(bd.beta(1));
        Event e;
        e.name = (ek == "tail" ? "H>=" : "unique-max H=") + std::to_string(sv);
        e.condition = [](const Excursion& x) { return x.positive(); };
        if (ek == "tail") {
          e.predicate = [sv](const Excursion& x) { return x.height() >= sv; };
          e.exact = to_double(height_tail(bd, sv)) / b1;
        } else {
          e.predicate = [sv](const Excursion& x) { return x.height() == sv && unique_max(x); };
          e.exact = to_double(height_unique(bd, sv)) / b1;
        }
        emit(io::to_json(estimate(cfg.law, e, n_samples, s, workers, theta_max)));
      }
    } else if (verify->parsed()) {
      acceptance::Options opt;
      opt.seed = seed ? *seed : opt.seed;
      if (!seed && std::getenv("EXK_SEED")) opt.seed = detail::resolve_seed(seed);
      opt.mc_samples = mc_samples;
      opt.workers = workers;
      opt.log = &err;
      return acceptance::run_all(out, opt) == 0 ? 0 : 1;
    }
  } catch (const DomainError& e) {
    err << io::error_json(e).dump() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << json{{"error", "MalformedInput"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << json{{"error", "MalformedInput"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace exk::cli
