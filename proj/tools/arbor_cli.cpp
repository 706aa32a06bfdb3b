#include <arbor/serialize.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace arbor;

namespace {

enum Exit { Ok = 0, Validation = 2, Horizon = 3, Budget = 4 };

struct RunConfig {
  std::string presentation;
  int radius = 4;
  int depth = 6;
  int budget = 200;
  std::uint64_t seed = 0;
  std::string format = "table";
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::RadiusInsufficient:
    case ErrorCode::DistanceUnknown: return Horizon;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::BudgetExhausted: return Budget;
    default: return Validation;
  }
}

std::shared_ptr<const Presentation> load(const RunConfig& cfg, Presentation fallback) {
  if (cfg.presentation.empty()) return std::make_shared<Presentation>(std::move(fallback));
  return std::make_shared<Presentation>(load_presentation(cfg.presentation));
}

std::vector<Word> parse_list(const Presentation& p, const std::string& s) {
  std::vector<Word> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto a = item.find_first_not_of(" \t");
    auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(p.parse_word(item.substr(a, b - a + 1)));
  }
  return out;
}

std::string join(const Presentation& p, const std::vector<Word>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + p.format(ws[i]);
  return s;
}

Chain load_chain(const Presentation& p, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  Chain chain;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    chain.push_back(parse_list(p, line));
  }
  return chain;
}

MetricCore load_core(const Presentation& p, std::shared_ptr<const Presentation> ptr, const std::string& file,
                     const std::string& gens) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    // fold output wraps the core together with its move log
    if (j.is_object() && j.contains("core")) j = j.at("core");
    MetricCore c = core_from_json(p, j);
    c.presentation = ptr;
    return c;
  }
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "give --core or --gens");
  MetricCore c = core_from_generators(p, parse_list(p, gens));
  c.presentation = ptr;
  return c;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("ARBOR_BUDGET")) {
    try {
      cfg.budget = std::stoi(env);
    } catch (const std::exception&) {
      cfg.budget = 0;
    }
    if (cfg.budget < 1) {
      std::cerr << "error: ARBOR_BUDGET must be a positive integer\n";
      return Validation;
    }
  }

  CLI::App app{"arbor: cores, folds and chains of subgroups"};
  app.require_subcommand(1);
  app.add_option("--presentation,-p", cfg.presentation, "presentation file")->check(CLI::ExistingFile);
  app.add_option("--radius,-r", cfg.radius, "window radius")->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "search depth")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "move budget (default from ARBOR_BUDGET)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--format,-f", cfg.format, "output format")->check(CLI::IsMember({"json", "dot", "table"}));
  app.fallthrough();

  std::string gens, word, core_file, source_gens, target_gens, chain_file;
  std::string lambda = "1/6";
  int edge = 0, n_edges = 1, max_len = 1, alpha = 1, tuple_rank = 1, steps = 4, samples = 0;
  bool strict_flag = false, relaxed = false;

  auto* present = app.add_subcommand("present", "presentation tools");
  present->require_subcommand(1);
  auto* present_check = present->add_subcommand("check", "parse and check small cancellation");
  present_check->add_option("--lambda", lambda, "small cancellation bound");

  auto* ball_cmd = app.add_subcommand("ball", "Cayley ball");
  auto* delta_cmd = app.add_subcommand("delta", "four-point delta of a Cayley ball");

  auto* st = app.add_subcommand("stallings", "subgroup graphs of a free group");
  st->require_subcommand(1);
  auto* st_fold = st->add_subcommand("fold", "folded core of the generated subgroup");
  auto* st_member = st->add_subcommand("member", "membership test");
  auto* st_rank = st->add_subcommand("rank", "rank of the generated subgroup");
  for (auto* c : {st_fold, st_member, st_rank}) c->add_option("--gens,-g", gens, "comma-separated words")->required();
  st_member->add_option("--word,-w", word, "word to test");
  st_member->add_option("--samples", samples, "also test this many random words");

  auto* core = app.add_subcommand("core", "metric cores");
  core->require_subcommand(1);
  auto* core_build = core->add_subcommand("build", "rose of the generators");
  auto* core_fold = core->add_subcommand("fold", "fold to a locally minimal core");
  auto* core_measure = core->add_subcommand("measure", "quasi-isometry constants");
  auto* core_min = core->add_subcommand("minimal-check", "is an edge minimal within the horizon");
  auto* core_enum = core->add_subcommand("enumerate", "small cores up to isomorphism");
  for (auto* c : {core_build, core_fold, core_measure, core_min}) {
    c->add_option("--gens,-g", gens, "comma-separated words");
    c->add_option("--core", core_file, "core JSON file");
  }
  core_min->add_option("--edge,-e", edge, "edge index")->required();
  core_enum->add_option("--edges", n_edges, "maximal edge count")->check(CLI::NonNegativeNumber);
  core_enum->add_option("--max-length,-L", max_len, "maximal edge length")->check(CLI::PositiveNumber);

  auto* map = app.add_subcommand("map", "maps between cores of nested subgroups");
  map->require_subcommand(1);
  auto* map_build = map->add_subcommand("build", "build the map");
  auto* map_measure = map->add_subcommand("measure", "measured and predicted constants");
  auto* map_size = map->add_subcommand("size-bound", "size inequality for surjective maps");
  for (auto* c : {map_build, map_measure, map_size}) {
    c->add_option("--source", source_gens, "generators of the smaller subgroup")->required();
    c->add_option("--target", target_gens, "generators of the larger subgroup")->required();
  }

  auto* tau_cmd = app.add_subcommand("tau", "displacement of a tuple");
  tau_cmd->add_option("--gens,-g", gens, "comma-separated words")->required();

  auto* enum_cmd = app.add_subcommand("enumerate-subgroups", "tuples of bounded displacement, one JSON per line");
  enum_cmd->add_option("--alpha", alpha, "displacement bound")->check(CLI::NonNegativeNumber);
  enum_cmd->add_option("--rank", tuple_rank, "tuple size")->check(CLI::PositiveNumber);

  auto* chain = app.add_subcommand("chain", "ascending chains");
  chain->require_subcommand(1);
  auto* chain_hnn = chain->add_subcommand("hnn", "conjugation chain in the HNN extension");
  chain_hnn->add_option("--steps", steps, "chain length")->check(CLI::NonNegativeNumber);
  chain_hnn->add_flag("--verify-strict", strict_flag, "check each step is proper");
  auto* chain_run = chain->add_subcommand("run", "fold a chain of a free group");
  auto* chain_reduce = chain->add_subcommand("reduce", "replace terms by free factors until surjective");
  auto* chain_verify = chain->add_subcommand("verify-strict", "check each step is proper");
  for (auto* c : {chain_run, chain_reduce, chain_verify})
    c->add_option("--chain,-c", chain_file, "one tuple per line, comma-separated words")->required()->check(CLI::ExistingFile);
  chain_run->add_flag("--any-rank", relaxed, "allow tuples of different sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version requests come through here with a zero exit code
    return app.exit(e) == 0 ? Ok : Validation;
  }

  try {
    const Presentation f2 = presets::free_group(2);
    if (present_check->parsed()) {
      if (cfg.presentation.empty()) throw Error(ErrorCode::InvalidArgument, "present check needs --presentation");
      auto p = load(cfg, f2);
      Json j = {{"backend", std::string(to_string(p->backend()))}, {"generators", p->generators()},
                {"relators", words_json(*p, p->relators())}};
      bool ok = true;
      if (p->backend() == Backend::Dehn) {
        Json lam = lambda;
        ok = check_small_cancellation(*p, rational_from_json(lam));
        j["small_cancellation"] = ok;
        j["max_piece_length"] = max_piece_length(*p);
      }
      if (cfg.format == "json") print_json(j);
      else {
        std::cout << to_text(*p);
        if (p->backend() == Backend::Dehn) std::cout << "C'(" << lambda << "): " << (ok ? "true" : "false") << "\n";
      }
      return ok ? Ok : Validation;
    }
    if (ball_cmd->parsed() || delta_cmd->parsed()) {
      auto p = load(cfg, f2);
      CayleyBall b = ball(*p, cfg.radius, {.distances = delta_cmd->parsed()});
      if (delta_cmd->parsed()) {
        Rational d = estimate_delta(b);
        if (cfg.format == "json") print_json({{"radius", cfg.radius}, {"size", b.size()}, {"delta", rational_json(d)}});
        else std::cout << str(d) << "\n";
      } else if (cfg.format == "json") {
        print_json(to_json(*p, b));
      } else if (cfg.format == "dot") {
        std::cout << to_dot(*p, b);
      } else {
        std::cout << "radius " << cfg.radius << ": " << b.size() << " vertices, " << b.edges().size() << " edges\n";
      }
      return Ok;
    }
    if (st->parsed()) {
      auto p = load(cfg, f2);
      if (p->backend() != Backend::Free) throw Error(ErrorCode::BackendCannotDecide, "stallings needs a free presentation");
      StallingsGraph g = canonical(subgroup_core(parse_list(*p, gens)));
      if (st_fold->parsed()) {
        if (cfg.format == "json") print_json(to_json(*p, g));
        else if (cfg.format == "dot") std::cout << to_dot(*p, g);
        else std::cout << g.vertices << " vertices, " << g.edge_count() << " edges, basis: " << join(*p, basis(g)) << "\n";
      } else if (st_rank->parsed()) {
        std::cout << rank(g) << "\n";
      } else {
        if (word.empty() && samples == 0) throw Error(ErrorCode::InvalidArgument, "give --word or --samples");
        if (!word.empty()) std::cout << (membership(g, p->parse_word(word)) ? "true" : "false") << "\n";
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<int> len(0, 8), letter(0, 2 * p->rank() - 1);
        for (int i = 0; i < samples; ++i) {
          Word w;
          for (int k = len(rng); k > 0; --k) {
            int x = letter(rng);
            w.push_back({x / 2, x % 2 == 1});
          }
          w = free_reduce(w);
          std::cout << p->format(w) << ": " << (membership(g, w) ? "true" : "false") << "\n";
        }
      }
      return Ok;
    }
    if (core->parsed()) {
      auto p = load(cfg, f2);
      if (core_enum->parsed()) {
        auto cores = enumerate_small_cores(*p, n_edges, max_len, cfg.radius);
        if (cfg.format == "json") {
          Json arr = Json::array();
          for (const auto& c : cores) arr.push_back(to_json(c));
          print_json(arr);
        } else {
          std::cout << cores.size() << " cores\n";
          for (const auto& c : cores) {
            std::cout << " ";
            for (const auto& e : c.edges) std::cout << " " << e.from << "-" << p->format(e.label) << "->" << e.to;
            std::cout << "\n";
          }
        }
        return Ok;
      }
      MetricCore c = load_core(*p, p, core_file, gens);
      if (core_build->parsed()) {
        if (cfg.format == "json") print_json(to_json(c));
        else if (cfg.format == "dot") std::cout << to_dot(c);
        else std::cout << "sigma: " << size(c) << "\nrank: " << rank(c) << "\n";
        return Ok;
      }
      if (core_fold->parsed()) {
        FoldResult r = fold_to_minimal(c, cfg.depth, cfg.radius, cfg.budget);
        if (cfg.format == "json") {
          Json log = Json::array();
          MetricCore cur = c;
          for (const auto& m : r.log) {
            log.push_back(to_json(cur, m));
            cur = apply_move(cur, m);
          }
          print_json({{"core", to_json(r.core)},
                      {"log", log},
                      {"sigma_history", r.sigma_history},
                      {"horizon_binding", r.horizon_binding},
                      {"budget_exhausted", r.budget_exhausted}});
        } else if (cfg.format == "dot") {
          std::cout << to_dot(r.core);
        } else {
          std::cout << "sigma: " << size(r.core) << "\nmoves: " << r.log.size() << "\n";
          for (std::size_t i = 0; i < r.log.size(); ++i)
            std::cout << "  " << i << ": " << move_kind(r.log[i]) << " edge " << move_edge(r.log[i])
                      << " sigma " << r.sigma_history[i] << " -> " << r.sigma_history[i + 1] << "\n";
          if (r.horizon_binding) std::cout << "horizon binding\n";
        }
        if (r.budget_exhausted) {
          std::cerr << "error: BudgetExhausted: move budget " << cfg.budget << " used up\n";
          return Budget;
        }
        return Ok;
      }
      if (core_measure->parsed()) {
        if (!c.basepoint) c = attach_basepoint(c, cfg.radius);
        QiEstimate q = measure_qi(c, cfg.radius);
        if (cfg.format == "json") print_json(to_json(q));
        else std::cout << "K: " << str(q.K) << "\nC: " << str(q.C) << "\nsamples: " << q.samples << "\n";
        return Ok;
      }
      bool ok = check_minimal_edge_shortest(c, edge, cfg.depth, cfg.radius);
      std::cout << (ok ? "true" : "false") << "\n";
      return Ok;
    }
    if (map->parsed()) {
      auto p = load(cfg, f2);
      auto folded = [&](const std::string& s) {
        MetricCore c = core_from_generators(*p, parse_list(*p, s));
        c.presentation = p;
        FoldResult r = fold_to_minimal(c, cfg.depth, cfg.radius, cfg.budget);
        if (r.budget_exhausted) throw Error(ErrorCode::BudgetExhausted, "folding did not finish");
        return r.core;
      };
      CoreMap m = build_core_map(folded(source_gens), folded(target_gens), cfg.radius);
      if (map_build->parsed()) {
        if (cfg.format == "json") print_json(to_json(m));
        else if (cfg.format == "dot") std::cout << to_dot(m);
        else std::cout << "D: " << m.D << "\nsurjective: " << (map_is_surjective(m) ? "true" : "false") << "\n";
      } else if (map_measure->parsed()) {
        MapQi q = measure_map_qi(m, cfg.radius);
        if (cfg.format == "json") {
          print_json({{"empirical", to_json(q.empirical)},
                      {"predicted", to_json(q.predicted)},
                      {"within_step1", q.within_step1},
                      {"within_step2", q.within_step2}});
        } else {
          const auto& pc = q.predicted;
          std::cout << "empirical K: " << str(q.empirical.K) << " C: " << str(q.empirical.C) << "\n"
                    << "predicted K0: " << str(pc.K0) << " C0: " << str(pc.C0) << " K': " << str(pc.K1)
                    << " C': " << str(pc.C1) << "\n"
                    << "within: " << (q.within_step1 && q.within_step2 ? "true" : "false") << "\n";
        }
      } else {
        bool ok = size_bound_check(m);
        std::cout << "sigma(target) " << size(m.target) << " <= " << str(m.predicted.K1) << " * " << size(m.source)
                  << " + " << str(m.predicted.C1) << ": " << (ok ? "true" : "false") << "\n";
      }
      return Ok;
    }
    if (tau_cmd->parsed()) {
      auto p = load(cfg, f2);
      std::cout << tau(*p, parse_list(*p, gens)) << "\n";
      return Ok;
    }
    if (enum_cmd->parsed()) {
      auto p = load(cfg, f2);
      Enumeration e = enumerate_bounded(*p, alpha, tuple_rank);
      for (const auto& t : e.tuples) std::cout << to_json(*p, t).dump() << "\n";
      std::cerr << e.classes << " classes (" << (e.exact_dedup ? "exact" : "tuple") << " dedup)\n";
      return Ok;
    }
    if (chain_hnn->parsed()) {
      auto p = load(cfg, presets::hnn_example());
      // one extra term so that every printed step has a successor
      Chain ch = hnn_chain(*p, strict_flag ? steps + 1 : steps);
      std::vector<bool> strict;
      if (strict_flag) strict = verify_strict(*p, ch);
      if (cfg.format == "json") {
        Json arr = Json::array();
        for (int i = 0; i <= steps; ++i) {
          Json row = {{"index", i}, {"gens", words_json(*p, ch[i])}};
          if (strict_flag) row["strict"] = static_cast<bool>(strict[i]);
          arr.push_back(row);
        }
        print_json(arr);
      } else {
        for (int i = 0; i <= steps; ++i) {
          std::cout << "H" << i << " = <" << join(*p, ch[i]) << ">";
          if (strict_flag) std::cout << " strict: " << (strict[i] ? "true" : "false");
          std::cout << "\n";
        }
      }
      return Ok;
    }
    if (chain->parsed()) {
      auto p = load(cfg, f2);
      Chain ch = load_chain(*p, chain_file);
      if (chain_verify->parsed()) {
        std::vector<bool> s = verify_strict(*p, ch);
        for (std::size_t i = 0; i < s.size(); ++i)
          std::cout << "step " << i << " strict: " << (s[i] ? "true" : "false") << "\n";
      } else if (chain_run->parsed()) {
        ChainRecord r = run_chain_free(*p, ch, !relaxed);
        if (cfg.format == "json") {
          print_json(to_json(*p, r));
        } else {
          for (std::size_t i = 0; i < ch.size(); ++i) {
            std::cout << "H" << i << " edges " << r.edge_counts[i] << " rank " << r.ranks[i];
            if (i + 1 < ch.size())
              std::cout << " surjective: " << (r.surjective[i] ? "true" : "false")
                        << " strict: " << (r.strict[i] ? "true" : "false");
            std::cout << "\n";
          }
          if (r.stabilized) std::cout << "stabilized at " << r.stabilization_index << "\n";
          else std::cout << "not stabilized within horizon\n";
        }
      } else {
        ReducedChain r = reduce_chain(*p, ch);
        if (cfg.format == "json") print_json(to_json(*p, r));
        else
          for (std::size_t i = 0; i < r.chain.size(); ++i) std::cout << "H" << i << " = <" << join(*p, r.chain[i]) << ">\n";
      }
      return Ok;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return Ok;
}
