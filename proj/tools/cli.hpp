#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "posetlab/chains.hpp"
#include "posetlab/embed.hpp"
#include "posetlab/family.hpp"
#include "posetlab/io.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/search.hpp"
#include "posetlab/verify.hpp"

namespace posetlab::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// What every JSON-producing subcommand prints.
struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  json checks = json::array();  // {name, claim, passed} per asserted check
  bool passed = true;

  json to_json() const {
    json j = {{"command", command}, {"inputs", inputs}, {"results", results}};
    if (!checks.empty()) {
      j["checks"] = checks;
      j["passed"] = passed;
    }
    return j;
  }
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParam("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParam("cannot write '" + path + "'");
  out << text;
}

inline Poset load_poset(const std::string& spec) {
  if (spec.starts_with("named:")) return parse_named_poset(spec);
  try {
    return poset_from_json(json::parse(read_file(spec)));
  } catch (const json::parse_error& e) {
    throw InvalidParam("'" + spec + "' is not valid poset JSON: " + e.what());
  }
}

inline SetFamily load_family(const std::string& path, int expected_n) {
  SetFamily f = parse_family(read_file(path));
  if (expected_n > 0 && f.n() != expected_n)
    throw InvalidParam("family file has n=" + std::to_string(f.n()) + " but --n " +
                       std::to_string(expected_n) + " was given");
  return f;
}

inline json family_to_json(const SetFamily& f) {
  json a = json::array();
  for (Mask m : f) a.push_back(set_to_json(m));
  return a;
}

inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(r.to_json(), "", rows);
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_quote(k) << ',' << csv_quote(v) << '\n';
  } else {
    out << r.to_json().dump(2) << '\n';
  }
}

inline unsigned default_workers() {
  if (const char* env = std::getenv("POSETLAB_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

inline std::set<int> parse_suite(const std::string& suite) {
  std::set<int> ids;
  if (suite == "all") return ids;
  std::stringstream ss(suite);
  for (std::string item; std::getline(ss, item, ',');) {
    bool matched = false;
    for (const auto& c : claims::checks())
      if (item == c.name || item == std::to_string(c.id)) ids.insert(c.id), matched = true;
    if (!matched) throw InvalidParam("unknown check '" + item + "' in --suite");
  }
  return ids;
}

}  // namespace detail

/// Runs the command line; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"posetlab: forbidden subposets in the Boolean lattice", "posetlab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  // Shared option storage; each subcommand binds what it needs.
  int n = 0, h = 0, s = 0, k = 0, r = 0, max_n = 12;
  long long budget_ms = 0;
  unsigned workers = detail::default_workers();
  std::string kind, family_path, mode_name = "weak", reading = "hasse", out_path, witness_path,
                                   seed_path, via = "formula", suite = "all", poset_spec;
  std::vector<int> sizes;
  std::vector<std::string> forbid;
  bool symmetry = false, timings = false;

  auto* poset_cmd = app.add_subcommand("poset", "Generate or inspect posets")->require_subcommand(1);
  auto* poset_gen = poset_cmd->add_subcommand("gen", "Print a named poset as JSON");
  poset_gen->add_option("--kind", kind, "chain|antichain|y|y_prime|t_r3|multilevel")->required();
  poset_gen->add_option("--k", k, "Element count for chain/antichain");
  poset_gen->add_option("--h", h, "Chain length for y/y_prime");
  poset_gen->add_option("--s", s, "Top (bottom) count for y (y_prime)");
  poset_gen->add_option("--r", r, "Degree for t_r3");
  poset_gen->add_option("--sizes", sizes, "Level sizes for multilevel")->delimiter(',');
  poset_gen->add_option("--reading", reading, "t_r3 degree reading")->check(CLI::IsMember({"hasse", "children"}));
  auto* poset_show = poset_cmd->add_subcommand("show", "Ranks, height and tree class of a poset");
  poset_show->add_option("poset", poset_spec, "Poset JSON path or named:...")->required();

  auto* family_cmd = app.add_subcommand("family", "Generate or summarise families")->require_subcommand(1);
  auto* family_gen = family_cmd->add_subcommand("gen", "Print a family file");
  family_gen->add_option("--kind", kind, "middle|f23|tail|layer")->required()
      ->check(CLI::IsMember({"middle", "f23", "tail", "layer"}));
  family_gen->add_option("--n", n, "Ground set size")->required();
  family_gen->add_option("--h", h, "Layer count (middle) or h (tail)");
  family_gen->add_option("--k", k, "Layer index (layer)");
  family_gen->add_option("--out", out_path, "Write to this path instead of stdout");
  auto* family_stats = family_cmd->add_subcommand("stats", "Layer profile and size of a family");
  family_stats->add_option("--family", family_path)->required();
  family_stats->add_option("--n", n);

  auto* check_cmd = app.add_subcommand("check", "Freeness and saturation checks")->require_subcommand(1);
  auto* check_free = check_cmd->add_subcommand("free", "Exit 0 iff the family avoids every forbidden poset");
  auto* check_sat = check_cmd->add_subcommand("saturated", "Exit 0 iff the family is free and saturated");
  for (auto* c : {check_free, check_sat}) {
    c->add_option("--family", family_path)->required();
    c->add_option("--n", n);
    c->add_option("--forbid", forbid, "named:y(2,2), named:y'(1,3), named:chain(2), named:t3(2) or a JSON path")->required();
    c->add_option("--mode", mode_name)->check(CLI::IsMember({"weak", "induced", "rp", "rank_preserving"}));
  }

  auto* measure = app.add_subcommand("measure", "Lubell mass, pair count, 2-chains, Kleitman bound, chain average");
  measure->add_option("--family", family_path)->required();
  measure->add_option("--n", n);
  measure->add_option("--via", via, "Chain average route")->check(CLI::IsMember({"formula", "enumeration"}));
  measure->add_option("--workers", workers);

  auto* search_cmd = app.add_subcommand("search", "Exact extremal values")->require_subcommand(1);
  auto* search_la = search_cmd->add_subcommand("la", "Largest free family in 2^[n]");
  search_la->add_option("--n", n)->required();
  search_la->add_option("--forbid", forbid)->required();
  search_la->add_option("--mode", mode_name)->check(CLI::IsMember({"weak", "induced", "rp", "rank_preserving"}));
  search_la->add_option("--budget-ms", budget_ms, "Time budget, 0 = unlimited");
  search_la->add_option("--workers", workers);
  search_la->add_option("--emit-witness", witness_path, "Write the witness family file here");
  search_la->add_option("--seed-family", seed_path, "Known free family used as the first incumbent");
  search_la->add_flag("--symmetry", symmetry, "Prune coordinate-permutation orbits");

  auto* verify_cmd = app.add_subcommand("verify", "Reproduce the claim suite")->require_subcommand(1);
  auto* verify_paper = verify_cmd->add_subcommand("paper", "Run every claim check");
  verify_paper->add_option("--suite", suite, "all, or comma-separated check names/ids");
  verify_paper->add_option("--max-n", max_n, "Largest ground set used by the checks");
  verify_paper->add_option("--workers", workers);
  verify_paper->add_flag("--timings", timings, "Include wall-clock seconds per check");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Report rep;
    int code = kOk;
    const FreenessMode mode = parse_mode(mode_name);
    auto load_forbidden = [&] {
      std::vector<Poset> ps;
      for (const auto& f : forbid) ps.push_back(detail::load_poset(f));
      return ps;
    };

    if (poset_gen->parsed()) {
      Poset p;
      if (kind == "chain") p = chain(k);
      else if (kind == "antichain") p = antichain(k);
      else if (kind == "y") p = y_poset(h, s);
      else if (kind == "y_prime") p = y_prime_poset(h, s);
      else if (kind == "t_r3")
        p = t_r3(r, reading == "hasse" ? TreeDegreeReading::hasse_degree : TreeDegreeReading::child_count);
      else if (kind == "multilevel") p = complete_multilevel(sizes);
      else throw InvalidParam("unknown poset kind '" + kind + "'");
      out << poset_to_json(p).dump() << '\n';
      return kOk;
    }
    if (poset_show->parsed()) {
      const Poset p = detail::load_poset(poset_spec);
      const RankAssignment ra = rank_assignment(p);
      json ranks = json::object();
      for (int x = 0; x < p.size(); ++x) ranks[p.label(x)] = ra.rank[x];
      rep.command = "poset show";
      rep.inputs = {{"poset", poset_spec}};
      rep.results = {{"poset", poset_to_json(p)},
                     {"ranks", ranks},
                     {"graded", ra.graded},
                     {"height", height(p)},
                     {"treeClass", to_string(classify_tree(p))}};
    } else if (family_gen->parsed()) {
      SetFamily f;
      if (kind == "middle") f = middle_layers(n, h);
      else if (kind == "f23") f = f23_construction(n);
      else if (kind == "tail") f = lubell_tail_family(n, h);
      else f = layers(n, k, k);
      const std::string text = serialize_family(f);
      if (out_path.empty()) out << text;
      else detail::write_file(out_path, text);
      return kOk;
    } else if (family_stats->parsed()) {
      const SetFamily f = detail::load_family(family_path, n);
      rep.command = "family stats";
      rep.inputs = {{"family", family_path}};
      rep.results = {{"n", f.n()}, {"size", f.size()}, {"layerProfile", layer_profile(f)}};
    } else if (check_free->parsed()) {
      const SetFamily f = detail::load_family(family_path, n);
      const auto ps = load_forbidden();
      const FreenessReport fr = verify_free(f, ps, mode);
      rep.command = "check free";
      rep.inputs = {{"n", f.n()}, {"family", family_path}, {"forbid", forbid}, {"mode", mode.name()}};
      rep.results = {{"free", fr.free}, {"familySize", f.size()}};
      if (!fr.free) {
        rep.results["copyOf"] = forbid[*fr.poset_index];
        rep.results["witness"] = embedding_to_json(ps[*fr.poset_index], *fr.witness);
      }
      rep.checks.push_back({{"name", "free"}, {"claim", "family contains no forbidden copy"}, {"passed", fr.free}});
      rep.passed = fr.free;
      code = fr.free ? kOk : kCheckFailed;
    } else if (check_sat->parsed()) {
      const SetFamily f = detail::load_family(family_path, n);
      const auto ps = load_forbidden();
      rep.command = "check saturated";
      rep.inputs = {{"n", f.n()}, {"family", family_path}, {"forbid", forbid}, {"mode", mode.name()}};
      const FreenessReport fr = verify_free(f, ps, mode);
      bool ok = fr.free;
      rep.results["free"] = fr.free;
      if (fr.free) {
        const SaturationResult sr = saturation_check(f, ps, mode);
        rep.results["saturated"] = sr.saturated;
        if (sr.counterexample) rep.results["counterexample"] = set_to_json(*sr.counterexample);
        ok = sr.saturated;
      }
      rep.checks.push_back({{"name", "saturated"},
                            {"claim", "family is free and every other set creates a forbidden copy"},
                            {"passed", ok}});
      rep.passed = ok;
      code = ok ? kOk : kCheckFailed;
    } else if (measure->parsed()) {
      const SetFamily f = detail::load_family(family_path, n);
      const auto route = via == "enumeration" ? ChainAverageRoute::enumeration : ChainAverageRoute::formula;
      rep.command = "measure";
      rep.inputs = {{"n", f.n()}, {"family", family_path}, {"via", via}};
      rep.results = {{"size", f.size()},
                     {"lubell", rational_string(lubell_mass(f))},
                     {"pairCount", pair_count(f).str()},
                     {"twoChains", exact_json(count_2chains(f))},
                     {"kleitmanBound", exact_json(kleitman_lower_bound(f.size(), f.n()))},
                     {"chainAvg", rational_string(chain_weight_average(f, route, workers))}};
    } else if (search_la->parsed()) {
      const auto ps = load_forbidden();
      SearchConfig cfg;
      cfg.budget = std::chrono::milliseconds(budget_ms);
      cfg.workers = workers;
      cfg.symmetry_pruning = symmetry;
      if (!seed_path.empty()) cfg.seed = detail::load_family(seed_path, n);
      const SearchOutcome o = la_exact(n, ps, mode, cfg);
      if (!witness_path.empty()) detail::write_file(witness_path, serialize_family(o.witness));
      rep.command = "search la";
      rep.inputs = {{"n", n}, {"forbid", forbid}, {"mode", mode.name()}, {"budgetMs", budget_ms},
                    {"workers", workers}, {"symmetry", symmetry}};
      rep.results = {{"value", o.value},
                     {"exact", o.exact},
                     {"nodesExplored", o.nodes_explored},
                     {"witness", detail::family_to_json(o.witness)}};
    } else if (verify_paper->parsed()) {
      claims::SuiteOptions opt;
      opt.max_n = max_n;
      opt.workers = workers;
      opt.only = detail::parse_suite(suite);
      rep.command = "verify paper";
      rep.inputs = {{"suite", suite}, {"maxN", max_n}, {"workers", workers}};
      for (const auto& c : claims::run_suite(opt)) {
        json row = {{"id", c.id}, {"name", c.name}, {"claim", c.claim}, {"passed", c.passed}, {"results", c.results}};
        if (timings) row["seconds"] = c.seconds, row["limitSeconds"] = c.limit_seconds;
        rep.checks.push_back(row);
        rep.passed = rep.passed && c.passed;
      }
      code = rep.passed ? kOk : kCheckFailed;
    }
    detail::emit(rep, format, out);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace posetlab::cli
