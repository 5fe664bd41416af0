// Command line front end: root listings, freeness verdicts, Peterson
// translation, translation graphs, pattern searches, and the (L_k) /
// (T_k) verification drivers.
//
// Exit codes: 0 success/pass, 1 mathematical fail, 2 usage error,
// 3 ambiguous-verdict abort.

#include <unistd.h>

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "rootfree/serialize.hpp"

using namespace rootfree;

namespace {

struct Options {
  std::string format = "text";
  std::string tier = "fast";
  std::string labeling = "paper";
  std::string cache;
  int threads = 1;
};

Bits subset_from_arg(const RootSystem& R, const Labeling& lab, const std::string& text) {
  if (lab.bourbaki && text.rfind("w:", 0) == 0) {
    WeylWord w = parse_word(R, split_tokens(text.substr(2)));
    for (int& a : w.letters) a = lab.u2i[a];
    return inversion_set(R, w);
  }
  return parse_subset(R, text);
}

json subset_out(const RootSystem& R, const Labeling& lab, const Bits& S) {
  json j = subset_json(R, S);
  if (lab.bourbaki) {
    j["roots"] = json::array();
    for (int b : S.indices()) j["roots"].push_back(show_root(R, lab, b));
  }
  return j;
}

std::string roots_braces(const RootSystem& R, const Labeling& lab, const Bits& S) {
  std::string s = "{";
  bool first = true;
  for (int b : S.indices()) {
    if (!first) s += ", ";
    first = false;
    s += show_root(R, lab, b);
  }
  return s + "}";
}

// progress meter, enabled only on a terminal
std::function<void(std::uint64_t, std::uint64_t)> progress_meter(const char* what) {
  if (!isatty(2)) return nullptr;
  std::string label = what;
  return [label](std::uint64_t done, std::uint64_t total) {
    std::fprintf(stderr, "\r%s %llu/%llu", label.c_str(), (unsigned long long)done,
                 (unsigned long long)total);
    if (done + 1 >= total) std::fprintf(stderr, "\n");
    std::fflush(stderr);
  };
}

int cmd_roots(const Options& opt, const std::string& spec) {
  RootSystemPtr Rp = parse_system(spec);
  const RootSystem& R = *Rp;
  Labeling lab = make_labeling(R, opt.labeling);
  if (opt.format == "json") {
    json j;
    j["system"] = R.name;
    j["rank"] = R.l;
    j["count"] = R.n();
    j["roots"] = json::array();
    for (int k = 0; k < R.n(); ++k)
      j["roots"].push_back(json{{"index", k},
                                {"coefficients", json::parse(show_root(R, lab, k))},
                                {"height", R.height[k]},
                                {"long", (bool)R.long_root[k]}});
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  for (int k = 0; k < R.n(); ++k)
    std::cout << k << ": " << show_root(R, lab, k) << " ht=" << R.height[k]
              << (R.long_root[k] ? " long" : " short") << '\n';
  return 0;
}

int cmd_free(const Options& opt, const std::string& spec, const std::string& subset) {
  RootSystemPtr Rp = parse_system(spec);
  const RootSystem& R = *Rp;
  Labeling lab = make_labeling(R, opt.labeling);
  Bits S = subset_from_arg(R, lab, subset);
  FreenessVerdict v = verify_subset(R, S);
  if (opt.format == "json") {
    json j = verdict_json(v);
    j["system"] = R.name;
    j["subset"] = subset_out(R, lab, S);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "system: " << R.name << '\n';
    std::cout << "subset: 0x" << S.hex() << " " << roots_braces(R, lab, S) << '\n';
    std::cout << "status: " << freeness_name(v.status) << '\n';
    if (v.status == Freeness::Free) {
      std::cout << "coexponents:";
      for (int e : v.coexponents) std::cout << ' ' << e;
      std::cout << '\n';
    }
    std::cout << "poincare: " << poly_string(v.poincare) << '\n';
  }
  return v.status == Freeness::Ambiguous ? 3 : 0;
}

int cmd_translate(const Options& opt, const std::string& spec, const std::string& subset,
                  int root, bool to_ideal) {
  RootSystemPtr Rp = parse_system(spec);
  const RootSystem& R = *Rp;
  Labeling lab = make_labeling(R, opt.labeling);
  Bits S = subset_from_arg(R, lab, subset);
  if (to_ideal) {
    // single-step translation is total; only the walk to an ideal
    // needs coconvexity to terminate at one
    if (!is_coconvex(R, S)) {
      std::cerr << "error: subset is not coconvex\n";
      return 2;
    }
    TranslatePath path = translate_to_ideal(R, S);
    std::vector<int> ex = exp_multiset(R, path.ideal);
    if (opt.format == "json") {
      json j;
      j["system"] = R.name;
      j["start"] = subset_out(R, lab, S);
      j["steps"] = json::array();
      for (size_t i = 0; i < path.steps.size(); ++i) {
        const Bits& after = i + 1 < path.steps.size() ? path.steps[i + 1].first : path.ideal;
        j["steps"].push_back(
            json{{"root", path.steps[i].second}, {"result", subset_out(R, lab, after)}});
      }
      j["ideal"] = subset_out(R, lab, path.ideal);
      j["exp"] = json::array();
      for (int e : ex) j["exp"].push_back(e);
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "start: 0x" << S.hex() << " " << roots_braces(R, lab, S) << '\n';
      for (size_t i = 0; i < path.steps.size(); ++i) {
        const Bits& after = i + 1 < path.steps.size() ? path.steps[i + 1].first : path.ideal;
        std::cout << "tau by " << show_root(R, lab, path.steps[i].second) << " -> 0x" << after.hex()
                  << " " << roots_braces(R, lab, after) << '\n';
      }
      std::cout << "ideal: 0x" << path.ideal.hex() << " " << roots_braces(R, lab, path.ideal)
                << '\n';
      std::cout << "exp:";
      for (int e : ex) std::cout << ' ' << e;
      std::cout << '\n';
    }
    return 0;
  }
  if (root < 0 || root >= R.n()) {
    std::cerr << "error: --root index out of range 0.." << R.n() - 1 << '\n';
    return 2;
  }
  Bits T = translate(R, S, root);
  if (opt.format == "json") {
    json j;
    j["system"] = R.name;
    j["start"] = subset_out(R, lab, S);
    j["root"] = root;
    j["result"] = subset_out(R, lab, T);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "tau by " << show_root(R, lab, root) << ": 0x" << S.hex() << " -> 0x" << T.hex()
              << " " << roots_braces(R, lab, T) << '\n';
  }
  return 0;
}

int cmd_graph(const Options& opt, const std::string& spec, bool filtered) {
  RootSystemPtr Rp = parse_system(spec);
  const RootSystem& R = *Rp;
  Labeling lab = make_labeling(R, opt.labeling);
  if (R.n() > 20 && opt.tier != "full") {
    std::cerr << "error: graph for " << R.name << " needs --tier full\n";
    return 2;
  }
  TranslationGraph G = build_graph(Rp, filtered);
  if (opt.format == "dot") {
    std::cout << graph_dot(R, G, &lab);
  } else if (opt.format == "json") {
    std::cout << graph_json(R, G).dump(2) << '\n';
  } else {
    size_t ne = 0, ni = 0, nt = 0;
    for (const auto& e : G.edges) ne += e.size();
    for (size_t v = 0; v < G.vertices.size(); ++v) {
      ni += G.ideal[v];
      nt += G.terminal[v];
    }
    std::cout << (filtered ? "filtered " : "") << "translation graph of " << R.name << ": "
              << G.vertices.size() << " vertices, " << ne << " edges, " << ni << " ideals, " << nt
              << " terminal\n";
    for (size_t v = 0; v < G.vertices.size(); ++v)
      if (G.terminal[v])
        std::cout << "terminal: 0x" << G.vertices[v].hex() << " "
                  << roots_braces(R, lab, G.vertices[v]) << (G.ideal[v] ? " (ideal)" : "") << '\n';
  }
  return 0;
}

int cmd_patterns(const Options& opt, const std::string& spec, const std::string& class_tag) {
  RootSystemPtr Rp = parse_system(spec);
  const RootSystem& R = *Rp;
  if (R.n() > 20 && opt.tier != "full") {
    std::cerr << "error: pattern search in " << R.name << " needs --tier full\n";
    return 2;
  }
  std::string cache_path;
  if (!opt.cache.empty())
    cache_path = opt.cache + "/patterns-" + R.name + "-" + class_tag + ".json";
  std::optional<SearchReport> rep;
  if (!cache_path.empty()) rep = load_search_report(cache_path, Rp, class_tag);
  if (!rep) {
    rep = find_minimal_patterns(Rp, class_tag, progress_meter("classifying"));
    if (!cache_path.empty()) save_pattern_db(cache_path, {*rep});
  }
  Labeling lab = make_labeling(R, opt.labeling);
  if (opt.format == "json")
    std::cout << search_report_json(*rep).dump(2) << '\n';
  else
    std::cout << search_report_text(*rep, &lab);
  return rep->n_ambiguous ? 3 : 0;
}

int cmd_verify(const Options& opt, const std::string& check, int k, const std::string& spec) {
  RootSystemPtr Rp = parse_system(spec);
  const RootSystem& R = *Rp;
  Labeling lab = make_labeling(R, opt.labeling);
  std::string c = check;
  for (char& ch : c) ch = (char)std::toupper((unsigned char)ch);
  if (c != "L" && c != "LK" && c != "T" && c != "TK") {
    std::cerr << "error: unknown check '" << check << "' (use L or T)\n";
    return 2;
  }
  bool is_L = c[0] == 'L';
  if (k < 1) {
    std::cerr << "error: k must be positive\n";
    return 2;
  }
  if (is_L && R.n() >= 20 && opt.tier != "full") {
    std::cerr << "error: verify L on " << R.name << " needs --tier full\n";
    return 2;
  }
  CheckReport rep = is_L ? lk_report(R, k, progress_meter("checking"))
                         : tk_report(Rp, k, 500000, progress_meter("checking"));
  std::string name = (is_L ? "L" : "T") + std::to_string(k) + "(" + R.name + ")";
  if (opt.format == "json") {
    json j;
    j["check"] = is_L ? "L" : "T";
    j["k"] = k;
    j["system"] = R.name;
    j["holds"] = rep.holds;
    j["subsets_checked"] = rep.subsets_checked;
    if (rep.counterexample) j["counterexample"] = subset_out(R, lab, *rep.counterexample);
    std::cout << j.dump(2) << '\n';
  } else if (rep.holds) {
    std::cout << name << ": PASS (" << rep.subsets_checked << " subsets checked)\n";
  } else {
    std::cout << name << ": FAIL\n";
    std::cout << "counterexample: 0x" << rep.counterexample->hex() << " "
              << roots_braces(R, lab, *rep.counterexample) << '\n';
  }
  return rep.holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coconvex root subsets, arrangement freeness, and Peterson translation"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--tier", opt.tier, "computation tier; large sweeps need 'full'")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  app.add_option("--threads", opt.threads,
                 "worker thread count (output is identical for every value)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cache", opt.cache, "directory for pattern database files");
  app.add_option("--labeling", opt.labeling,
                 "simple-root labeling for words and coefficient vectors; "
                 "bourbaki reverses B/C chains (masks are unaffected)")
      ->check(CLI::IsMember({"paper", "bourbaki"}))
      ->capture_default_str();

  std::string spec, class_tag = "coconvex", check;
  std::vector<std::string> subset_parts;
  int root = -1, kk = 3;
  bool to_ideal = false, filtered = false;

  CLI::App* roots = app.add_subcommand("roots", "list the positive roots in height order");
  roots->add_option("spec", spec, "root system, e.g. A3 or B2xA1")->required();

  CLI::App* freec = app.add_subcommand("free", "freeness verdict for a coconvex subset");
  freec->add_option("spec", spec)->required();
  freec->add_option("subset", subset_parts, "subset: 'w: 2 1 3 2', mask:0x.., roots:0,2, all")
      ->required();

  CLI::App* trans = app.add_subcommand("translate", "Peterson translation");
  trans->add_option("spec", spec)->required();
  trans->add_option("subset", subset_parts)->required();
  trans->add_option("--root", root, "positive-root index to translate by");
  trans->add_flag("--to-ideal", to_ideal, "translate repeatedly down to a lower order ideal");

  CLI::App* graph = app.add_subcommand("graph", "translation graph");
  graph->add_option("spec", spec)->required();
  graph->add_flag("--filtered", filtered, "freeness-filtered graph");

  CLI::App* pats = app.add_subcommand("patterns", "minimal non-free pattern search");
  pats->add_option("spec", spec)->required();
  pats->add_option("--class", class_tag, "subset class")
      ->check(CLI::IsMember({"coconvex", "biconvex"}))
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "local-to-global freeness checks");
  verify->add_option("check", check, "L or T")->required();
  verify->add_option("k", kk, "corank bound")->required();
  verify->add_option("spec", spec)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (opt.threads != 1)
    std::cerr << "note: running single-threaded; results do not depend on --threads\n";

  std::string subset;
  for (const auto& p : subset_parts) {
    if (!subset.empty()) subset += ' ';
    subset += p;
  }

  try {
    if (roots->parsed()) return cmd_roots(opt, spec);
    if (freec->parsed()) return cmd_free(opt, spec, subset);
    if (trans->parsed()) {
      if (to_ideal == (root >= 0)) {
        std::cerr << "error: give exactly one of --root and --to-ideal\n";
        return 2;
      }
      return cmd_translate(opt, spec, subset, root, to_ideal);
    }
    if (graph->parsed()) return cmd_graph(opt, spec, filtered);
    if (pats->parsed()) return cmd_patterns(opt, spec, class_tag);
    if (verify->parsed()) return cmd_verify(opt, check, kk, spec);
  } catch (const AmbiguousVerdict& e) {
    std::cerr << "ambiguous: " << e.what() << '\n';
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
