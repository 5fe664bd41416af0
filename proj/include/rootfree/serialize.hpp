#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rootfree/patterns.hpp"

// JSON and DOT serialization plus the textual subset grammar used by
// the command line tool.  All JSON uses stable key order (nlohmann's
// object is sorted) so output is byte-deterministic.

namespace rootfree {

using json = nlohmann::json;

// ---------------------------------------------------------------------
// polynomials and verdicts

inline std::string poly_string(const IntPoly& p) {
  if (p.c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < p.c.size(); ++k) {
    if (p.c[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0)
      os << p.c[k];
    else {
      if (p.c[k] != 1) os << p.c[k] << "*";
      os << "t";
      if (k > 1) os << "^" << k;
    }
  }
  if (first) return "0";
  return os.str();
}

inline json poly_json(const IntPoly& p) {
  json a = json::array();
  for (Int c : p.c) a.push_back((std::int64_t)c);
  return a;
}

inline json verdict_json(const FreenessVerdict& v) {
  json j;
  j["status"] = freeness_name(v.status);
  j["coexponents"] = json::array();
  for (int e : v.coexponents) j["coexponents"].push_back(e);
  j["poincare"] = poly_json(v.poincare);
  return j;
}

inline json arrangement_json(const Arrangement& A) {
  json j;
  j["ambient_dim"] = A.ambient_dim;
  j["normals"] = json::array();
  for (const Vec& n : A.normals) {
    json r = json::array();
    for (Int c : n) r.push_back((std::int64_t)c);
    j["normals"].push_back(std::move(r));
  }
  return j;
}

// ---------------------------------------------------------------------
// subsets

inline json subset_json(const RootSystem& R, const Bits& S) {
  json j;
  j["mask"] = "0x" + S.hex();
  j["roots"] = json::array();
  for (int b : S.indices()) j["roots"].push_back(render_root(R.pos[b]));
  j["size"] = (int)S.count();
  return j;
}

// Subset grammar:
//   "mask:0x2f"          hex bit mask over the root order
//   "roots:0,2,5"        positive-root indices in the root order
//   "w: 2 1 3 2"         inversion set of the word (1-based letters)
//   "ideal:0,1,2"        dominance closure check included
//   "all"                every positive root
//   "empty"              the empty set
inline Bits parse_subset(const RootSystem& R, const std::string& text) {
  std::string s = text;
  auto strip = [](std::string& x) {
    while (!x.empty() && (x.front() == ' ' || x.front() == '\t')) x.erase(x.begin());
    while (!x.empty() && (x.back() == ' ' || x.back() == '\t')) x.pop_back();
  };
  strip(s);
  if (s == "all") {
    Bits b(R.n());
    for (int i = 0; i < R.n(); ++i) b.set(i);
    return b;
  }
  if (s == "empty" || s == "(empty)" || s.empty()) return Bits(R.n());
  auto starts = [&](const char* p) { return s.rfind(p, 0) == 0; };
  if (starts("w:")) {
    WeylWord w = parse_word(R, split_tokens(s.substr(2)));
    return inversion_set(R, w);
  }
  if (starts("mask:")) {
    std::string hex = s.substr(5);
    strip(hex);
    if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) hex = hex.substr(2);
    if (hex.empty()) throw std::invalid_argument("empty mask");
    Bits b(R.n());
    int bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
      int d;
      if (*it >= '0' && *it <= '9')
        d = *it - '0';
      else if (*it >= 'a' && *it <= 'f')
        d = *it - 'a' + 10;
      else if (*it >= 'A' && *it <= 'F')
        d = *it - 'A' + 10;
      else
        throw std::invalid_argument("bad hex digit in mask");
      for (int k = 0; k < 4; ++k, ++bit)
        if (d >> k & 1) {
          if (bit >= R.n()) throw std::invalid_argument("mask has bits beyond the root count");
          b.set(bit);
        }
    }
    return b;
  }
  bool ideal = false;
  if (starts("ideal:")) {
    ideal = true;
    s = s.substr(6);
  } else if (starts("roots:")) {
    s = s.substr(6);
  }
  // comma or space separated indices
  Bits b(R.n());
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    std::istringstream ts(tok);
    std::string part;
    while (ts >> part) {
      size_t used = 0;
      int idx = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument("bad root index: " + part);
      if (idx < 0 || idx >= R.n()) throw std::invalid_argument("root index out of range: " + part);
      b.set(idx);
    }
  }
  if (ideal && !is_lower_ideal(R, b)) throw std::invalid_argument("subset is not a lower ideal");
  return b;
}

// ---------------------------------------------------------------------
// labeling-aware display

// Letter maps between a user-facing simple-root labeling and the
// internal one.  Under "bourbaki" the nodes of every B/C factor are
// reversed (the internal convention indexes those chains from the
// special end); masks and root indices are labeling-independent, so
// only rendered words and coefficient vectors change.
struct Labeling {
  bool bourbaki = false;
  std::vector<int> u2i, i2u;  // 0-based simple-root index maps
};

inline Labeling make_labeling(const RootSystem& R, const std::string& mode) {
  if (mode != "paper" && mode != "bourbaki")
    throw std::invalid_argument("labeling must be paper or bourbaki");
  Labeling lab;
  lab.bourbaki = mode == "bourbaki";
  lab.u2i.resize(R.l);
  lab.i2u.resize(R.l);
  for (int i = 0; i < R.l; ++i) lab.u2i[i] = i;
  if (lab.bourbaki) {
    int nfac = R.factor_of_node.empty()
                   ? 0
                   : 1 + *std::max_element(R.factor_of_node.begin(), R.factor_of_node.end());
    for (int f = 0; f < nfac; ++f) {
      if (R.factor_letter[f] != 'B' && R.factor_letter[f] != 'C') continue;
      std::vector<int> nodes;
      for (int i = 0; i < R.l; ++i)
        if (R.factor_of_node[i] == f) nodes.push_back(i);
      for (size_t p = 0; p < nodes.size(); ++p) lab.u2i[nodes[p]] = nodes[nodes.size() - 1 - p];
    }
  }
  for (int i = 0; i < R.l; ++i) lab.i2u[lab.u2i[i]] = i;
  return lab;
}

inline std::string show_word(const Labeling& lab, const WeylWord& w) {
  WeylWord u;
  for (int a : w.letters) u.letters.push_back(lab.i2u[a]);
  return render_word(u);
}

inline std::string show_root(const RootSystem& R, const Labeling& lab, int idx) {
  Root v(R.l);
  for (int k = 0; k < R.l; ++k) v[k] = R.pos[idx][lab.u2i[k]];
  return render_root(v);
}

// ---------------------------------------------------------------------
// translation graphs

inline json graph_json(const RootSystem& R, const TranslationGraph& G) {
  json j;
  j["system"] = R.name;
  j["filtered"] = G.filtered;
  j["vertices"] = json::array();
  for (size_t v = 0; v < G.vertices.size(); ++v) {
    json jv = subset_json(R, G.vertices[v]);
    jv["id"] = (int)v;
    jv["ideal"] = (bool)G.ideal[v];
    jv["terminal"] = (bool)G.terminal[v];
    j["vertices"].push_back(std::move(jv));
  }
  j["edges"] = json::array();
  for (size_t v = 0; v < G.edges.size(); ++v)
    for (const auto& [a, t] : G.edges[v])
      j["edges"].push_back(json{{"from", (int)v}, {"to", t}, {"root", a}});
  return j;
}

inline std::string graph_dot(const RootSystem& R, const TranslationGraph& G,
                             const Labeling* lab = nullptr) {
  std::ostringstream os;
  os << "digraph \"" << (G.filtered ? "GFr_" : "G_") << R.name << "\" {\n";
  os << "  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (size_t v = 0; v < G.vertices.size(); ++v) {
    os << "  v" << v << " [label=\"0x" << G.vertices[v].hex();
    if (G.ideal[v]) os << "\\nideal";
    os << "\"";
    if (G.terminal[v]) os << ", style=bold";
    if (G.ideal[v]) os << ", color=blue";
    os << "];\n";
  }
  for (size_t v = 0; v < G.edges.size(); ++v)
    for (const auto& [a, t] : G.edges[v])
      os << "  v" << v << " -> v" << t << " [label=\""
         << (lab ? show_root(R, *lab, a) : render_root(R.pos[a])) << "\"];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------
// pattern databases

// hash of the root order so cached databases are invalidated if the
// labeling convention changes
inline std::uint64_t labeling_hash(const RootSystem& R) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (char c : R.name) mix((unsigned char)c);
  for (const Root& r : R.pos)
    for (Int c : r) mix((std::uint64_t)(c + 7));
  return h;
}

inline json pattern_db_json(const std::vector<SearchReport>& reports) {
  json j;
  j["version"] = 1;
  j["systems"] = json::array();
  for (const SearchReport& rep : reports) {
    const RootSystem& R = *rep.sys;
    json js;
    js["system"] = R.name;
    js["labeling"] = std::to_string(labeling_hash(R));
    js["class"] = rep.class_tag;
    js["counts"] = {{"free", rep.n_free},
                    {"not_minimal", rep.n_not_minimal},
                    {"minimal", rep.n_minimal},
                    {"minimal_embedded", rep.n_minimal_embedded},
                    {"ambiguous", rep.n_ambiguous}};
    js["patterns"] = json::array();
    for (const Bits& S : rep.minimal_patterns) {
      json jp = subset_json(R, S);
      if (rep.class_tag == "biconvex") {
        auto w = word_from_inversion_set(R, S);
        if (w) jp["word"] = render_word(*w);
      }
      js["patterns"].push_back(std::move(jp));
    }
    j["systems"].push_back(std::move(js));
  }
  return j;
}

inline void save_pattern_db(const std::string& path, const std::vector<SearchReport>& reports) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << pattern_db_json(reports).dump(2) << '\n';
}

// Loads the patterns for one system/class from a database file written
// by save_pattern_db.  Returns nothing on any mismatch (missing file,
// wrong version, labeling hash change).
inline std::optional<std::vector<Pattern>> load_pattern_db(const std::string& path,
                                                           const RootSystemPtr& Rp,
                                                           const std::string& class_tag) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception&) {
    return std::nullopt;
  }
  if (!j.is_object() || j.value("version", 0) != 1 || !j.contains("systems")) return std::nullopt;
  const RootSystem& R = *Rp;
  for (const json& js : j["systems"]) {
    if (js.value("system", "") != R.name || js.value("class", "") != class_tag) continue;
    if (js.value("labeling", "") != std::to_string(labeling_hash(R))) return std::nullopt;
    std::vector<Pattern> out;
    for (const json& jp : js["patterns"]) {
      try {
        out.push_back({Rp, parse_subset(R, "mask:" + jp.at("mask").get<std::string>()), class_tag});
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
    return out;
  }
  return std::nullopt;
}

// Rebuilds a SearchReport from a database file, or nothing on any
// mismatch.  The minimal-pattern list and counts round-trip exactly.
inline std::optional<SearchReport> load_search_report(const std::string& path,
                                                      const RootSystemPtr& Rp,
                                                      const std::string& class_tag) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception&) {
    return std::nullopt;
  }
  if (!j.is_object() || j.value("version", 0) != 1 || !j.contains("systems")) return std::nullopt;
  const RootSystem& R = *Rp;
  for (const json& js : j["systems"]) {
    if (js.value("system", "") != R.name || js.value("class", "") != class_tag) continue;
    if (js.value("labeling", "") != std::to_string(labeling_hash(R))) return std::nullopt;
    SearchReport rep;
    rep.sys = Rp;
    rep.class_tag = class_tag;
    try {
      const json& c = js.at("counts");
      rep.n_free = c.at("free").get<std::uint64_t>();
      rep.n_not_minimal = c.at("not_minimal").get<std::uint64_t>();
      rep.n_minimal = c.at("minimal").get<std::uint64_t>();
      rep.n_minimal_embedded = c.at("minimal_embedded").get<std::uint64_t>();
      rep.n_ambiguous = c.at("ambiguous").get<std::uint64_t>();
      for (const json& jp : js.at("patterns"))
        rep.minimal_patterns.push_back(
            parse_subset(R, "mask:" + jp.at("mask").get<std::string>()));
    } catch (const std::exception&) {
      return std::nullopt;
    }
    return rep;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------
// report rendering

inline json search_report_json(const SearchReport& rep) {
  std::vector<SearchReport> one{rep};
  return pattern_db_json(one)["systems"][0];
}

inline std::string search_report_text(const SearchReport& rep, const Labeling* lab = nullptr) {
  const RootSystem& R = *rep.sys;
  std::ostringstream os;
  os << R.name << " " << rep.class_tag << ": " << rep.minimal_patterns.size()
     << " minimal non-free pattern" << (rep.minimal_patterns.size() == 1 ? "" : "s") << "\n";
  os << "  free " << rep.n_free << ", not minimal " << rep.n_not_minimal << ", minimal "
     << rep.n_minimal;
  if (rep.n_minimal_embedded) os << " (" << rep.n_minimal_embedded << " embedded)";
  if (rep.n_ambiguous) os << ", AMBIGUOUS " << rep.n_ambiguous;
  os << "\n";
  for (const Bits& S : rep.minimal_patterns) {
    os << "  0x" << S.hex() << "  {";
    bool first = true;
    for (int b : S.indices()) {
      if (!first) os << ", ";
      first = false;
      os << (lab ? show_root(R, *lab, b) : render_root(R.pos[b]));
    }
    os << "}";
    if (rep.class_tag == "biconvex") {
      auto w = word_from_inversion_set(R, S);
      if (w) os << "  w: " << (lab ? show_word(*lab, *w) : render_word(*w));
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace rootfree
