#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <sstream>

#include "nkg/collapse.hpp"
#include "nkg/complex.hpp"
#include "nkg/homology.hpp"
#include "nkg/verification.hpp"
#include "nkg/wedge.hpp"

namespace nkg::cli {

int depth_cap(Depth depth) {
  switch (depth) {
    case Depth::kCounts: return 5;
    case Depth::kAcyclicity: return 3;
    case Depth::kFullSnf: return 2;
  }
  return 0;
}

Depth parse_depth(const std::string& text) {
  if (text == "counts") return Depth::kCounts;
  if (text == "acyclicity") return Depth::kAcyclicity;
  if (text == "full-snf") return Depth::kFullSnf;
  throw std::invalid_argument("unknown depth: " + text);
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  if (text == "text") return Format::kText;
  throw std::invalid_argument("unknown format: " + text);
}

std::string to_string(Depth depth) {
  switch (depth) {
    case Depth::kCounts: return "counts";
    case Depth::kAcyclicity: return "acyclicity";
    case Depth::kFullSnf: return "full-snf";
  }
  return "?";
}

bool Report::passed() const {
  return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.passed; });
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const Item& i : items)
    if (!i.passed && std::find(out.begin(), out.end(), i.name) == out.end()) out.push_back(i.name);
  return out;
}

namespace {

enum class Group { kTheorem2, kTheorem3 };

struct LemmaInfo {
  const char* name;
  Group group;
  Depth min_depth;
};

// Lemma names as they appear in reports, with the depth that evaluates them.
constexpr LemmaInfo kLemmas[] = {
    {"face partition", Group::kTheorem2, Depth::kCounts},
    {"phi poset map", Group::kTheorem2, Depth::kCounts},
    {"a-matching", Group::kTheorem2, Depth::kCounts},
    {"theta poset map", Group::kTheorem2, Depth::kCounts},
    {"b-matching", Group::kTheorem2, Depth::kCounts},
    {"c-matching", Group::kTheorem2, Depth::kCounts},
    {"psi poset map", Group::kTheorem2, Depth::kCounts},
    {"cluster composition", Group::kTheorem2, Depth::kCounts},
    {"delta bijections", Group::kTheorem2, Depth::kCounts},
    {"shift bijections", Group::kTheorem2, Depth::kCounts},
    {"stable collapse", Group::kTheorem2, Depth::kAcyclicity},
    {"euler conservation", Group::kTheorem2, Depth::kCounts},
    {"sphere homology", Group::kTheorem2, Depth::kFullSnf},
    {"wedge counts", Group::kTheorem3, Depth::kCounts},
    {"p-matching", Group::kTheorem3, Depth::kAcyclicity},
    {"q-matching", Group::kTheorem3, Depth::kAcyclicity},
    {"pq partition", Group::kTheorem3, Depth::kAcyclicity},
    {"p-layer poset map", Group::kTheorem3, Depth::kAcyclicity},
    {"q-layer poset map", Group::kTheorem3, Depth::kAcyclicity},
    {"p-column poset map", Group::kTheorem3, Depth::kAcyclicity},
    {"q-column poset map", Group::kTheorem3, Depth::kAcyclicity},
    {"p-vertex poset map", Group::kTheorem3, Depth::kAcyclicity},
    {"q-vertex poset map", Group::kTheorem3, Depth::kAcyclicity},
    {"w-sequence poset map", Group::kTheorem3, Depth::kAcyclicity},
    {"kneser homology", Group::kTheorem3, Depth::kFullSnf},
    {"relative homology", Group::kTheorem3, Depth::kFullSnf},
};

const LemmaInfo* find_lemma(const std::string& name) {
  for (const LemmaInfo& l : kLemmas)
    if (name == l.name) return &l;
  return nullptr;
}

Depth effective_depth(const RunConfig& c) {
  if (c.command == "betti") return Depth::kFullSnf;
  if (c.command == "census") return std::max(c.depth, Depth::kAcyclicity);
  if (c.command == "build") return Depth::kCounts;
  if (c.command == "export") {
    return (c.what == "edges" || c.what == "maximal") ? Depth::kCounts : Depth::kFullSnf;
  }
  if (c.command == "verify" && c.target == "lemma") {
    const LemmaInfo* l = find_lemma(c.lemma);
    if (l) return std::max(c.depth, l->min_depth);
  }
  return c.depth;
}

bool needs_theorem2(const RunConfig& c) {
  if (c.command == "export") return c.what == "matching";
  if (c.command != "verify") return false;
  if (c.target == "theorem2" || c.target == "all") return true;
  const LemmaInfo* l = find_lemma(c.lemma);
  return c.target == "lemma" && l && l->group == Group::kTheorem2;
}

Json bigints(const std::vector<BigInt>& xs) {
  Json out = Json::array();
  for (const BigInt& x : xs) out.push_back(x.str());
  return out;
}

Json betti_json(const BettiReport& r) {
  Json b = Json::array();
  for (long long x : r.betti) b.push_back(x);
  return b;
}

bool only_in(const BettiReport& r, int dim, long long value) {
  for (int d = 0; d < static_cast<int>(r.betti.size()); ++d)
    if (r.betti[d] != (d == dim ? value : 0)) return false;
  return true;
}

Item homology_item(const std::string& name, const BettiReport& r, int dim, long long expected) {
  Item item{name};
  item.data["betti"] = betti_json(r);
  item.data["dimension"] = dim;
  item.data["expected"] = expected;
  item.data["torsion_free"] = r.torsion_free();
  item.data["mod_p_agrees"] = r.mod_p_agrees;
  item.passed = only_in(r, dim, expected) && r.torsion_free() && r.mod_p_agrees;
  if (!item.passed) item.witness = "reduced Betti " + betti_json(r).dump();
  return item;
}

// Runs `f`, turning a VerificationError into a failed item.
template <class F>
Item guarded(const std::string& name, F&& f) {
  Item item{name};
  try {
    f(item);
  } catch (const VerificationError& e) {
    item.passed = false;
    item.witness = e.lemma() + ": " + e.witness();
  }
  return item;
}

std::vector<Item> theorem2_items(const RunConfig& c) {
  const int k = c.k;
  std::vector<Item> items;
  Theorem2Result r;
  const bool global = c.depth != Depth::kCounts;
  try {
    r = theorem2_matching(k, global);
  } catch (const VerificationError& e) {
    items.push_back({e.lemma(), false, Json::object(), e.witness()});
    return items;
  }

  struct Acc {
    std::size_t fibers = 0, cells = 0, pairs = 0;
  };
  std::map<std::string, std::size_t> slot;
  std::vector<Acc> acc;
  for (const LemmaRecord& rec : r.records) {
    auto [it, fresh] = slot.try_emplace(rec.lemma, items.size());
    if (fresh) {
      items.push_back({rec.lemma});
      acc.emplace_back();
    }
    Item& item = items[it->second];
    Acc& a = acc[it->second];
    ++a.fibers;
    a.cells += rec.cells;
    a.pairs += rec.pairs;
    if (!rec.passed && item.passed) {
      item.passed = false;
      item.witness = rec.fiber + ": " + rec.witness;
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    items[i].data["fibers"] = acc[i].fibers;
    items[i].data["cells"] = acc[i].cells;
    items[i].data["pairs"] = acc[i].pairs;
  }

  if (k >= 1) {
    items.push_back(guarded("delta bijections", [&](Item& item) {
      std::size_t maps = 0;
      for (int rr = 1; rr <= k; ++rr)
        for (int ell = 3; ell <= rr + 5; ++ell) {
          verify_delta_bijections(rr, ell);
          maps += 7;
        }
      item.data["maps"] = maps;
    }));
    items.push_back(guarded("shift bijections", [&](Item& item) {
      std::size_t maps = 0;
      for (int s = 1; s <= k + 4; ++s)
        for (int u : index_set_J(k, s)) {
          verify_shift_bijection(k, s, u);
          ++maps;
        }
      item.data["maps"] = maps;
    }));
  }

  const SimplicialComplex ns = filtration(k, 1);
  const SimplexSet faces = ns.face_set(ns.dimension());
  Item collapse{"stable collapse"};
  collapse.data["faces"] = r.faces;
  collapse.data["pairs"] = r.matching.size();
  collapse.data["critical"] = r.critical.size();
  collapse.data["critical_equals_stable_complex"] = r.critical_is_stable_complex;
  collapse.data["acyclic"] = global ? Json(r.acyclic) : Json("not checked");
  collapse.passed = r.critical_is_stable_complex && (!global || r.acyclic);
  if (!collapse.passed) collapse.witness = "critical cells differ from F(N(SG)) or matching has a cycle";
  items.push_back(collapse);

  Item euler{"euler conservation"};
  euler.data["faces"] = euler_characteristic(faces);
  euler.data["critical"] = euler_characteristic(r.critical);
  euler.passed = euler.data["faces"] == euler.data["critical"];
  items.push_back(euler);

  if (c.depth == Depth::kFullSnf) items.push_back(homology_item("sphere homology", betti(ns, k + 1), k, 1));
  return items;
}

std::vector<Item> theorem3_items(const RunConfig& c) {
  const int k = c.k;
  std::vector<Item> items;
  const Theorem3Counts t = theorem3_counts(k);
  const long long per_p = (k + 1LL) * (k + 2) / 2;
  const long long per_q = k * (k + 1LL) / 2;
  Item counts{"wedge counts"};
  counts.data["predicted_t"] = t.predicted_t;
  counts.data["extra_k_cells"] = t.extra_k_cells;
  counts.data["extra_km1_cells"] = t.extra_km1_cells;
  counts.data["p_pairs"] = t.p_pairs;
  counts.data["q_pairs"] = t.q_pairs;
  counts.passed = static_cast<long long>(t.p_pairs) * per_p == t.extra_k_cells &&
                  static_cast<long long>(t.q_pairs) * per_q == t.extra_km1_cells &&
                  1 + t.extra_k_cells - t.extra_km1_cells == t.predicted_t;
  items.push_back(counts);
  if (c.depth == Depth::kCounts) return items;

  CensusOptions opt;
  opt.spot_check_fraction = k <= 2 ? 1.0 : 0.01;
  opt.seed = c.seed;
  opt.threads = c.threads;
  Census census;
  try {
    census = critical_census(k, opt);
  } catch (const VerificationError& e) {
    items.push_back({e.lemma(), false, Json::object(), e.witness()});
    return items;
  }
  for (char family : {'P', 'Q'}) {
    Item item{family == 'P' ? "p-matching" : "q-matching"};
    std::size_t fibers = 0, cells = 0;
    bool rows_ok = true;
    for (const CensusRow& row : census.rows) {
      if (row.family != family) continue;
      ++fibers;
      cells += row.cells;
      if (!row.passed && rows_ok) {
        rows_ok = false;
        item.witness = std::string(1, family) + "(" + std::to_string(row.i) + "," + std::to_string(row.j) +
                       "): " + std::to_string(row.critical) + " critical cells, acyclic=" +
                       (row.acyclic ? "yes" : "no");
      }
    }
    const std::size_t want_fibers = family == 'P' ? t.p_pairs : t.q_pairs;
    const long long want = family == 'P' ? t.extra_k_cells : t.extra_km1_cells;
    const std::size_t got = family == 'P' ? census.p_critical : census.q_critical;
    item.data["fibers"] = fibers;
    item.data["cells"] = cells;
    item.data["critical"] = got;
    item.data["expected_critical"] = want;
    item.data["critical_dimension"] = family == 'P' ? k : k - 1;
    item.passed = rows_ok && fibers == want_fibers && static_cast<long long>(got) == want;
    if (item.passed == false && item.witness.empty())
      item.witness = std::to_string(got) + " critical cells in " + std::to_string(fibers) + " fibres";
    items.push_back(item);
  }
  Item spot{"pq partition"};
  spot.data["fraction"] = opt.spot_check_fraction;
  spot.data["checked"] = census.spot_checked;
  spot.passed = census.spot_checks_passed;
  if (!spot.passed) spot.witness = "a sampled cell was classified into another fibre";
  items.push_back(spot);

  if (k <= 2 || c.allow_large) {
    const std::size_t base = items.size();
    std::map<std::string, std::size_t> slot;
    std::vector<std::pair<std::size_t, std::size_t>> acc;  // fibres, cells
    for (const PosetCheck& pc : verify_wedge_poset_maps(k)) {
      auto [it, fresh] = slot.try_emplace(pc.lemma, items.size());
      if (fresh) {
        items.push_back({pc.lemma});
        acc.emplace_back(0, 0);
      }
      Item& item = items[it->second];
      auto& a = acc[it->second - base];
      ++a.first;
      a.second += pc.cells;
      if (!pc.passed && item.passed) {
        item.passed = false;
        item.witness = pc.fiber + ": " + pc.witness;
      }
    }
    for (std::size_t i = 0; i < acc.size(); ++i) {
      items[base + i].data["fibers"] = acc[i].first;
      items[base + i].data["cells"] = acc[i].second;
    }
  }

  if (c.depth == Depth::kFullSnf) {
    const SimplicialComplex x1 = filtration(k, 1), x2 = filtration(k, 2), x3 = filtration(k, 3);
    items.push_back(homology_item("kneser homology", betti(x3, k + 1), k, t.predicted_t));
    const BettiReport top = relative_betti(x3, x2, k + 1);
    const BettiReport mid = relative_betti(x2, x1, k + 1);
    Item rel{"relative homology"};
    rel.data["top"] = betti_json(top);
    rel.data["middle"] = betti_json(mid);
    rel.data["expected_top"] = t.extra_k_cells;
    rel.data["expected_middle"] = t.extra_km1_cells;
    rel.passed = only_in(top, k, t.extra_k_cells) && only_in(mid, k - 1, t.extra_km1_cells) &&
                 top.torsion_free() && mid.torsion_free() && top.mod_p_agrees && mid.mod_p_agrees;
    if (!rel.passed) rel.witness = "H(X3,X2)=" + betti_json(top).dump() + " H(X2,X1)=" + betti_json(mid).dump();
    items.push_back(rel);
  }
  return items;
}

std::vector<Item> verify_items(const RunConfig& c) {
  if (c.target == "theorem2") return theorem2_items(c);
  if (c.target == "theorem3") return theorem3_items(c);
  if (c.target == "all") {
    std::vector<Item> items = theorem2_items(c);
    std::vector<Item> more = theorem3_items(c);
    items.insert(items.end(), more.begin(), more.end());
    return items;
  }
  const LemmaInfo* l = find_lemma(c.lemma);
  RunConfig sub = c;
  sub.depth = effective_depth(c);
  std::vector<Item> all = l->group == Group::kTheorem2 ? theorem2_items(sub) : theorem3_items(sub);
  std::vector<Item> items;
  for (const Item& i : all)
    if (i.name == c.lemma || !i.passed) items.push_back(i);
  if (items.empty()) {
    // Collapse lemmas always run; no record means the family is empty at this k.
    if (l->group == Group::kTheorem2)
      items.push_back({c.lemma, true, Json{{"instances", 0}}, ""});
    else
      items.push_back({c.lemma, false, Json::object(), "not evaluated at k=" + std::to_string(c.k)});
  }
  return items;
}

std::vector<Item> build_items(const RunConfig& c) {
  const KneserGraph g(c.kind, c.k);
  const SimplicialComplex x = neighborhood_complex(g);
  Item graph{"graph"};
  graph.data["kind"] = nkg::to_string(c.kind);
  graph.data["vertices"] = g.vertices().size();
  graph.data["edges"] = g.edge_count();
  Item cx{"complex"};
  cx.data["maximal_faces"] = x.maximal_faces().size();
  cx.data["dimension"] = x.dimension();
  Json by_dim = Json::object();
  std::map<int, std::size_t> census;
  for (const Simplex& m : x.maximal_faces()) ++census[m.dim()];
  for (const auto& [d, n] : census) by_dim[std::to_string(d)] = n;
  cx.data["maximal_by_dimension"] = by_dim;
  return {graph, cx};
}

std::vector<Item> betti_items(const RunConfig& c) {
  const KneserGraph g(c.kind, c.k);
  const SimplicialComplex x = neighborhood_complex(g);
  const int max_dim = c.dim >= 0 ? c.dim : c.k + 1;
  const BettiReport r = betti(x, max_dim, true);
  std::vector<Item> items;
  for (int d = 0; d <= max_dim; ++d) {
    Item item{"betti " + std::to_string(d)};
    item.data["dimension"] = d;
    item.data["rank"] = r.betti[d];
    item.data["cells"] = r.cells[d];
    item.data["torsion"] = bigints(r.torsion[d]);
    items.push_back(item);
  }
  Item modp{"mod-p agreement"};
  modp.passed = r.mod_p_agrees;
  modp.data["primes"] = Json::array({kCheckPrimes[0], kCheckPrimes[1]});
  items.push_back(modp);
  const long long expected = c.kind == GraphKind::kKneser ? theorem3_counts(c.k).predicted_t : 1;
  Item shape = homology_item("expected shape", r, c.k, expected);
  items.push_back(shape);
  return items;
}

std::vector<Item> census_items(const RunConfig& c) {
  CensusOptions opt;
  opt.check_acyclicity = true;
  opt.spot_check_fraction = c.k <= 2 ? 1.0 : 0.01;
  opt.seed = c.seed;
  opt.threads = c.threads;
  const Census census = critical_census(c.k, opt);
  std::vector<Item> items;
  for (const CensusRow& row : census.rows) {
    Item item{std::string(1, row.family) + "(" + std::to_string(row.i) + "," + std::to_string(row.j) + ")"};
    item.passed = row.passed;
    item.data["cells"] = row.cells;
    item.data["pairs"] = row.pairs;
    item.data["critical"] = row.critical;
    item.data["critical_dimension"] = row.critical_dim;
    item.data["acyclic"] = row.acyclic;
    items.push_back(item);
  }
  Item totals{"census totals"};
  totals.data["p_critical"] = census.p_critical;
  totals.data["q_critical"] = census.q_critical;
  totals.data["expected_p"] = census.expected.extra_k_cells;
  totals.data["expected_q"] = census.expected.extra_km1_cells;
  totals.data["spot_checked"] = census.spot_checked;
  totals.passed = census.passed();
  items.push_back(totals);
  return items;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string status_line(const Report& r) {
  if (r.passed()) return "PASS";
  std::string s = "FAIL";
  const auto names = r.failures();
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : ": ") + names[i];
  return s;
}

}  // namespace

std::vector<std::string> lemma_names() {
  std::vector<std::string> out;
  for (const LemmaInfo& l : kLemmas) out.emplace_back(l.name);
  return out;
}

void check_caps(const RunConfig& c) {
  if (c.k < 0) throw Refusal("k must be nonnegative");
  const Depth depth = effective_depth(c);
  int cap = depth_cap(depth);
  std::string what = "depth " + to_string(depth);
  if (needs_theorem2(c) && kTheorem2Cap < cap) {
    cap = kTheorem2Cap;
    what = "full enumeration of F(N(S_{3,k}))";
  }
  if (c.k > cap && !c.allow_large) {
    throw Refusal("refused: " + what + " is capped at k <= " + std::to_string(cap) + " (requested k=" +
                  std::to_string(c.k) + "); face counts grow combinatorially. Pass --allow-large to override, up to k <= " +
                  std::to_string(kHardLimit) + ".");
  }
  if (c.k > kHardLimit) {
    throw Refusal("refused: k=" + std::to_string(c.k) + " exceeds the hard limit k <= " + std::to_string(kHardLimit) +
                  " (C(k+6,3) vertex ids must fit in 256 bits).");
  }
  if (c.command == "verify" && c.target == "lemma" && !find_lemma(c.lemma)) {
    std::string names;
    for (const LemmaInfo& l : kLemmas) names += std::string(names.empty() ? "" : ", ") + l.name;
    throw Refusal("unknown lemma '" + c.lemma + "'; known: " + names);
  }
}

Report run(const RunConfig& c) {
  check_caps(c);
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.command = c.command;
  if (c.command == "verify") r.command += " " + (c.target == "lemma" ? "lemma " + c.lemma : c.target);
  if (c.command == "build" || c.command == "betti") r.command += " " + nkg::to_string(c.kind);
  r.k = c.k;
  r.seed = c.seed;
  if (c.command == "verify") {
    r.items = verify_items(c);
  } else if (c.command == "build") {
    r.items = build_items(c);
  } else if (c.command == "betti") {
    r.items = betti_items(c);
  } else if (c.command == "census") {
    r.items = census_items(c);
  } else {
    throw std::invalid_argument("unknown command: " + c.command);
  }
  if (c.timing)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void write_report(const Report& r, Format format, std::ostream& out) {
  switch (format) {
    case Format::kJson: {
      Json j;
      j["command"] = r.command;
      j["status"] = status_line(r);
      j["k"] = r.k;
      j["results"] = Json::array();
      for (const Item& i : r.items) {
        Json item;
        item["name"] = i.name;
        item["passed"] = i.passed;
        for (const auto& [key, value] : i.data.items()) item[key] = value;
        if (!i.witness.empty()) item["witness"] = i.witness;
        j["results"].push_back(item);
      }
      j["seed"] = r.seed;
      j["elapsed_ms"] = r.elapsed_ms ? Json(*r.elapsed_ms) : Json(nullptr);
      // One line, so the status (and any failed lemma) is on the first line.
      out << j.dump() << '\n';
      break;
    }
    case Format::kCsv:
      out << "status," << csv_field(status_line(r)) << '\n';
      out << "name,passed,witness,data\n";
      for (const Item& i : r.items)
        out << csv_field(i.name) << ',' << (i.passed ? "true" : "false") << ',' << csv_field(i.witness) << ','
            << csv_field(i.data.dump()) << '\n';
      out << "seed," << r.seed << '\n';
      out << "elapsed_ms," << (r.elapsed_ms ? std::to_string(*r.elapsed_ms) : "") << '\n';
      break;
    case Format::kText:
      out << status_line(r) << '\n';
      out << r.command << " k=" << r.k << " seed=" << r.seed << '\n';
      for (const Item& i : r.items) {
        out << (i.passed ? "  ok    " : "  FAIL  ") << i.name;
        for (const auto& [key, value] : i.data.items()) out << ' ' << key << '=' << value.dump();
        if (!i.witness.empty()) out << "  [" << i.witness << ']';
        out << '\n';
      }
      if (r.elapsed_ms) out << "elapsed_ms=" << *r.elapsed_ms << '\n';
      break;
  }
}

void run_export(const RunConfig& c, std::ostream& out) {
  check_caps(c);
  const KneserGraph g(c.kind, c.k);
  if (c.what == "edges") {
    g.export_edges(out);
    return;
  }
  const SimplicialComplex x = neighborhood_complex(g);
  if (c.what == "maximal") {
    x.export_maximal(out);
  } else if (c.what == "faces") {
    if (c.dim < 0) throw std::invalid_argument("export faces needs --dim");
    x.export_band(out, c.dim);
  } else if (c.what == "boundary") {
    if (c.dim < 0) throw std::invalid_argument("export boundary needs --dim");
    boundary_matrix(x, c.dim, c.dim == 0).write_triplets(out);
  } else if (c.what == "matching") {
    if (c.kind != GraphKind::kS) throw std::invalid_argument("export matching needs --kind s");
    theorem2_matching(c.k).matching.write(out, g.level());
  } else {
    throw std::invalid_argument("unknown export: " + c.what);
  }
}

}  // namespace nkg::cli
