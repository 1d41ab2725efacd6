// schargraph: command-line front end over the header library.
// Exit codes: 0 success, 1 invalid input or class-U failure, 2 usage error (including unknown lemma ids).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "schargraph/cycle_analysis.hpp"
#include "schargraph/fixtures.hpp"
#include "schargraph/graph_core.hpp"
#include "schargraph/harness.hpp"
#include "schargraph/orientation_engine.hpp"
#include "schargraph/star_calculus.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace schargraph;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IO", "cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("PARSE", path + ": " + e.what());
  }
}

std::string set_text(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

Sign sign_arg(const std::string& text, const char* flag) {
  try {
    return parse_sign(text);
  } catch (const std::invalid_argument&) {
    throw Error("USAGE", std::string(flag) + " expects + or -");
  }
}

std::vector<int> int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error("USAGE", std::string(flag) + " expects a comma-separated list of integers");
    }
  }
  return out;
}

// a JSON type literal, or signs written out as "+-+-" or "+,-,+,-"
std::vector<Sign> sign_list(const std::string& text, const char* flag) {
  if (!text.empty() && text.front() == '[') {
    try {
      return type_from_json(json::parse(text));
    } catch (const std::exception&) {
      throw Error("USAGE", std::string(flag) + " is not a type literal");
    }
  }
  std::vector<Sign> out;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c != '+' && c != '-') throw Error("USAGE", std::string(flag) + " expects signs such as +-+-");
    out.push_back(c == '+' ? Sign::Plus : Sign::Minus);
  }
  if (out.empty()) throw Error("USAGE", std::string(flag) + " is empty");
  return out;
}

void emit(const json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// --- validate -----------------------------------------------------------------

int cmd_validate(const std::string& file, bool as_json) {
  IntersectionPair pair = pair_from_json(read_json(file));
  ValidationReport rep = validate_pair(pair);
  json issues = json::array();
  std::ostringstream os;
  for (const auto& i : rep.issues) {
    issues.push_back({{"code", i.code}, {"detail", i.detail}});
    os << i.code << ": " << i.detail << "\n";
  }
  for (const auto& n : rep.notes) os << "note: " << n << "\n";
  if (rep.ok()) os << "valid (p=" << pair.p << ", q=" << pair.q << ", " << pair.matching.size() << " edges)\n";
  emit({{"valid", rep.ok()}, {"issues", issues}, {"notes", rep.notes}}, as_json, os.str());
  return rep.ok() ? 0 : 1;
}

// --- analyze ------------------------------------------------------------------

json side_report(const PairViews& v, Side s, std::ostream& os) {
  const SideGraph& g = *v.side(s);
  json j = analyze_side(g);
  os << "G_" << to_char(s) << ": " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  for (const auto& c : j["x_cycles"])
    if (c["kind"] != "scharlemann")
      os << "  " << c["kind"].get<std::string>() << " label " << c["label"] << " on "
       << set_text(c["vertices"].get<std::vector<int>>()) << " order " << c["order"]
       << (c["new"].get<bool>() ? " new" : "") << "\n";
  for (const auto& c : j["scharlemann"])
    os << "  scharlemann cycle on " << set_text(c["vertices"].get<std::vector<int>>()) << " labels "
       << set_text(c["labels"].get<std::vector<int>>()) << " order " << c["order"] << "\n";
  os << "  scharlemann cycles " << (j["scharlemann_consistent"].get<bool>() ? "consistent" : "inconsistent") << "\n";
  for (const auto& w : j["great_webs"])
    os << "  great web " << set_text(w["vertices"].get<std::vector<int>>()) << " sign " << w["sign"].get<std::string>()
       << " m=" << w["m"] << "\n";
  for (const auto& ss : j["s_sets"])
    os << "  (" << ss["sign"].get<std::string>() << ")-set " << set_text(ss["vertices"].get<std::vector<int>>())
       << " leaving at " << set_text(ss["leave_labels"].get<std::vector<int>>())
       << (ss["innermost"].get<bool>() ? " innermost" : "") << "\n";
  os << "  isolated " << set_text(j["isolated"].get<std::vector<int>>()) << "\n";

  // trees of [V,W] edges in the other graph, V an innermost (s)-set, W its opposite-sign neighbours
  const SideGraph& other = *v.side(schargraph::other(s));
  json trees = json::array();
  for (const auto& ss : find_s_sets(g)) {
    if (!ss.innermost) continue;
    std::set<int> Wset;
    for (int u : ss.vertices)
      for (int x = 1; x <= g.label_count(); ++x) {
        int w = x_successor(g, u, x);
        if (g.sign(w) != ss.sign) Wset.insert(w);
      }
    std::vector<int> W(Wset.begin(), Wset.end());
    json comps = json::array();
    for (const auto& c : trees_or_cycles(other, ss.vertices, W)) {
      comps.push_back(to_json(c));
      os << "  G_" << to_char(schargraph::other(s)) << "[" << set_text(ss.vertices) << "," << set_text(W) << "] "
         << to_string(c.kind) << " on " << set_text(c.vertices);
      if (c.kind == ComponentKind::Tree || c.kind == ComponentKind::TreeAtSpecial) os << " root " << c.root;
      if (!c.cycle.empty()) os << " cycle " << set_text(c.cycle);
      os << "\n";
    }
    trees.push_back({{"V", ss.vertices}, {"W", W}, {"components", comps}});
  }
  j["trees"] = trees;
  return j;
}

int cmd_analyze(const std::string& file, const std::string& side, bool as_json) {
  PairViews v = make_views(pair_from_json(read_json(file)));
  std::ostringstream os;
  json sides = json::array();
  for (Side s : {Side::P, Side::Q})
    if (side.empty() || parse_side(side) == s) sides.push_back(side_report(v, s, os));
  emit({{"sides", sides}}, as_json, os.str());
  return 0;
}

// --- star ---------------------------------------------------------------------

struct StarInput {
  std::string star_file, type;
  std::string parity;  // with --type; default alternating from +
  Sign sign = Sign::Plus;
};

std::vector<Sign> alternating_parity(std::size_t n) {
  std::vector<Sign> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(i % 2 ? Sign::Minus : Sign::Plus);
  return p;
}

Star load_star(const StarInput& in) {
  if (!in.star_file.empty()) return star_from_json(read_json(in.star_file));
  LType tau = sign_list(in.type, "--type");
  auto parity = in.parity.empty() ? alternating_parity(tau.size()) : sign_list(in.parity, "--parity");
  if (parity.size() != tau.size()) throw Error("USAGE", "--parity needs one sign per label");
  LabelSet L;
  for (int l = 1; l <= static_cast<int>(tau.size()); ++l) L.push_back(l);
  return star_for_type(tau, in.sign, parity, L);
}

json star_summary(const Star& t, std::ostream& os, const std::string& name) {
  auto part = partition_switches(t);
  json j = {{"star", star_to_json(t)},
            {"type", type_to_json(type_of(t))},
            {"switches", to_json(part)},
            {"coherent", is_coherent(t)},
            {"bicoherent", is_bicoherent(t)}};
  os << name << ": " << star_to_json(t).dump() << "\n"
     << "  type " << type_to_json(type_of(t)).dump() << "  A=" << set_text(part.A) << " C=" << set_text(part.C)
     << " B+=" << set_text(part.Bplus) << " B-=" << set_text(part.Bminus) << (is_coherent(t) ? "  coherent" : "")
     << (is_bicoherent(t) ? " bicoherent" : "") << "\n";
  return j;
}

int cmd_star_derive(const StarInput& in, const std::string& chirality, const std::string& relative, bool as_json) {
  Star t = load_star(in);
  Sign chi = sign_arg(chirality, "--chirality");
  std::ostringstream os;
  json j = {{"input", star_summary(t, os, "T")}, {"chirality", to_string(chi)}};
  Star d = relative.empty() ? derivative(t, chi) : derivative_relative(t, int_list(relative, "--relative"), chi);
  if (!relative.empty()) j["L0"] = int_list(relative, "--relative");
  j["derivative"] = star_summary(d, os, relative.empty() ? std::string("d") + to_char(chi) + "T" : "d0 T");
  emit(j, as_json, os.str());
  return 0;
}

int cmd_star_cohere(const StarInput& in, const std::string& l0, bool as_json) {
  Star t = load_star(in);
  auto seq = sequence_of_coherence(type_of(t), t.parity, t.L);
  std::ostringstream os;
  os << "sequence of coherence, n=" << seq.stars.size() << ", m=" << seq.m << "\n";
  for (std::size_t i = 0; i < seq.stars.size(); ++i) {
    std::string name = "T" + std::to_string(i + 1);
    if (i > 0) name += " = d" + to_string(seq.d_signs[i - 1]) + "T" + std::to_string(i);
    star_summary(seq.stars[i], os, name);
  }
  json j = {{"type", type_to_json(type_of(t))}, {"sequence", to_json(seq)}};
  if (!l0.empty()) {
    auto it = inherited_type(seq, int_list(l0, "--l0"));
    j["inherited"] = to_json(it);
    os << "inherited type on " << set_text(it.L0) << ": " << type_to_json(it.tau0).dump() << " (eta_c "
       << to_string(it.eta_c) << ", eta_a " << to_string(it.eta_a) << (it.eta_a_free ? " free" : "") << ")\n";
  }
  emit(j, as_json, os.str());
  return 0;
}

int cmd_star_conjugate(const StarInput& in, bool as_json) {
  Star t = load_star(in);
  std::ostringstream os;
  json j = {{"input", star_summary(t, os, "T")}};
  j["conjugate"] = star_summary(conjugate_star(t), os, "T^");
  emit(j, as_json, os.str());
  return 0;
}

// --- represent ----------------------------------------------------------------

int cmd_represent(const std::string& file, const std::string& star_file, const std::string& side,
                  const std::string& eta_c, const std::string& eta_a, bool as_json) {
  if (eta_c.empty() != eta_a.empty()) throw Error("USAGE", "--eta-c and --eta-a go together");
  PairViews v = make_views(pair_from_json(read_json(file)));
  Side s = side.empty() ? Side::P : parse_side(side);
  Star t = star_from_json(read_json(star_file));
  OrientedGraph G = induce_orientation(v.side(s), t);
  LType tau = type_of(t);
  Representation rep = find_representing_faces(G, tau, v.side(other(s)).get());

  std::ostringstream os;
  json j = {{"orientation", orientation_to_json(G)}, {"type", type_to_json(tau)}, {"representation", to_json(rep)}};
  const auto& st = rep.stats;
  os << "G_" << to_char(s) << "(" << set_text(t.L) << ") oriented by type " << type_to_json(tau).dump() << "\n"
     << "  i=" << st.i << " u=" << st.u << " r=" << st.r << " s=" << st.s << " t=" << st.t << "\n";
  for (std::size_t k = 0; k < rep.faces.size(); ++k)
    os << "  representing face " << rep.faces[k] << " (" << (rep.dirs[k] == Dir::Out ? "source" : "sink") << ")\n";
  if (rep.faces.empty()) os << "  no representing face\n";
  if (rep.hoffman_applicable)
    os << "  r=0 conclusions: " << (rep.new_x_cycle ? "new x-cycle in C or A" : rep.flags.empty() ? "all hold" : "flagged")
       << "\n";
  for (const auto& f : rep.flags) os << "    flag " << f << "\n";

  json faces = json::array();
  std::optional<Sign> ec, ea;
  if (!eta_c.empty()) {
    ec = sign_arg(eta_c, "--eta-c");
    ea = sign_arg(eta_a, "--eta-a");
  }
  for (int r = 0; r < G.sub.region_count(); ++r) {
    if (!G.sub.regions()[static_cast<std::size_t>(r)].is_disk()) continue;
    json f = {{"face", r}, {"index", boundary_index(G, r).total}};
    if (ec) {
      try {
        auto b = good_corner_index_bound(G, G.sub, r, *ec, *ea);
        f["good_corner_bound"] = std::string(to_string(b.status));
      } catch (const Error& e) {
        if (e.code() != "UGLY_PRESENT") throw;
        f["good_corner_bound"] = "ugly";
      }
    }
    faces.push_back(f);
    os << "  face " << r << " index " << f["index"];
    if (ec) os << " good-corner bound " << f["good_corner_bound"].get<std::string>();
    os << "\n";
  }
  j["faces"] = faces;

  if (auto rf = harness::checks::try_rf(G)) {
    j["rf"] = to_json(*rf);
    os << "  RF: black faces " << set_text(std::vector<int>(rf->black_faces.begin(), rf->black_faces.end()))
       << ", switch edges " << rf->switch_edges << (rf->directed_cycle ? ", directed cycle in A or C" : "") << "\n";
  } else {
    j["rf"] = nullptr;
    os << "  RF: switch subgraph has a vertex of odd degree\n";
  }
  emit(j, as_json, os.str());
  return 0;
}

// --- verify / enumerate -------------------------------------------------------

harness::EnumerationSpec enum_spec(const std::string& pq) {
  auto v = int_list(pq, "--enumerate");
  if (v.size() != 2) throw Error("USAGE", "--enumerate expects p,q");
  harness::EnumerationSpec spec;
  spec.p = v[0];
  spec.q = v[1];
  return spec;
}

int cmd_verify(const std::vector<std::string>& lemmas, const std::string& suite, std::uint64_t seed,
               const std::string& enumerate, bool as_json) {
  if (lemmas.empty() && suite.empty()) throw Error("USAGE", "verify needs --lemma or --suite");
  const std::string profile = suite.empty() ? "smoke" : suite;
  harness::Corpus c = harness::make_corpus(profile, seed);
  if (!enumerate.empty()) {
    auto spec = enum_spec(enumerate);
    spec.iso_reduction = true;
    spec.seed = seed;
    c.pairs.clear();
    int i = 0;
    harness::enumerate_pairs(spec, [&](const IntersectionPair& pr) {
      harness::add_pair(c, "p" + std::to_string(spec.p) + "q" + std::to_string(spec.q) + "#" + std::to_string(i++), pr);
      return true;
    });
    c.description += "; pairs replaced by p=" + std::to_string(spec.p) + ", q=" + std::to_string(spec.q) +
                     " enumeration (" + std::to_string(i) + " pairs)";
  }
  std::vector<std::string> ids = lemmas.empty() ? harness::all_lemma_ids() : lemmas;
  harness::Report rep = harness::verify(ids, c, profile);
  emit(rep.to_json(), as_json, rep.text());
  return rep.class_u_failure() ? 1 : 0;
}

int cmd_enumerate(int p, int q, const std::string& out, bool connected, bool iso, bool all_signs, int samples,
                  std::uint64_t seed, bool as_json) {
  harness::EnumerationSpec spec;
  spec.p = p;
  spec.q = q;
  spec.connected_only = connected;
  spec.iso_reduction = iso;
  spec.all_sign_patterns = all_signs;
  spec.samples = samples;
  spec.seed = seed;
  auto pairs = harness::enumerate_pairs(spec);
  fs::create_directories(out);
  json files = json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "pair_%05zu.json", i);
    std::ofstream f(fs::path(out) / name);
    if (!f) throw Error("IO", "cannot write to '" + out + "'");
    f << pair_to_json(pairs[i]).dump() << "\n";
    files.push_back(name);
  }
  std::ostringstream os;
  os << pairs.size() << " valid pairs (p=" << p << ", q=" << q << ") written to " << out << "\n";
  emit({{"p", p}, {"q", q}, {"count", pairs.size()}, {"out", out}, {"files", files}}, as_json, os.str());
  return 0;
}

// --- fixtures -----------------------------------------------------------------

int cmd_fixtures(bool list, const std::string& name, bool as_json) {
  if (list == !name.empty()) throw Error("USAGE", "fixtures needs exactly one of --list or --emit NAME");
  if (!name.empty()) {
    std::cout << fixtures::json(name).dump(2) << "\n";
    return 0;
  }
  json j = json::array();
  std::ostringstream os;
  for (const auto& f : fixtures::all()) {
    j.push_back({{"name", f.name}, {"kind", f.kind}, {"summary", f.summary}});
    os << f.name << " (" << f.kind << "): " << f.summary << "\n";
  }
  emit(j, as_json, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersection-graph pairs, star calculus and lemma verification"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string file, side;
  auto* validate = app.add_subcommand("validate", "check a fixture against the pair invariants");
  validate->add_option("FILE", file, "fixture JSON")->required();

  auto* analyze = app.add_subcommand("analyze", "x-cycles, Scharlemann cycles, webs, (s)-sets, isolated vertices, trees");
  analyze->add_option("FILE", file, "fixture JSON")->required();
  analyze->add_option("--side", side, "P or Q (default both)")->check(CLI::IsMember({"P", "Q"}));

  StarInput sin;
  std::string chirality = "+", relative, l0;
  auto* star = app.add_subcommand("star", "star and type calculus");
  star->require_subcommand(1);
  auto star_inputs = [&](CLI::App* sub) {
    auto* a = sub->add_option("--star", sin.star_file, "star JSON file");
    auto* b = sub->add_option("--type", sin.type, "type literal, e.g. +-+- or [\"+\",\"-\"]");
    a->excludes(b);
    sub->add_option("--parity", sin.parity, "label parities with --type (default +-+-...)")->needs(b);
  };
  auto* derive = star->add_subcommand("derive", "positive, negative or relative derivative");
  star_inputs(derive);
  derive->add_option("--chirality", chirality, "+ or - (default +)");
  derive->add_option("--relative", relative, "L0 as a comma-separated label list");
  auto* cohere = star->add_subcommand("cohere", "sequence of coherence");
  star_inputs(cohere);
  cohere->add_option("--l0", l0, "also compute the inherited type on this label list");
  auto* conjugate = star->add_subcommand("conjugate", "conjugate of a star on every label");
  star_inputs(conjugate);

  std::string star_file, eta_c, eta_a;
  auto* represent = app.add_subcommand("represent", "orient a graph by a star and look for representing faces");
  represent->add_option("FILE", file, "fixture JSON")->required();
  represent->add_option("--star", star_file, "star JSON file")->required();
  represent->add_option("--side", side, "graph to orient, P (default) or Q")->check(CLI::IsMember({"P", "Q"}));
  represent->add_option("--eta-c", eta_c, "+ or -");
  represent->add_option("--eta-a", eta_a, "+ or -");

  std::vector<std::string> lemmas;
  std::string suite, pq;
  std::uint64_t seed = harness::kDefaultSeed;
  auto* verify = app.add_subcommand("verify", "run lemma checkers over a corpus");
  verify->add_option("--lemma", lemmas, "lemma id (repeatable)");
  verify->add_option("--suite", suite, "smoke, desk or full");
  verify->add_option("--seed", seed, "random seed (default " + std::to_string(harness::kDefaultSeed) + ")");
  verify->add_option("--enumerate", pq, "replace the corpus pairs by all valid p,q pairs up to relabelling");

  int p = 0, q = 0, samples = 0;
  std::string out;
  bool connected = false, iso = false, all_signs = false;
  auto* enumerate = app.add_subcommand("enumerate", "write every valid pair for p, q");
  enumerate->add_option("--p", p, "vertices of G_P")->required();
  enumerate->add_option("--q", q, "vertices of G_Q")->required();
  enumerate->add_option("--out", out, "output directory")->required();
  enumerate->add_flag("--connected", connected, "only pairs with both graphs connected");
  enumerate->add_flag("--iso", iso, "one pair per relabelling class");
  enumerate->add_flag("--all-signs", all_signs, "every balanced sign pattern");
  enumerate->add_option("--samples", samples, "draw this many pairs instead of enumerating");
  enumerate->add_option("--seed", seed, "seed for --samples");

  int bridge = 0;
  auto* width = app.add_subcommand("width", "width of a b-bridge presentation");
  width->add_option("--bridge", bridge, "bridge number")->required();

  bool list = false;
  std::string emit_name;
  auto* fx = app.add_subcommand("fixtures", "built-in figure fixtures");
  fx->add_flag("--list", list, "list fixtures");
  fx->add_option("--emit", emit_name, "print a fixture");

  // --json may appear after the subcommand as well
  for (auto* sub : {validate, analyze, derive, cohere, conjugate, represent, verify, enumerate, width, fx})
    sub->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(file, as_json);
    if (*analyze) return cmd_analyze(file, side, as_json);
    if (*derive) return cmd_star_derive(sin, chirality, relative, as_json);
    if (*cohere) return cmd_star_cohere(sin, l0, as_json);
    if (*conjugate) return cmd_star_conjugate(sin, as_json);
    if (*represent) return cmd_represent(file, star_file, side, eta_c, eta_a, as_json);
    if (*verify) return cmd_verify(lemmas, suite, seed, pq, as_json);
    if (*enumerate) return cmd_enumerate(p, q, out, connected, iso, all_signs, samples, seed, as_json);
    if (*width) {
      long long w = bridge_width(bridge);
      emit({{"bridge", bridge}, {"width", w}}, as_json, std::to_string(w) + "\n");
      return 0;
    }
    if (*fx) return cmd_fixtures(list, emit_name, as_json);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == "USAGE" || e.code() == "UNKNOWN_LEMMA" ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "INTERNAL: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
