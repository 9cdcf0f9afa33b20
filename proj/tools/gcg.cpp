#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gcg/automorphism.hpp"
#include "gcg/caps.hpp"
#include "gcg/cayley.hpp"
#include "gcg/census.hpp"
#include "gcg/error.hpp"
#include "gcg/gc_spec.hpp"
#include "gcg/graph_io.hpp"
#include "gcg/symmetry.hpp"
#include "gcg/theorems.hpp"

using namespace gcg;
using Json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalidSpec = 2, kBudget = 3, kRefuted = 4 };

struct Globals {
  std::optional<std::int64_t> caps_aut;
  std::optional<int> caps_bits;
  std::optional<std::uint64_t> caps_aut_enum;
  int jobs = 1;
  std::string format;

  Caps caps() const {
    Caps c = caps_from_environment();
    if (caps_aut) c.search.node_budget = *caps_aut;
    if (caps_bits) c.bit_budget = *caps_bits;
    if (caps_aut_enum) c.aut_enumeration_cap = *caps_aut_enum;
    if (c.search.node_budget < 1 || c.bit_budget < 1 || c.aut_enumeration_cap < 1)
      throw InvalidInput("caps must be positive");
    return c;
  }
  bool json() const { return format == "json"; }
};

// --set takes ids or element names, comma separated.
std::vector<Element> parse_set(const FiniteGroup& g, const std::string& text) {
  std::vector<Element> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    token = token.substr(b, token.find_last_not_of(" \t") - b + 1);
    if (auto e = g.find(token)) {
      out.push_back(*e);
      continue;
    }
    std::size_t used = 0;
    int id = -1;
    try {
      id = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || id < 0 || id >= g.order())
      throw InvalidInput("'" + token + "' is neither an element name nor an id of " + g.descriptor().to_string());
    out.push_back(id);
  }
  return out;
}

struct SpecArgs {
  std::string group;
  int alpha = 0;
  std::string set;
};

GCSpec make_spec(const SpecArgs& a, const Caps& caps) {
  auto g = make_group(a.group, caps.max_group_order);
  const auto inv = enumerate_involutory_automorphisms(g, caps.max_group_order);
  if (a.alpha < 0 || a.alpha >= static_cast<int>(inv.size()))
    throw InvalidInput("alpha index " + std::to_string(a.alpha) + " out of range; " + a.group + " has " +
                       std::to_string(inv.size()) + " involutory automorphisms");
  return GCSpec(inv[a.alpha], ElementSet(g, parse_set(*g, a.set)));
}

Json validation_json(const GCSpec& s) {
  const auto& r = s.report();
  const auto& g = *s.group();
  auto w = [&](const std::optional<Element>& e) { return e ? Json(g.name(*e)) : Json(nullptr); };
  return {{"valid", r.valid()},
          {"cond_i", {{"holds", r.cond_i}, {"witness", w(r.witness_i)}}},
          {"cond_ii", {{"holds", r.cond_ii}, {"witness", w(r.witness_ii)}}},
          {"cond_iii", {{"holds", r.cond_iii}, {"witness", w(r.witness_iii)}}}};
}

void print_validation_text(const GCSpec& s, std::ostream& os) {
  const auto& r = s.report();
  const auto& g = *s.group();
  auto line = [&](const char* name, bool ok, const std::optional<Element>& w, const char* what) {
    os << "  " << name << ": " << (ok ? "holds" : "FAILS");
    if (!ok && w) os << "  witness " << what << " = " << g.name(*w) << " (id " << *w << ")";
    os << '\n';
  };
  os << "validation: " << (r.valid() ? "valid" : "invalid") << '\n';
  line("(i)   alpha^2 = 1", r.cond_i, r.witness_i, "g");
  line("(ii)  S meets no alpha(x^-1) x", r.cond_ii, r.witness_ii, "x");
  line("(iii) alpha(S^-1) = S", r.cond_iii, r.witness_iii, "s");
}

Json graph_analysis(const Graph& x, const Caps& caps) {
  Json j;
  j["vertices"] = x.order();
  j["edges"] = x.edge_count();
  j["degree"] = regular_degree(x) ? Json(*regular_degree(x)) : Json(nullptr);
  j["connected"] = is_connected(x);
  j["bipartite"] = is_bipartite(x);
  j["graph6"] = to_graph6(x);
  try {
    const auto aut = automorphism_group(x, caps.search);
    j["aut_order"] = aut.order.str();
    j["orbits"] = aut.orbits.size();
    j["canonical_graph6"] = canonical_form(x, caps.search).fingerprint;
  } catch (const Error& e) {
    j["aut_order"] = "unknown";
    j["aut_note"] = e.what();
  }
  const auto v = detect_cayley(x, caps.cayley());
  j["cayley"] = to_string(v.status);
  if (v.reason != Refutation::none) j["cayley_reason"] = to_string(v.reason);
  if (!v.note.empty()) j["cayley_note"] = v.note;
  if (v.witness) j["cayley_group"] = v.witness->group->descriptor().to_string();
  j["vertex_transitive"] = v.status == CayleyStatus::cayley                ? Json(true)
                           : v.reason == Refutation::not_vertex_transitive ? Json(false)
                                                                           : Json(nullptr);
  if (j["vertex_transitive"].is_null()) {
    try {
      j["vertex_transitive"] = is_vertex_transitive(x, caps.search).transitive;
    } catch (const Error&) {
      j["vertex_transitive"] = "unknown";
    }
  }
  try {
    const auto s = stability_check(x, caps.search);
    j["stability"] = to_string(s.status);
    if (s.status != Stability::not_applicable) {
      j["aut_x"] = s.aut_x.str();
      j["aut_cover"] = s.aut_cover.str();
    }
  } catch (const Error& e) {
    j["stability"] = "unknown";
  }
  return j;
}

void print_json_or_text(const Json& j, bool json, std::ostream& os) {
  if (json) {
    os << j.dump() << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

// Named graphs for export and analyze: C<n>, K<n>, E<n>, petersen.
Graph named_graph(const std::string& name) {
  if (name == "petersen") return petersen_graph();
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'K' || name[0] == 'E')) {
    std::size_t used = 0;
    int n = -1;
    try {
      n = std::stoi(name.substr(1), &used);
    } catch (const std::exception&) {
    }
    if (used == name.size() - 1 && n >= 0 && n <= 4096) {
      if (name[0] == 'C' && n >= 3) return cycle_graph(n);
      if (name[0] == 'K') return complete_graph(n);
      if (name[0] == 'E') return edgeless_graph(n);
    }
  }
  throw InvalidInput("unknown named graph '" + name + "' (use C<n>, K<n>, E<n> or petersen)");
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string t;
  while (std::getline(in, t, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw InvalidInput("expected integers, got '" + text + "'");
    out.push_back(v);
  }
  return out;
}

struct GraphSource {
  SpecArgs spec;
  bool have_spec = false;
  std::string graph6, named, ex32, ex33;
};

// Builds the graph named by exactly one source option. Invalid specs throw
// InvalidSpec after printing their validation report.
Graph resolve_graph(const GraphSource& s, const Caps& caps, std::optional<GCSpec>* spec_out = nullptr) {
  int given = s.have_spec + !s.graph6.empty() + !s.named.empty() + !s.ex32.empty() + !s.ex33.empty();
  if (given != 1) throw InvalidInput("give exactly one of --group, --graph6, --named, --ex32, --ex33");
  if (!s.graph6.empty()) return from_graph6(s.graph6);
  if (!s.named.empty()) return named_graph(s.named);
  std::optional<GCSpec> spec;
  if (!s.ex32.empty()) {
    const auto v = parse_ints(s.ex32);
    if (v.size() != 2) throw InvalidInput("--ex32 takes m,n");
    spec = build_counterexample(CounterexampleKind::ex32, v[0], v[1], caps.max_group_order);
  } else if (!s.ex33.empty()) {
    const auto v = parse_ints(s.ex33);
    if (v.size() != 1) throw InvalidInput("--ex33 takes k");
    spec = build_counterexample(CounterexampleKind::ex33, v[0], 0, caps.max_group_order);
  } else {
    spec = make_spec(s.spec, caps);
  }
  if (!spec->valid()) {
    print_validation_text(*spec, std::cerr);
    throw InvalidSpec("connection set fails validation");
  }
  if (spec_out) *spec_out = spec;
  return build_gc_graph(*spec);
}

void add_source_options(CLI::App* cmd, GraphSource& s) {
  cmd->add_option("--group", s.spec.group, "group descriptor, e.g. Z4, D6, Z2xZ2xZ3, Dih(Z2xZ4), A4");
  cmd->add_option("--alpha", s.spec.alpha, "index of the involutory automorphism (0 = identity)");
  cmd->add_option("--set", s.spec.set, "connection set: comma separated ids or element names");
  cmd->add_option("--graph6", s.graph6, "graph in graph6");
  cmd->add_option("--named", s.named, "C<n>, K<n>, E<n> or petersen");
  cmd->add_option("--ex32", s.ex32, "counterexample on Z_2^m x Z_2^n: m,n");
  cmd->add_option("--ex33", s.ex33, "counterexample on Z2 x Z2 x Z_(2k+1): k");
}

int cmd_group_list(const Globals& gl, int max_order) {
  const auto caps = gl.caps();
  if (max_order < 1) throw InvalidInput("--max-order must be positive");
  if (max_order > caps.max_group_order) throw CapExceeded("--max-order exceeds the group order cap");
  Json all = Json::array();
  for (const auto& d : group_catalog(max_order)) {
    auto g = make_group(d, caps.max_group_order);
    Json j{{"group", d.to_string()}, {"order", g->order()}, {"abelian", g->is_abelian()}};
    if (gl.json())
      all.push_back(j);
    else
      std::cout << d.to_string() << "\torder " << g->order() << (g->is_abelian() ? "\tabelian" : "") << '\n';
  }
  if (gl.json()) std::cout << all.dump() << '\n';
  return kOk;
}

int cmd_build(const Globals& gl, const SpecArgs& a, const std::string& out, const std::string& export_format) {
  const auto caps = gl.caps();
  const auto spec = make_spec(a, caps);
  const auto& g = *spec.group();
  Json j;
  j["group"] = g.descriptor().to_string();
  j["alpha_index"] = a.alpha;
  std::vector<std::string> alpha_names, set_names;
  for (Element x : spec.alpha().images()) alpha_names.push_back(g.name(x));
  for (Element x : spec.set().elements()) set_names.push_back(g.name(x));
  j["alpha"] = alpha_names;
  j["set"] = set_names;
  j["validation"] = validation_json(spec);
  if (!spec.valid()) {
    if (gl.json())
      std::cout << j.dump() << '\n';
    else
      print_validation_text(spec, std::cout);
    return kInvalidSpec;
  }
  const Graph x = build_gc_graph(spec);
  const auto k = kernel_subgroup(spec);
  j["kernel_order"] = k.kernel.order();
  j["unworthy"] = k.kernel.order() > 1;
  std::vector<std::string> kn;
  for (Element e : k.kernel.elements().elements()) kn.push_back(g.name(e));
  j["kernel"] = kn;
  j["fix_order"] = fix_set(spec.alpha()).order();
  j["omega_order"] = omega_set(spec.alpha()).set.size();
  j.update(graph_analysis(x, caps));
  if (gl.json()) {
    std::cout << j.dump() << '\n';
  } else {
    print_validation_text(spec, std::cout);
    Json rest = j;
    rest.erase("validation");
    print_json_or_text(rest, false, std::cout);
  }
  if (!out.empty()) {
    std::ofstream o(out);
    if (!o) throw InvalidInput("cannot write " + out);
    if (export_format == "dot")
      o << to_dot(x);
    else if (export_format == "json")
      o << to_json(x) << '\n';
    else
      o << to_graph6(x) << '\n';
  }
  return kOk;
}

int cmd_enumerate(const Globals& gl, const std::string& group, std::optional<int> alpha, bool nonempty, bool connected,
                  bool complement, bool reps) {
  const auto caps = gl.caps();
  auto g = make_group(group, caps.max_group_order);
  const auto inv = enumerate_involutory_automorphisms(g, caps.max_group_order);
  std::vector<std::size_t> chosen;
  if (reps)
    chosen = conjugacy_class_representatives(inv, enumerate_automorphisms(g, caps.max_group_order));
  else
    for (std::size_t i = 0; i < inv.size(); ++i) chosen.push_back(i);
  if (alpha && (*alpha < 0 || *alpha >= static_cast<int>(inv.size())))
    throw InvalidInput("alpha index out of range");
  EnumerationOptions opt;
  opt.nonempty_only = nonempty;
  opt.connected_only = connected;
  opt.up_to_complement = complement;
  opt.bit_budget = caps.bit_budget;
  for (std::size_t i : chosen) {
    if (alpha && static_cast<int>(i) != *alpha) continue;
    std::uint64_t count = 0;
    enumerate_connection_sets(inv[i], opt, [&](const GCSpec& s) {
      ++count;
      std::vector<std::string> names;
      for (Element e : s.set().elements()) names.push_back(g->name(e));
      if (gl.json()) {
        std::cout << Json{{"alpha_index", i}, {"set", s.set().elements()}, {"names", names}}.dump() << '\n';
      } else {
        std::cout << "alpha " << i << "\t{";
        for (std::size_t t = 0; t < names.size(); ++t) std::cout << (t ? ", " : "") << names[t];
        std::cout << "}\n";
      }
    });
    if (!gl.json()) std::cout << "# alpha " << i << ": " << count << " connection sets\n";
  }
  return kOk;
}

int cmd_analyze(const Globals& gl, const GraphSource& src) {
  const auto caps = gl.caps();
  std::optional<GCSpec> spec;
  const Graph x = resolve_graph(src, caps, &spec);
  Json j = graph_analysis(x, caps);
  if (spec) {
    const auto k = kernel_subgroup(*spec);
    j["kernel_order"] = k.kernel.order();
    j["unworthy"] = k.kernel.order() > 1;
    j["triangles"] = triangle_profile(x);
  }
  print_json_or_text(j, gl.json(), std::cout);
  return kOk;
}

int cmd_verify(const Globals& gl, const std::string& id, TheoremParams params) {
  params.caps = gl.caps();
  const auto reports = run_theorem(id, params);
  bool refuted = false;
  for (const auto& r : reports) {
    refuted = refuted || r.verdict == Verdict::refuted;
    if (gl.format == "text") {
      std::cout << r.theorem_id << "\t" << r.instance << "\t" << to_string(r.verdict) << "\t" << r.instances
                << " instance(s)";
      if (!r.note.empty()) std::cout << "\t" << r.note;
      std::cout << '\n';
    } else {
      std::cout << r.to_json().dump() << '\n';
    }
  }
  return refuted ? kRefuted : kOk;
}

int cmd_census(const Globals& gl, RunConfig config) {
  config.caps = gl.caps();
  config.jobs = gl.jobs;
  const auto s = run_census(config);
  const Json j{{"records", s.records},
               {"resumed", s.resumed},
               {"unknown", s.unknown},
               {"contradictions", s.contradictions},
               {"out", config.out_path}};
  if (gl.json())
    std::cout << j.dump() << '\n';
  else
    std::cout << s.records << " records written to " << config.out_path << " (" << s.resumed << " resumed, "
              << s.unknown << " with unknown flags, " << s.contradictions << " contradictions)\n";
  return s.contradictions ? kRefuted : kOk;
}

int cmd_export(const Globals& gl, const GraphSource& src, bool canonical, const std::string& out) {
  const auto caps = gl.caps();
  const std::string fmt = gl.format.empty() ? "graph6" : gl.format;
  if (fmt != "graph6" && fmt != "dot" && fmt != "json") throw InvalidInput("unknown export format '" + fmt + "'");
  Graph x = resolve_graph(src, caps);
  if (canonical) {
    const auto c = canonical_form(x, caps.search);
    std::vector<std::string> labels(x.order());
    for (int v = 0; v < x.order(); ++v)
      labels[c.labeling[v]] = x.labels().empty() ? std::to_string(v) : x.labels()[v];
    x = relabel(x, c.labeling);
    x.set_labels(labels);
  }
  std::string text;
  if (fmt == "graph6")
    text = to_graph6(x) + "\n";
  else if (fmt == "dot")
    text = to_dot(x);
  else
    text = to_json(x) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(out);
    if (!o) throw InvalidInput("cannot write " + out);
    o << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Cayley graphs: construction, symmetry analysis and theorem checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--caps-aut", gl.caps_aut, "node budget for automorphism searches");
  app.add_option("--caps-bits", gl.caps_bits, "largest connection-set orbit count to enumerate");
  app.add_option("--caps-aut-enum", gl.caps_aut_enum, "largest |Aut| the regular-subgroup search will list");
  app.add_option("--jobs", gl.jobs, "worker threads for census")->check(CLI::PositiveNumber);
  app.add_option("--format", gl.format, "text|json for reports; graph6|dot|json for export");

  auto* group = app.add_subcommand("group", "group catalog");
  group->require_subcommand(1);
  group->fallthrough();
  auto* list = group->add_subcommand("list", "list builtin groups");
  int list_max = 16;
  list->add_option("--max-order", list_max, "largest order listed");

  auto* build = app.add_subcommand("build", "build GC(G,S,alpha) and report on it");
  SpecArgs build_args;
  std::string build_out, build_export = "graph6";
  build->add_option("--group", build_args.group, "group descriptor")->required();
  build->add_option("--alpha", build_args.alpha, "index of the involutory automorphism")->required();
  build->add_option("--set", build_args.set, "comma separated ids or element names")->required();
  build->add_option("--out", build_out, "also write the graph to this file");
  build->add_option("--export", build_export, "file format for --out: graph6|dot|json")
      ->check(CLI::IsMember({"graph6", "dot", "json"}));

  auto* en = app.add_subcommand("enumerate", "list every valid connection set");
  std::string en_group;
  std::optional<int> en_alpha;
  bool en_nonempty = false, en_connected = false, en_complement = false, en_reps = false;
  en->add_option("--group", en_group, "group descriptor")->required();
  en->add_option("--alpha", en_alpha, "only this involution index");
  en->add_flag("--nonempty", en_nonempty, "skip S = {}");
  en->add_flag("--connected", en_connected, "connected graphs only");
  en->add_flag("--up-to-complement", en_complement, "one of each S, complement pair");
  en->add_flag("--representatives", en_reps, "one involution per conjugacy class");

  auto* an = app.add_subcommand("analyze", "symmetry analysis of a graph");
  GraphSource an_src;
  add_source_options(an, an_src);

  auto* ver = app.add_subcommand("verify", "run a theorem verifier");
  std::string ver_id;
  TheoremParams ver_params;
  ver->add_option("id", ver_id, "theorem id")->required();
  ver->add_option("--max-order", ver_params.max_order, "largest group order swept");
  ver->add_option("--p", ver_params.p, "prime");
  ver->add_option("--k", ver_params.k, "odd parameter of the Z2xZ2xZ(2k+1) example");
  ver->add_option("--m", ver_params.m, "parameter of the Z2m x Z2n example");
  ver->add_option("--n", ver_params.n, "parameter of the Z2m x Z2n example");
  ver->add_option("--group", ver_params.group, "single group instead of the catalog sweep");
  ver->add_option("--certificates", ver_params.certificate_limit, "witnesses kept inline per report");
  ver->add_flag("--list", [](std::int64_t) {
    for (const auto& id : theorem_ids()) std::cout << id << '\n';
    std::exit(kOk);
  }, "print theorem ids and exit");

  auto* cen = app.add_subcommand("census", "exhaustive census to a JSON Lines catalog");
  RunConfig cfg;
  cen->add_option("--max-order", cfg.max_order, "largest group order");
  cen->add_option("--out", cfg.out_path, "output path")->required();
  cen->add_option("--group", cfg.group, "only this group");
  cen->add_option("--alpha", cfg.alpha_index, "only this involution index");
  cen->add_flag("--representatives", cfg.representatives_only, "one involution per conjugacy class");
  cen->add_flag("--nonempty", cfg.nonempty_only, "skip S = {}");
  cen->add_flag("--connected", cfg.connected_only, "connected graphs only");

  auto* ex = app.add_subcommand("export", "write a graph as graph6, dot or json");
  GraphSource ex_src;
  bool ex_canonical = false;
  std::string ex_out;
  add_source_options(ex, ex_src);
  ex->add_flag("--canonical", ex_canonical, "relabel canonically first");
  ex->add_option("--out", ex_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!gl.format.empty() && !ex->parsed() && gl.format != "text" && gl.format != "json")
      throw InvalidInput("--format must be text or json here");
    if (group->parsed()) return cmd_group_list(gl, list_max);
    if (build->parsed()) return cmd_build(gl, build_args, build_out, build_export);
    if (en->parsed())
      return cmd_enumerate(gl, en_group, en_alpha, en_nonempty, en_connected, en_complement, en_reps);
    if (an->parsed()) {
      an_src.have_spec = !an_src.spec.group.empty();
      return cmd_analyze(gl, an_src);
    }
    if (ver->parsed()) return cmd_verify(gl, ver_id, ver_params);
    if (cen->parsed()) return cmd_census(gl, cfg);
    if (ex->parsed()) {
      ex_src.have_spec = !ex_src.spec.group.empty();
      return cmd_export(gl, ex_src, ex_canonical, ex_out);
    }
  } catch (const InvalidSpec& e) {
    std::cerr << "invalid spec: " << e.what() << '\n';
    return kInvalidSpec;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kRefuted;
  }
  return kUsage;
}
