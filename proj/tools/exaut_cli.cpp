// exaut: command-line front end for the exaut library.

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exaut/exaut.hpp"
#include "exaut/frucht.hpp"
#include "exaut/io.hpp"
#include "exaut/reconstruct.hpp"

using namespace exaut;

namespace {

constexpr int schema_version = 1;

const std::map<std::string, std::string> explanations = {
  {"group", "A permutation group from its generators: order and membership through a "
            "stabilizer chain, orbits, point and set stabilizers, the subgroup lattice, and "
            "isomorphism of the abstract groups."},
  {"struct", "The automorphism group of a finite relational structure, whether every "
             "isomorphism between finite substructures extends to an automorphism, and the "
             "closure of a set of points under the chosen closure operator."},
  {"class", "A hereditary class given by a signature and constraints: its members up to a "
            "size bound, whether free amalgams of members stay members, a finite approximation "
            "of its generic structure, and the group of symbol renamings that preserve it."},
  {"exaut build", "The closed sets K up to a size bound, every subgroup L of Aut(K), the "
                  "subgroups G_(K,L) of automorphisms whose restriction to K lies in L, and the "
                  "relations and translation tables between the pairs."},
  {"exaut verify", "For a finite homogeneous M: the setwise stabilizer of K modulo the "
                   "pointwise one is Aut(K); L1 normal in L2 over one K gives G_(K,L1) normal "
                   "in G_(K,L2), and the converse is tested; pointwise stabilizers are exactly "
                   "the members with no proper normal refinement; the setwise stabilizer is the "
                   "largest normalizing over-group with quotient Aut(K); (K,L) -> G_(K,L) is "
                   "one-to-one and commutes with every inner automorphism of Aut(M)."},
  {"frucht", "Every finite group is the automorphism group of a finite graph; the graph is "
             "built from the coloured Cayley graph and shipped with its certificate."},
  {"outpipe", "A group K gives a graph with automorphism group K, then a class of structures "
              "sorted by its vertices, and the symbol renamings preserving that class form a "
              "group isomorphic to K."},
  {"reconstruct", "An isomorphism between automorphism groups that sends point stabilizers to "
                  "point stabilizers is conjugation by a bijection of the points, and that "
                  "bijection carries orbits on tuples to orbits on tuples."},
};

struct Run {
  std::string command;
  json parameters = json::object();
  json result = json::object();
  std::vector<CheckReport> checks;
  double elapsed_ms = 0;

  bool exact_failure() const
  {
    for (const auto& c : checks)
      if (c.exact_failure())
        return true;
    return false;
  }

  json to_json() const
  {
    json cs = json::array();
    for (const auto& c : checks)
      cs.push_back(c.to_json());
    return {{"schema", schema_version}, {"command", command}, {"parameters", parameters},
            {"result", result},         {"checks", cs},       {"timing_ms", elapsed_ms}};
  }
};

std::string scalar_text(const json& v)
{
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

/// The text form is a rendering of the JSON report.
void render_text(const json& report, std::ostream& out)
{
  out << report["command"].get<std::string>() << "\n";
  for (const auto& [key, value] : report["result"].items()) {
    if (value.is_array() && !value.empty() && value.size() > 12) {
      out << "  " << key << ": " << value.size() << " entries\n";
      for (std::size_t i = 0; i < 12; ++i)
        out << "    " << scalar_text(value[i]) << "\n";
      out << "    ...\n";
    } else if (value.is_array() && !value.empty() && value[0].is_string() && value[0].get<std::string>().find('\n') != std::string::npos) {
      out << "  " << key << ":\n";
      for (const auto& v : value)
        out << v.get<std::string>();
    } else if (value.is_string() && value.get<std::string>().find('\n') != std::string::npos) {
      out << "  " << key << ":\n" << value.get<std::string>();
    } else {
      out << "  " << key << ": " << scalar_text(value) << "\n";
    }
  }
  for (const auto& c : report["checks"]) {
    out << "  [" << c["status"].get<std::string>() << "] " << c["check"].get<std::string>();
    if (!c["playground"].get<std::string>().empty())
      out << " on " << c["playground"].get<std::string>();
    out << "  " << c["summary"].dump();
    if (!c["witnesses"].empty())
      out << "  (" << c["witnesses"].size() << " witnesses, first " << c["witnesses"][0].dump()
          << ")";
    out << "\n";
  }
}

std::vector<Point> point_list(const std::string& text)
{
  std::vector<Point> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty())
      continue;
    try {
      std::size_t pos = 0;
      auto v = std::stoul(item, &pos);
      if (pos != item.size())
        throw std::invalid_argument(item);
      out.push_back(static_cast<Point>(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "bad point list '" + text + "'");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// `sym:n`, `cyclic:n`, `aut:<playground>`, or a group file.
PermGroup group_ref(const std::string& ref)
{
  auto colon = ref.find(':');
  if (colon != std::string::npos) {
    const std::string kind = ref.substr(0, colon), arg = ref.substr(colon + 1);
    if (kind == "aut")
      return automorphism_group(io::playground_ref(arg));
    if (kind == "sym" || kind == "cyclic") {
      std::size_t n = point_list(arg).empty() ? 0 : point_list(arg)[0];
      return kind == "sym" ? PermGroup::symmetric(n) : PermGroup::cyclic(n);
    }
  }
  return io::parse_group(io::detail::slurp(ref));
}

json string_list(const std::vector<std::vector<Point>>& sets)
{
  json out = json::array();
  for (const auto& s : sets)
    out.push_back(set_string(s));
  return out;
}

json perm_list(const std::vector<Permutation>& ps)
{
  json out = json::array();
  for (const auto& p : ps)
    if (!p.is_identity())
      out.push_back(p.to_string());
  return out;
}

// ---------------------------------------------------------------------------

struct GroupArgs {
  std::string ref;
  bool subgroups = false;
  std::string stabilizer;
  std::string iso;
};

void run_group(const GroupArgs& a, std::uint64_t bound, Run& run)
{
  run.parameters = {{"group", a.ref}};
  PermGroup g = group_ref(a.ref);
  run.result = {{"degree", g.degree()},
                {"order", g.order()},
                {"base", g.base()},
                {"generators", perm_list(g.generators())},
                {"orbits", string_list(orbits(g))}};
  if (!a.stabilizer.empty()) {
    auto pts = point_list(a.stabilizer);
    run.result["pointwise_stabilizer_order"] = pointwise_stabilizer(g, pts).order();
    run.result["setwise_stabilizer_order"] = setwise_stabilizer(g, pts).order();
  }
  if (a.subgroups) {
    auto list = all_subgroups(g, bound);
    json subs = json::array();
    for (const auto& e : list.subgroups)
      subs.push_back("order " + std::to_string(e.group.order()) + ", index " +
                     std::to_string(e.index_in_parent) + (e.is_normal_in_parent ? ", normal" : ""));
    run.result["subgroup_count"] = list.subgroups.size();
    run.result["subgroups"] = subs;
  }
  if (!a.iso.empty()) {
    PermGroup h = group_ref(a.iso);
    auto map = group_isomorphism(FiniteGroup::from_perm_group(g), FiniteGroup::from_perm_group(h));
    run.parameters["iso"] = a.iso;
    run.result["isomorphic"] = map.has_value();
  }
}

struct StructArgs {
  std::string ref;
  std::string set;
  std::size_t canonical = 0;
};

void run_struct(const StructArgs& a, const std::string& closure_text, Run& run)
{
  run.parameters = {{"structure", a.ref}, {"closure", closure_text}};
  FinStructure m = io::playground_ref(a.ref);
  PermGroup g = automorphism_group(m);
  json sig = json::array();
  for (const auto& s : m.signature().symbols())
    sig.push_back(s.name + "/" + std::to_string(s.arity));
  auto hom = is_homogeneous(m, g);
  run.result = {{"size", m.size()},
                {"signature", sig},
                {"aut_order", g.order()},
                {"aut_generators", perm_list(g.generators())},
                {"orbits", string_list(orbits(g))},
                {"homogeneous", hom.homogeneous}};
  if (!hom.homogeneous)
    run.result["non_extendable"] = set_string(hom.source) + " -> " + set_string(hom.target);
  if (!a.set.empty()) {
    auto closure = io::closure_ref(closure_text);
    run.result["closure_of_" + set_string(point_list(a.set))] =
      set_string(closure(m, g, point_list(a.set)));
  }
  if (a.canonical > 0) {
    auto c = canonical_relational(g, a.canonical);
    run.result["canonical_symbols"] = c.signature().size();
    run.result["canonical_aut_matches"] = same_group(automorphism_group(c), g);
  }
}

struct ClassArgs {
  std::string ref;
  bool members = false;
  bool amalgamation = false;
  bool symmetry = false;
  bool build = false;
  std::size_t stages = 8;
};

void run_class(const ClassArgs& a, std::size_t bound, std::uint64_t seed, Run& run)
{
  run.parameters = {{"class", a.ref}, {"bound", bound}};
  ClassSpec spec = io::class_ref(a.ref);
  spec.validate();
  run.result = {{"name", spec.name},
                {"symbols", spec.signature.size()},
                {"partition", spec.partition.size()},
                {"forbidden", spec.forbidden.size()}};
  if (a.members) {
    json counts = json::array();
    for (const auto& layer : members_up_to(spec, bound))
      counts.push_back(layer.size());
    run.result["members_by_size"] = counts;
  }
  if (a.amalgamation) {
    auto r = check_amalgamation(spec, bound);
    CheckReport rep{"amalgamation", spec.name, {{"bound", bound}}};
    rep.summary = {{"problems", r.problems},
                   {"failures", r.failure_count},
                   {"joint_embedding_failures", r.jep_failures},
                   {"hereditary_failures", r.hp_failures},
                   {"members_by_size", r.members_by_size}};
    for (const auto& f : r.failures)
      rep.witnesses.push_back({{"b1", io::format_structure(f.b1)},
                               {"subset", set_string(f.subset)},
                               {"b2", io::format_structure(f.b2)},
                               {"embedding", set_string(f.e2)},
                               {"violation", f.violation}});
    rep.status = exact(r.ok());
    run.checks.push_back(std::move(rep));
  }
  if (a.symmetry) {
    auto s = signature_symmetry_group(spec, std::max<std::size_t>(bound, 2));
    run.result["symmetry_order"] = s.group.order();
    json ws = json::array();
    for (const auto& w : s.witnesses)
      ws.push_back(w.symbol_permutation.to_string());
    run.result["symmetry_generators"] = ws;
    run.result["members_checked"] = s.members_checked;
  }
  if (a.build) {
    run.parameters["stages"] = a.stages;
    run.parameters["seed"] = seed;
    auto b = generic_build(spec, bound, a.stages, seed);
    CheckReport rep{"generic-build", spec.name, {{"k", bound}, {"stages", a.stages}, {"seed", seed}}};
    rep.summary = {{"size", b.structure.size()},
                   {"stages", b.stages},
                   {"complete", b.complete},
                   {"deficiencies", b.deficiencies.size()}};
    for (std::size_t i = 0; i < b.deficiencies.size() && i < 8; ++i)
      rep.witnesses.push_back({{"base", set_string(b.deficiencies[i].base)},
                               {"extension", io::format_structure(b.deficiencies[i].extension)}});
    rep.status = empirical(b.complete);
    run.result["structure"] = io::format_structure(b.structure);
    run.checks.push_back(std::move(rep));
  }
}

struct ExautArgs {
  std::string playground = "pureset:5";
  std::optional<std::uint64_t> index_bound;
  std::uint64_t sweep = 0;
};

void run_exaut(bool verify, const ExautArgs& a, std::size_t bound, const std::string& closure_text,
               Run& run)
{
  run.parameters = {{"playground", a.playground}, {"bound", bound}, {"closure", closure_text}};
  FinStructure m = io::playground_ref(a.playground);
  ExAutModel model = build_exaut(m, io::closure_ref(closure_text), bound, a.playground);
  if (!verify) {
    run.result = model_json(model);
    return;
  }
  run.result = {{"aut_order", model.group.order()},
                {"closed_sets", model.family.sets.size()},
                {"pairs", model.pairs.size()}};
  run.checks.push_back(star_report(model));
  run.checks.push_back(verify_injectivity(model));
  for (auto& r : verify_prop_normality(model))
    run.checks.push_back(std::move(r));
  run.checks.push_back(verify_char_pointwise(model));
  if (a.index_bound)
    run.parameters["index_bound"] = *a.index_bound;
  run.checks.push_back(verify_char_L(model, a.index_bound));

  // Every inner automorphism when the group is small, else conjugation by
  // each generator.
  const PermGroup& g = model.group;
  std::vector<Permutation> conj = g.order() <= 120 ? g.elements() : g.generators();
  CheckReport eq{"equivariance-inner", model.name, {{"conjugators", conj.size()}}};
  std::size_t failed = 0;
  for (const auto& c : conj) {
    auto r = verify_equivariance(model, GroupHom::conjugation(g, c));
    if (!r.passed()) {
      ++failed;
      eq.witnesses.push_back({{"conjugator", c.to_string()}, {"summary", r.summary}});
    }
  }
  eq.summary = {{"conjugators", conj.size()}, {"failures", failed}};
  eq.status = exact(failed == 0);
  run.checks.push_back(std::move(eq));
  if (a.sweep > 0) {
    run.parameters["sweep"] = a.sweep;
    run.checks.push_back(index_sweep(model, a.sweep));
  }
}

struct FruchtArgs {
  std::string group = "S3";
};

void run_frucht(const FruchtArgs& a, Run& run)
{
  run.parameters = {{"group", a.group}};
  FiniteGroup k = io::finite_group_ref(a.group);
  auto f = frucht_graph(k);
  auto cert = verify_frucht(k, f.graph, f.translations);
  json gens = json::array();
  for (auto g : f.generators)
    gens.push_back(k.name(g));
  json iso = json::array();
  for (std::size_t i = 0; i < cert.isomorphism.size(); ++i)
    iso.push_back(k.name(i) + " -> " + cert.isomorphism[i].to_string());
  run.result = {{"group_order", k.order()},
                {"generators", gens},
                {"vertices", f.graph.size()},
                {"edges", f.graph.tuples(0).size() / 2},
                {"graph", io::format_graph(f.graph)}};
  CheckReport rep{"frucht", a.group, {}};
  rep.summary = {{"aut_order", cert.aut_order}, {"witness_ok", cert.witness_ok}};
  if (!cert.witness_problem.empty())
    rep.summary["witness_problem"] = cert.witness_problem;
  rep.witnesses = {{{"isomorphism", iso}}};
  rep.status = exact(cert.holds);
  run.checks.push_back(std::move(rep));
}

struct OutpipeArgs {
  std::string group = "S3";
};

void run_outpipe(const OutpipeArgs& a, std::size_t bound, Run& run)
{
  run.parameters = {{"group", a.group}, {"amalgamation_bound", bound}};
  FiniteGroup k = io::finite_group_ref(a.group);
  auto r = out_pipeline(k, bound, 2, a.group);
  run.result = r.report.summary;
  run.checks.push_back(r.report);
}

struct ReconstructArgs {
  std::string m, n, iso;
  std::size_t arity = 3;
  bool preprocess = false;
  std::string playground = "cycle:5";
  std::size_t trials = 1;
};

void run_reconstruct(const ReconstructArgs& a, Run& run)
{
  run.parameters = {{"m", a.m}, {"n", a.n}, {"iso", a.iso}, {"arity", a.arity},
                    {"preprocess", a.preprocess}};
  FinStructure m = io::playground_ref(a.m), n = io::playground_ref(a.n);
  auto gi = io::parse_iso(io::detail::slurp(a.iso));
  if (gi.degree != m.size())
    throw Error(ErrorKind::DegreeMismatch, "generator images act on the wrong number of points");
  PermGroup source(gi.sources);
  if (!same_group(source, automorphism_group(m)))
    throw Error(ErrorKind::NotGenerating, "the listed sources do not generate Aut(M)");
  GroupIso f_map(source, gi.images, automorphism_group(n));
  auto r = reconstruct(f_map, m, n, a.arity, a.preprocess, a.m);
  run.result = r.report.summary;
  run.checks.push_back(r.report);
}

void run_demo(const ReconstructArgs& a, std::uint64_t seed, Run& run)
{
  run.parameters = {{"playground", a.playground}, {"seed", seed}, {"trials", a.trials},
                    {"arity", a.arity}};
  FinStructure m = io::playground_ref(a.playground);
  std::size_t recovered = 0;
  CheckReport rep{"reconstruct-demo", a.playground, run.parameters};
  for (std::uint64_t t = 0; t < a.trials; ++t) {
    auto s = scramble_harness(m, seed + t);
    auto r = reconstruct(s.f_map, m, s.n, a.arity, false, a.playground);
    bool ok = r.f && *r.f == s.sigma && r.report.passed();
    recovered += ok;
    if (t == 0)
      run.result = {{"hidden", s.sigma.to_string()},
                    {"recovered", r.f ? r.f->to_string() : "none"},
                    {"verified", r.verified},
                    {"bidef", r.bidef ? std::string(to_string(r.bidef->status)) : "not run"}};
    if (!ok)
      rep.witnesses.push_back({{"seed", seed + t}, {"hidden", s.sigma.to_string()},
                               {"summary", r.report.summary}});
  }
  rep.summary = {{"trials", a.trials}, {"recovered", recovered}};
  rep.status = exact(recovered == a.trials);
  run.checks.push_back(std::move(rep));
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"exaut: automorphism groups of finite structures and their expanded models"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false, explain = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> bound_opt;
  std::string closure = "dcl";
  app.add_flag("--json", as_json, "Print the JSON report instead of text");
  app.add_flag("--explain", explain, "Describe what the subcommand checks");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--bound", bound_opt, "Size bound for closed sets, members and amalgamation (default 2; 1 for outpipe)");
  app.add_option("--closure", closure, "dcl | threshold:t | class:<spec>");

  GroupArgs ga;
  auto* group = app.add_subcommand("group", "Permutation group information");
  group->add_option("group", ga.ref, "Group file, sym:n, cyclic:n or aut:<playground>")->required();
  group->add_flag("--subgroups", ga.subgroups, "List all subgroups");
  group->add_option("--stabilizer", ga.stabilizer, "Comma-separated points");
  group->add_option("--iso", ga.iso, "Another group to test for isomorphism");

  StructArgs sa;
  auto* strct = app.add_subcommand("struct", "Structure information");
  strct->add_option("structure", sa.ref, "Structure file or playground such as cycle:5")->required();
  strct->add_option("--set", sa.set, "Comma-separated points to close");
  strct->add_option("--canonical", sa.canonical, "Build the canonical relational structure up to this arity");

  ClassArgs ca;
  auto* cls = app.add_subcommand("class", "Amalgamation classes");
  cls->add_option("class", ca.ref, "pure_set, graphs, kn_free:n, colored_graph:n, gamma:<playground> or a spec file")->required();
  cls->add_flag("--members", ca.members, "Count members up to the bound");
  cls->add_flag("--amalgamation", ca.amalgamation, "Check free amalgamation up to the bound");
  cls->add_flag("--symmetry", ca.symmetry, "Signature symmetry group");
  cls->add_flag("--build", ca.build, "Finite approximation of the generic structure");
  cls->add_option("--stages", ca.stages, "Stage bound for --build");

  ExautArgs ea;
  auto* ex = app.add_subcommand("exaut", "Expanded automorphism model");
  ex->require_subcommand(1);
  ex->fallthrough();
  auto* ex_build = ex->add_subcommand("build", "Build the model and print it");
  auto* ex_verify = ex->add_subcommand("verify", "Run every verifier");
  for (auto* sub : {ex_build, ex_verify})
    sub->add_option("--playground", ea.playground, "Playground or structure file");
  ex_verify->add_option("--index-bound", ea.index_bound, "Only over-groups of at most this index");
  ex_verify->add_option("--sweep", ea.sweep, "List low-index subgroups outside the model");

  FruchtArgs fa;
  auto* fr = app.add_subcommand("frucht", "Graph with a given automorphism group");
  fr->add_option("--group", fa.group, "Z1..Z8, V4, S3, D4, Q8 or a Cayley table file");

  OutpipeArgs oa;
  auto* op = app.add_subcommand("outpipe", "Group to graph to class to signature symmetries");
  op->add_option("--group", oa.group, "Z1..Z8, V4, S3, D4, Q8 or a Cayley table file");

  ReconstructArgs ra;
  auto* rc = app.add_subcommand("reconstruct", "Recover a point bijection from a group isomorphism");
  rc->add_option("--m", ra.m, "Source structure");
  rc->add_option("--n", ra.n, "Target structure");
  rc->add_option("--iso", ra.iso, "Generator image file");
  rc->add_option("--arity", ra.arity, "Arity bound for the orbit check");
  rc->add_flag("--preprocess", ra.preprocess, "Pass to the canonical relational structures first");
  auto* demo = rc->add_subcommand("demo", "Scramble a playground and recover the relabelling");
  rc->fallthrough();
  demo->add_option("--playground", ra.playground, "Playground to scramble");
  demo->add_option("--trials", ra.trials, "Number of seeded trials");
  demo->add_option("--arity", ra.arity, "Arity bound for the orbit check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  Run run;
  std::string key;
  if (group->parsed())
    key = "group";
  else if (strct->parsed())
    key = "struct";
  else if (cls->parsed())
    key = "class";
  else if (ex_build->parsed())
    key = "exaut build";
  else if (ex_verify->parsed())
    key = "exaut verify";
  else if (fr->parsed())
    key = "frucht";
  else if (op->parsed())
    key = "outpipe";
  else
    key = "reconstruct";
  run.command = demo->parsed() ? "reconstruct demo" : key;

  if (explain) {
    std::cout << run.command << ": " << explanations.at(key) << "\n";
    return 0;
  }

  const std::size_t bound = bound_opt.value_or(2);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (key == "group")
      run_group(ga, std::max<std::uint64_t>(bound, 1000), run);
    else if (key == "struct")
      run_struct(sa, closure, run);
    else if (key == "class")
      run_class(ca, bound, seed, run);
    else if (key == "exaut build" || key == "exaut verify")
      run_exaut(key == "exaut verify", ea, bound, closure, run);
    else if (key == "frucht")
      run_frucht(fa, run);
    else if (key == "outpipe")
      run_outpipe(oa, bound_opt.value_or(1), run);
    else if (demo->parsed())
      run_demo(ra, seed, run);
    else if (ra.m.empty() || ra.n.empty() || ra.iso.empty())
      throw Error(ErrorKind::Usage, "reconstruct needs --m, --n and --iso, or the demo subcommand");
    else
      run_reconstruct(ra, run);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Usage) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    CheckReport err{run.command, "", run.parameters};
    err.status = Status::Error;
    err.summary = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    run.checks.push_back(std::move(err));
  }
  run.elapsed_ms =
    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (as_json)
    std::cout << run.to_json().dump(2) << "\n";
  else
    render_text(run.to_json(), std::cout);
  return run.exact_failure() ? 1 : 0;
}
