#include "deepconn/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "deepconn/error.hpp"
#include "deepconn/exact.hpp"
#include "deepconn/fdc.hpp"
#include "deepconn/gadgets.hpp"
#include "deepconn/instance.hpp"
#include "deepconn/sparsifier.hpp"

namespace deepconn::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string instance_path;
  std::vector<std::string> pair;
  bool all_pairs = false;
  bool witness = false;
  bool json = false;
  bool timing = false;
  std::optional<std::size_t> budget;
  std::string output;
  std::string labels_path;
  // gen
  std::string sets;
  std::size_t elements = 0;
  std::size_t copies = 1;
  std::string skeleton_path;
  std::string graph;
  std::string vertices;
  std::size_t nodes = 8;
  std::size_t peers = 4;
  double probability = 0.5;
  std::string policy = "shortest_path";
  std::uint64_t seed = 1;
};

ordered_json names_of(const Instance& inst, const OverlayPath& p) {
  ordered_json arr = ordered_json::array();
  for (NodeIndex v : p.peers) arr.push_back(inst.name(v));
  return arr;
}

ordered_json pair_json(const Instance& inst, NodePair p) {
  return ordered_json::array({inst.name(p.lo), inst.name(p.hi)});
}

ordered_json edge_json(const Instance& inst, EdgeIndex e) {
  return pair_json(inst, inst.graph_edges()[e]);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kArgument, "cannot write '" + path + "'");
  file << text;
}

std::pair<NodeIndex, NodeIndex> resolve_pair(const Instance& inst, const Options& opt) {
  const NodeIndex s = inst.node(opt.pair.at(0));
  const NodeIndex t = inst.node(opt.pair.at(1));
  require_peer_pair(inst, s, t);
  return {s, t};
}

ExactBudget budget_of(const Options& opt) {
  ExactBudget b;
  if (opt.budget) {
    b.cut_nodes = *opt.budget;
    b.packing_nodes = *opt.budget;
  }
  return b;
}

class Reporter {
 public:
  Reporter(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  ordered_json& json() { return report_; }
  std::ostringstream& text() { return text_; }

  void finish(std::chrono::steady_clock::time_point start) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (opt_.json) {
      if (opt_.timing) report_["elapsed_ms"] = ms;
      out_ << report_.dump(2) << "\n";
    } else {
      out_ << text_.str();
      if (opt_.timing) out_ << "elapsed: " << ms << " ms\n";
    }
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  ordered_json report_;
  std::ostringstream text_;
};

int cmd_validate(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = load_instance(opt.instance_path);
  Reporter rep(opt, out);
  auto& j = rep.json();
  j["command"] = "validate";
  j["valid"] = true;
  j["nodes"] = inst.node_count();
  j["edges"] = inst.graph_edge_count();
  j["peers"] = inst.peers().size();
  j["overlay_edges"] = inst.overlay_edges().size();
  j["routes"] = inst.routes().size();
  j["routing"] = inst.routing_total() ? "total" : "partial";
  rep.text() << "valid: " << inst.node_count() << " nodes, " << inst.graph_edge_count()
             << " edges, " << inst.peers().size() << " peers, " << inst.overlay_edges().size()
             << " overlay edges, " << inst.routes().size() << " routes ("
             << (inst.routing_total() ? "total" : "partial") << ")\n";
  rep.finish(start);
  return kExitOk;
}

void require_target(const Options& opt) {
  if (opt.all_pairs == !opt.pair.empty()) {
    throw CLI::ValidationError("exactly one of --pair A B or --all-pairs is required");
  }
}

int cmd_fdc(const Options& opt, std::ostream& out) {
  require_target(opt);
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = load_instance(opt.instance_path);
  Reporter rep(opt, out);
  FlowResult result;
  NodePair pair;
  if (opt.all_pairs) {
    auto all = fdc_all_pairs(inst);
    result = std::move(all.witness);
    pair = all.argmin;
  } else {
    auto [s, t] = resolve_pair(inst, opt);
    result = fdc_pair(inst, s, t);
    pair = NodePair{s, t};
  }
  auto& j = rep.json();
  j["command"] = "fdc";
  j["all_pairs"] = opt.all_pairs;
  j["pair"] = pair_json(inst, pair);
  j["value"] = format_rational(result.value);
  rep.text() << "FDC" << (opt.all_pairs ? " (all pairs, attained at " : "(")
             << inst.name(pair.lo) << "," << inst.name(pair.hi) << ") = "
             << format_rational(result.value) << "\n";
  if (opt.witness) {
    ordered_json primal = ordered_json::array();
    for (const auto& [path, x] : result.primal) {
      primal.push_back({{"path", names_of(inst, path)}, {"x", format_rational(x)}});
      rep.text() << "  flow " << format_rational(x) << " on " << format_path(inst, path) << "\n";
    }
    ordered_json dual = ordered_json::array();
    for (const auto& [e, y] : result.dual) {
      dual.push_back({{"edge", edge_json(inst, e)}, {"y", format_rational(y)}});
      rep.text() << "  price " << format_rational(y) << " on " << inst.edge_label(e) << "\n";
    }
    ordered_json generated = ordered_json::array();
    for (const auto& p : result.generated_paths) generated.push_back(names_of(inst, p));
    j["witness"] = {{"primal", primal}, {"dual", dual}, {"generated_paths", generated}};
  }
  rep.finish(start);
  return kExitOk;
}

int cmd_exact(const Options& opt, Parameter which, std::ostream& out) {
  require_target(opt);
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = load_instance(opt.instance_path);
  const ExactBudget budget = budget_of(opt);
  Reporter rep(opt, out);

  AllPairsResult r;
  if (opt.all_pairs) {
    r = all_pairs(inst, which, budget);
  } else {
    auto [s, t] = resolve_pair(inst, opt);
    r.argmin = NodePair{s, t};
    if (which == Parameter::kErdc) {
      auto cut = erdc_pair(inst, s, t, budget);
      r.value = cut.value;
      r.cut = cut.witness;
    } else {
      auto pack = which == Parameter::kPddc ? pddc_pair(inst, s, t, budget)
                                            : spddc_pair(inst, s, t, budget);
      r.value = pack.value;
      r.packing = pack.witness;
    }
  }
  const char* name = which == Parameter::kErdc ? "erdc" : which == Parameter::kPddc ? "pddc" : "spddc";
  const char* upper = which == Parameter::kErdc ? "ERDC" : which == Parameter::kPddc ? "PDDC" : "SPDDC";
  auto& j = rep.json();
  j["command"] = name;
  j["all_pairs"] = opt.all_pairs;
  j["pair"] = pair_json(inst, r.argmin);
  j["value"] = r.value;
  rep.text() << upper << (opt.all_pairs ? " (all pairs, attained at " : "(")
             << inst.name(r.argmin.lo) << "," << inst.name(r.argmin.hi) << ") = " << r.value << "\n";
  if (opt.witness) {
    if (which == Parameter::kErdc) {
      ordered_json edges = ordered_json::array();
      for (EdgeIndex e : r.cut.edges) {
        edges.push_back(edge_json(inst, e));
        rep.text() << "  cut " << inst.edge_label(e) << "\n";
      }
      j["witness"] = {{"edges", edges}};
    } else {
      ordered_json paths = ordered_json::array();
      for (const auto& p : r.packing.paths) {
        paths.push_back(names_of(inst, p));
        rep.text() << "  path " << format_path(inst, p) << "\n";
      }
      j["witness"] = {{"paths", paths}};
    }
  }
  rep.finish(start);
  return kExitOk;
}

int emit_instance(const Options& opt, const Instance& result, ordered_json summary,
                  std::ostream& out) {
  const std::string doc = serialize_instance(result);
  if (opt.output.empty()) {
    out << doc;
    return kExitOk;
  }
  write_text(opt.output, doc, out);
  if (opt.json) {
    out << summary.dump(2) << "\n";
  } else {
    out << "wrote " << opt.output << "\n";
  }
  return kExitOk;
}

int cmd_sparsify(const Options& opt, std::ostream& out) {
  const Instance inst = load_instance(opt.instance_path);
  const auto result = sparsify(inst);
  ordered_json summary;
  summary["command"] = "sparsify";
  summary["overlay_edges"] = result.overlay.size();
  summary["tree_edges"] = inst.peers().size() - 1;
  summary["kappa_history"] = result.kappa_history;
  return emit_instance(opt, inst.with_overlay(result.overlay), summary, out);
}

int cmd_special_case(const Options& opt, std::ostream& out) {
  const Instance inst = load_instance(opt.instance_path);
  const auto overlay = special_case_construct(inst);
  ordered_json summary;
  summary["command"] = "special-case";
  summary["overlay_edges"] = overlay.size();
  summary["bound"] = 2 * inst.node_count() - 2;
  return emit_instance(opt, identity_instance(inst, overlay), summary, out);
}

int cmd_check(const Options& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = load_instance(opt.instance_path);
  const ExactBudget budget = budget_of(opt);
  std::vector<NodePair> pairs;
  if (!opt.pair.empty()) {
    auto [s, t] = resolve_pair(inst, opt);
    pairs.push_back({s, t});
  } else {
    const auto peers = inst.peers();
    for (std::size_t a = 0; a < peers.size(); ++a) {
      for (std::size_t b = a + 1; b < peers.size(); ++b) pairs.push_back({peers[a], peers[b]});
    }
  }
  Reporter rep(opt, out);
  bool all_ok = true;
  ordered_json rows = ordered_json::array();
  for (const NodePair p : pairs) {
    const auto erdc = erdc_pair(inst, p.lo, p.hi, budget);
    const auto pddc = pddc_pair(inst, p.lo, p.hi, budget);
    const auto spddc = spddc_pair(inst, p.lo, p.hi, budget);
    const auto fdc = fdc_pair(inst, p.lo, p.hi);
    std::vector<std::string> failures;
    if (!(spddc.value <= pddc.value && pddc.value <= erdc.value)) failures.push_back("SPDDC <= PDDC <= ERDC");
    if (!(Rational(spddc.value) <= fdc.value && fdc.value <= Rational(erdc.value))) {
      failures.push_back("SPDDC <= FDC <= ERDC");
    }
    if (auto e = check_cut_certificate(inst, p.lo, p.hi, erdc.witness); !e.empty()) failures.push_back(e);
    if (auto e = check_path_packing(inst, p.lo, p.hi, pddc.witness, false); !e.empty()) failures.push_back(e);
    if (auto e = check_path_packing(inst, p.lo, p.hi, spddc.witness, true); !e.empty()) failures.push_back(e);
    if (auto e = audit_flow_result(inst, p.lo, p.hi, fdc); !e.empty()) failures.push_back(e);
    all_ok = all_ok && failures.empty();

    ordered_json row;
    row["pair"] = pair_json(inst, p);
    row["erdc"] = erdc.value;
    row["pddc"] = pddc.value;
    row["spddc"] = spddc.value;
    row["fdc"] = format_rational(fdc.value);
    row["ok"] = failures.empty();
    row["failures"] = failures;
    rows.push_back(std::move(row));
    rep.text() << inst.pair_label(p) << ": ERDC=" << erdc.value << " PDDC=" << pddc.value
               << " SPDDC=" << spddc.value << " FDC=" << format_rational(fdc.value)
               << (failures.empty() ? " ok" : " FAILED") << "\n";
    for (const auto& f : failures) rep.text() << "  " << f << "\n";
  }
  rep.json()["command"] = "check";
  rep.json()["pairs"] = std::move(rows);
  rep.json()["ok"] = all_ok;
  rep.text() << (all_ok ? "all invariants hold\n" : "invariant violations found\n");
  rep.finish(start);
  return all_ok ? kExitOk : kExitDomain;
}

// "1,2;;3" -> {{1,2},{},{3}}
std::vector<std::vector<std::size_t>> parse_sets(const std::string& text) {
  std::vector<std::vector<std::size_t>> sets(1);
  std::string number;
  auto flush = [&] {
    if (number.empty()) return;
    sets.back().push_back(std::stoul(number));
    number.clear();
  };
  for (char c : text) {
    if (c == ';') {
      flush();
      sets.emplace_back();
    } else if (c == ',') {
      flush();
    } else if (c >= '0' && c <= '9') {
      number += c;
    } else if (c != ' ') {
      throw Error(ErrorCode::kArgument, "bad character in --sets");
    }
  }
  flush();
  return sets;
}

SetSystem sets_of(const Options& opt) {
  if (opt.sets.empty()) throw CLI::ValidationError("--sets is required");
  auto sets = parse_sets(opt.sets);
  std::size_t m = opt.elements;
  for (const auto& s : sets) {
    for (std::size_t i : s) m = std::max(m, i);
  }
  if (m == 0) m = 1;
  return SetSystem::from_sets(m, sets);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void write_labels(const Options& opt, const Labels& labels, std::ostream& out) {
  if (opt.labels_path.empty()) return;
  ordered_json j(labels);
  write_text(opt.labels_path, j.dump(2) + "\n", out);
}

int cmd_gen(const std::string& kind, const Options& opt, std::ostream& out) {
  if (kind == "set-system") {
    const SetSystem sets = sets_of(opt);
    NamedGraph skeleton;
    std::vector<std::pair<std::string, std::string>> f;
    if (!opt.skeleton_path.empty()) {
      std::ifstream in(opt.skeleton_path);
      if (!in) throw Error(ErrorCode::kArgument, "cannot open '" + opt.skeleton_path + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
        skeleton.vertices = j.at("vertices").get<std::vector<std::string>>();
        skeleton.edges = j.at("edges").get<std::vector<std::pair<std::string, std::string>>>();
        f = j.at("f").get<std::vector<std::pair<std::string, std::string>>>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kSyntax, std::string("skeleton: ") + e.what());
      }
    } else {
      for (std::size_t i = 0; i <= sets.sets(); ++i) skeleton.vertices.push_back("p" + std::to_string(i));
      for (std::size_t i = 0; i < sets.sets(); ++i) {
        skeleton.edges.emplace_back(skeleton.vertices[i], skeleton.vertices[i + 1]);
        f.push_back(skeleton.edges.back());
      }
    }
    auto gadget = encode_set_system(skeleton, f, sets);
    write_labels(opt, gadget.labels, out);
    write_text(opt.output, serialize_instance(gadget.instance), out);
  } else if (kind == "spddc-reduction") {
    auto red = build_spddc_reduction(sets_of(opt), opt.copies);
    red.gadget.labels["source"] = {red.source};
    red.gadget.labels["sink"] = {red.sink};
    write_labels(opt, red.gadget.labels, out);
    write_text(opt.output, serialize_instance(red.gadget.instance), out);
  } else if (kind == "hamiltonian") {
    NamedGraph g0;
    g0.vertices = split(opt.vertices, ',');
    for (const auto& e : split(opt.graph, ',')) {
      auto ends = split(e, '-');
      if (ends.size() != 2) throw Error(ErrorCode::kArgument, "bad edge '" + e + "' in --graph");
      g0.edges.emplace_back(ends[0], ends[1]);
      for (const auto& v : ends) {
        if (std::find(g0.vertices.begin(), g0.vertices.end(), v) == g0.vertices.end()) {
          g0.vertices.push_back(v);
        }
      }
    }
    write_text(opt.output, serialize_instance(build_hamiltonian_reduction(g0)), out);
  } else if (kind == "random") {
    RandomInstanceOptions r;
    r.nodes = opt.nodes;
    r.peers = opt.peers;
    r.edge_probability = opt.probability;
    r.seed = opt.seed;
    if (opt.policy == "shortest_path") {
      r.policy = RoutePolicy::kShortestPath;
    } else if (opt.policy == "random_simple") {
      r.policy = RoutePolicy::kRandomSimple;
    } else {
      throw CLI::ValidationError("--policy must be shortest_path or random_simple");
    }
    write_text(opt.output, serialize_instance(random_instance(r)), out);
  }
  return kExitOk;
}

void report_error(std::ostream& err, bool json, const std::string& code, const std::string& message) {
  if (json) {
    ordered_json j;
    j["error"] = {{"code", code}, {"message", message}};
    err << j.dump() << "\n";
  } else {
    err << "error[" << code << "]: " << message << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Deep connectivity of overlay networks", "deepconn"};
  app.require_subcommand(1);

  auto instance_opt = [&](CLI::App* sub) {
    sub->add_option("-i,--instance", opt.instance_path, "Instance document (JSON)")->required();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "Machine-readable report");
    sub->add_flag("--timing", opt.timing, "Include elapsed time in the report");
  };
  auto pair_opts = [&](CLI::App* sub) {
    sub->add_option("--pair", opt.pair, "Peer pair A B")->expected(2);
    sub->add_flag("--all-pairs", opt.all_pairs, "Minimum over all peer pairs");
    sub->add_flag("--witness", opt.witness, "Print certificates");
  };
  auto budget_opt = [&](CLI::App* sub) {
    sub->add_option("--budget", opt.budget, "Node budget for exact searches");
  };

  auto* validate = app.add_subcommand("validate", "Parse and validate an instance");
  instance_opt(validate);
  common(validate);

  auto* fdc = app.add_subcommand("fdc", "Flow deep connectivity (exact LP)");
  instance_opt(fdc);
  common(fdc);
  pair_opts(fdc);

  std::vector<std::pair<CLI::App*, Parameter>> exact_cmds;
  for (auto [name, which, help] : {std::tuple{"erdc", Parameter::kErdc, "Edge-removal deep connectivity"},
                                   std::tuple{"pddc", Parameter::kPddc, "Path-disjoint deep connectivity"},
                                   std::tuple{"spddc", Parameter::kSpddc, "Simple path-disjoint deep connectivity"}}) {
    auto* sub = app.add_subcommand(name, help);
    instance_opt(sub);
    common(sub);
    pair_opts(sub);
    budget_opt(sub);
    exact_cmds.emplace_back(sub, which);
  }

  auto* sparsify_cmd = app.add_subcommand("sparsify", "Greedy sparse 2-ERDC overlay");
  instance_opt(sparsify_cmd);
  common(sparsify_cmd);
  sparsify_cmd->add_option("-o,--output", opt.output, "Write the instance here");

  auto* special = app.add_subcommand("special-case", "2n-2 construction for identity routing");
  instance_opt(special);
  common(special);
  special->add_option("-o,--output", opt.output, "Write the instance here");

  auto* check = app.add_subcommand("check", "Cross-check all parameters and certificates");
  instance_opt(check);
  common(check);
  check->add_option("--pair", opt.pair, "Restrict to one peer pair")->expected(2);
  budget_opt(check);

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  auto gen_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", opt.output, "Write the instance here");
  };
  auto* gen_sets = gen->add_subcommand("set-system", "Set-system encoding gadget");
  gen_sets->add_option("--sets", opt.sets, "Sets, e.g. \"1;1,2\"")->required();
  gen_sets->add_option("-m,--elements", opt.elements, "Element count");
  gen_sets->add_option("--skeleton", opt.skeleton_path, "JSON {vertices, edges, f}");
  gen_sets->add_option("--labels", opt.labels_path, "Write role labels here");
  gen_common(gen_sets);
  auto* gen_spddc = gen->add_subcommand("spddc-reduction", "Layered set-packing reduction");
  gen_spddc->add_option("--sets", opt.sets, "Sets, e.g. \"1;2\"")->required();
  gen_spddc->add_option("-m,--elements", opt.elements, "Element count");
  gen_spddc->add_option("-k", opt.copies, "Packing size")->check(CLI::PositiveNumber);
  gen_spddc->add_option("--labels", opt.labels_path, "Write role labels here");
  gen_common(gen_spddc);
  auto* gen_ham = gen->add_subcommand("hamiltonian", "Hamiltonian-path reduction");
  gen_ham->add_option("--graph", opt.graph, "Edges, e.g. \"a-b,b-c\"");
  gen_ham->add_option("--vertices", opt.vertices, "Extra vertices, e.g. \"a,b,c,d\"");
  gen_common(gen_ham);
  auto* gen_random = gen->add_subcommand("random", "Random instance with total routing");
  gen_random->add_option("--nodes", opt.nodes, "Underlying node count");
  gen_random->add_option("--peers", opt.peers, "Peer count");
  gen_random->add_option("--p", opt.probability, "Edge probability");
  gen_random->add_option("--policy", opt.policy, "shortest_path | random_simple");
  gen_random->add_option("--seed", opt.seed, "RNG seed");
  gen_common(gen_random);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, false, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt, out);
    if (fdc->parsed()) return cmd_fdc(opt, out);
    for (auto [sub, which] : exact_cmds) {
      if (sub->parsed()) return cmd_exact(opt, which, out);
    }
    if (sparsify_cmd->parsed()) return cmd_sparsify(opt, out);
    if (special->parsed()) return cmd_special_case(opt, out);
    if (check->parsed()) return cmd_check(opt, out);
    for (auto* sub : {gen_sets, gen_spddc, gen_ham, gen_random}) {
      if (sub->parsed()) return cmd_gen(sub->get_name(), opt, out);
    }
  } catch (const CLI::ValidationError& e) {
    report_error(err, opt.json, "usage", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, opt.json, error_code_name(e.code()), e.what());
    switch (e.code()) {
      case ErrorCode::kSyntax:
      case ErrorCode::kValidation:
      case ErrorCode::kArgument:
        return kExitUsage;
      default:
        return kExitDomain;
    }
  }
  return kExitUsage;
}

}  // namespace deepconn::cli
