// Command-line front end. Every subcommand reads JSON, runs the library,
// and prints a JSON report with deterministic content (the duration field
// aside) for a fixed seed.
//
// Exit codes: 0 pass / witness found, 1 checked failure or negative
// result, 2 malformed input or usage error. --expect some|none|pass
// remaps the exit code for known-negative checks.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "treelab/entangle.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/forcing.hpp"
#include "treelab/json_io.hpp"
#include "treelab/lex.hpp"
#include "treelab/pstar.hpp"
#include "treelab/util.hpp"

using namespace treelab;
using nlohmann::json;

namespace {

enum class Verdict { pass, fail, some, none, error };

struct Report {
  std::string command;
  json inputs = json::object();
  json result;
  std::vector<std::string> violations;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::error;
};

int finish(Report& rep, const std::string& expect, std::chrono::steady_clock::time_point t0,
           const std::string& out_path, const json& payload) {
  if (!out_path.empty() && !payload.is_null()) {
    std::ofstream out(out_path);
    out << payload.dump(1) << "\n";
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  const char* verdict_name = rep.verdict == Verdict::pass   ? "pass"
                             : rep.verdict == Verdict::fail ? "fail"
                             : rep.verdict == Verdict::some ? "some"
                             : rep.verdict == Verdict::none ? "none"
                                                            : "error";
  json out{{"command", rep.command}, {"duration_ms", ms},       {"inputs", rep.inputs},
           {"result", rep.result},   {"seed", rep.seed},        {"verdict", verdict_name},
           {"violations", rep.violations}};
  std::cout << out.dump(1) << "\n";
  if (rep.verdict == Verdict::error) return 2;
  if (!expect.empty()) {
    bool match = (expect == "pass" && rep.verdict == Verdict::pass) ||
                 (expect == "some" && rep.verdict == Verdict::some) ||
                 (expect == "none" && rep.verdict == Verdict::none);
    return match ? 0 : 1;
  }
  return (rep.verdict == Verdict::pass || rep.verdict == Verdict::some) ? 0 : 1;
}

Outcome<json> slurp(const std::string& path, Report& rep) {
  std::ifstream in(path);
  if (!in) return Outcome<json>::failure("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  rep.inputs["in"] = "fnv1a:" + fnv1a_hex(ss.str());
  json j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) return Outcome<json>::failure("invalid JSON in " + path);
  return Outcome<json>::success(std::move(j));
}

std::vector<int> parse_csv_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

Outcome<std::vector<Node>> nodes_from_ids(const json& arr, const Condition& p) {
  std::vector<Node> out;
  if (!arr.is_array()) return Outcome<std::vector<Node>>::failure("expected an index array");
  for (const auto& e : arr) {
    int i = e.get<int>();
    if (i < 0 || i >= static_cast<int>(p.nodes.size()))
      return Outcome<std::vector<Node>>::failure("node index out of range");
    out.push_back(p.nodes[static_cast<std::size_t>(i)]);
  }
  return Outcome<std::vector<Node>>::success(std::move(out));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite workbench for tree conditions, lexicographic orders, and tuple patterns"};
  app.require_subcommand(1);

  std::string in_path, out_path, expect, type_bits, widths_csv, base_csv;
  std::uint64_t seed = 0;
  int height = 0, completions = 32, arity = 0, split_at = -1, ladder = 0, size = 0;
  int restrict_at = -1, above_at = -1, project_at = -1;
  std::string extends_path;
  std::vector<int> pair_query;
  bool with_delta_bound = false, classify = false, complement_too = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", in_path);
    sub->add_option("--out", out_path);
    sub->add_option("--seed", seed);
    sub->add_option("--expect", expect)->check(CLI::IsMember({"some", "none", "pass"}));
  };

  auto* c_validate = app.add_subcommand("validate-condition", "check the tree-order clauses");
  add_common(c_validate);
  c_validate->add_option("--extends", extends_path);
  c_validate->add_option("--restrict", restrict_at);
  c_validate->add_option("--above", above_at);

  auto* c_amalg = app.add_subcommand("amalgamate", "merge two conditions across a cut");
  add_common(c_amalg);

  auto* c_insert = app.add_subcommand("insert", "thread new nodes through immediate pairs");
  add_common(c_insert);

  auto* c_gen = app.add_subcommand("gen-tree", "build or analyze a leveled tree");
  add_common(c_gen);
  c_gen->add_option("--height", height);
  c_gen->add_option("--widths", widths_csv);

  auto* c_lex = app.add_subcommand("lex-compare", "compare two nodes lexicographically");
  add_common(c_lex);

  auto* c_lemma = app.add_subcommand("check-lemma", "order-interleaving checks: 2.4 or 2.11");
  std::string lemma_which;
  c_lemma->add_option("which", lemma_which)->required()->check(CLI::IsMember({"2.4", "2.11"}));
  add_common(c_lemma);
  c_lemma->add_option("--height", height);
  c_lemma->add_option("--widths", widths_csv);
  c_lemma->add_option("--completions", completions);

  auto* c_realize = app.add_subcommand("realize", "search for a pair satisfying a pattern");
  std::string realize_which;
  c_realize->add_option("which", realize_which)->required()->check(CLI::IsMember({"linear", "tree"}));
  add_common(c_realize);
  c_realize->add_option("--type", type_bits);
  c_realize->add_option("--pair", pair_query)->expected(2);
  c_realize->add_flag("--delta-bound", with_delta_bound);
  c_realize->add_option("--project", project_at);

  auto* c_sep = app.add_subcommand("separated", "find or verify separators; classify intervals");
  add_common(c_sep);
  c_sep->add_flag("--classify", classify);

  auto* c_counter = app.add_subcommand("counterexample", "sec4, prop33, or prop39 constructions");
  std::string counter_which;
  c_counter->add_option("which", counter_which)
      ->required()
      ->check(CLI::IsMember({"sec4", "prop33", "prop39"}));
  add_common(c_counter);
  c_counter->add_option("--k", ladder);
  c_counter->add_option("--height", height);
  c_counter->add_option("--size", size);

  auto* c_derived = app.add_subcommand("derived", "tuple trees and the split embedding");
  add_common(c_derived);
  c_derived->add_option("--n", arity);
  c_derived->add_option("--base", base_csv);
  c_derived->add_option("--split", split_at);

  auto* c_dense = app.add_subcommand("dense-below", "least node whose cone a set dominates");
  add_common(c_dense);

  auto* c_pstar = app.add_subcommand("pstar", "colored conditions: validate, amalgamate, extract");
  std::string pstar_which;
  c_pstar->add_option("which", pstar_which)
      ->required()
      ->check(CLI::IsMember({"validate", "amalgamate", "extract"}));
  add_common(c_pstar);
  c_pstar->add_option("--extends", extends_path);

  auto* c_sigma = app.add_subcommand("sigma-reduce", "permute tuple components and the pattern");
  add_common(c_sigma);
  c_sigma->add_option("--type", type_bits);
  c_sigma->add_flag("--complement", complement_too);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"command", "parse"}, {"verdict", "error"},
                      {"violations", json::array({e.what()})}}
                     .dump(1)
              << "\n";
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.seed = seed;
  json payload;

  auto fail_with = [&](const std::vector<std::string>& errs) {
    rep.verdict = Verdict::fail;
    for (const auto& e : errs) rep.violations.push_back(e);
  };
  auto parse_error = [&](const std::vector<std::string>& errs) {
    rep.verdict = Verdict::error;
    for (const auto& e : errs) rep.violations.push_back(e);
  };

  // ---- validate-condition ----
  if (c_validate->parsed()) {
    rep.command = "validate-condition";
    auto j = slurp(in_path, rep);
    if (!j) {
      parse_error(j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto p = condition_from_json(*j);
    if (!p) {
      parse_error(p.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto vr = validate_condition(*p);
    if (!vr.ok()) {
      rep.result = json{{"valid", false}};
      fail_with(vr.violations);
      return finish(rep, expect, t0, out_path, payload);
    }
    if (!extends_path.empty()) {
      Report dummy;
      auto j2 = slurp(extends_path, dummy);
      rep.inputs["extends"] = dummy.inputs["in"];
      if (!j2) {
        parse_error(j2.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto p2 = condition_from_json(*j2);
      if (!p2 || !validate_condition(*p2).ok()) {
        parse_error({"the --extends file does not hold a valid condition"});
        return finish(rep, expect, t0, out_path, payload);
      }
      bool ext = end_extends(*p, *p2);
      rep.result = json{{"valid", true}, {"extends", ext}};
      rep.verdict = ext ? Verdict::pass : Verdict::fail;
      if (!ext) rep.violations.push_back("the first condition does not end-extend the second");
      return finish(rep, expect, t0, out_path, payload);
    }
    if (restrict_at >= 0 || above_at >= 0) {
      Condition part = restrict_at >= 0 ? restrict_below(*p, restrict_at) : above(*p, above_at);
      payload = to_json(part);
      rep.result = json{{"valid", true}, {"part", payload}};
      rep.verdict = Verdict::pass;
      return finish(rep, expect, t0, out_path, payload);
    }
    rep.result = json{{"valid", true}};
    rep.verdict = Verdict::pass;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- insert ----
  if (c_insert->parsed()) {
    rep.command = "insert";
    auto j = slurp(in_path, rep);
    if (!j || !j->contains("condition") || !j->contains("requests")) {
      parse_error(j ? std::vector<std::string>{"insert input is {condition, requests}"}
                    : j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto p = condition_from_json((*j)["condition"]);
    if (!p) {
      parse_error(p.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    std::vector<InsertionRequest> reqs;
    std::vector<Rational> used;
    for (const auto& nd : p->nodes) used.push_back(nd.tag);
    for (const auto& rj : (*j)["requests"]) {
      if (!rj.is_object() || !rj.contains("pred") || !rj.contains("succ")) {
        parse_error({"each request is {pred, succ, new|auto}"});
        return finish(rep, expect, t0, out_path, payload);
      }
      int pi = rj["pred"].get<int>(), si = rj["succ"].get<int>();
      if (pi < 0 || si < 0 || pi >= static_cast<int>(p->nodes.size()) ||
          si >= static_cast<int>(p->nodes.size())) {
        parse_error({"request node index out of range"});
        return finish(rep, expect, t0, out_path, payload);
      }
      InsertionRequest r;
      r.pred = p->nodes[static_cast<std::size_t>(pi)];
      r.succ = p->nodes[static_cast<std::size_t>(si)];
      if (rj.contains("new")) {
        auto n = node_from_json(rj["new"]);
        if (!n) {
          parse_error(n.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        r.fresh = *n;
      } else {
        // auto mode: one level above the predecessor, fresh tag
        int lv = rj.contains("level") ? rj["level"].get<int>() : r.pred.level + 1;
        Rational tag = fresh_rational(used);
        used.push_back(tag);
        r.fresh = Node{lv, tag};
      }
      reqs.push_back(r);
    }
    auto q = multi_insert(*p, reqs);
    if (!q) {
      fail_with(q.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    payload = to_json(*q);
    rep.result = json{{"condition", payload}};
    rep.verdict = Verdict::pass;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- amalgamate ----
  if (c_amalg->parsed()) {
    rep.command = "amalgamate";
    auto j = slurp(in_path, rep);
    if (!j || !j->contains("p") || !j->contains("q")) {
      parse_error(j ? std::vector<std::string>{"amalgamate input is {p, q[, spec][, tuples...]}"}
                    : j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto p = condition_from_json((*j)["p"]);
    auto q = condition_from_json((*j)["q"]);
    if (!p || !q) {
      parse_error(!p ? p.errors() : q.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    if (!j->contains("spec")) {
      auto r = compatible(*p, *q);
      if (r) {
        payload = to_json(*r);
        rep.result = json{{"compatible", true}, {"witness", payload}};
        rep.verdict = Verdict::some;
      } else {
        rep.result = json{{"compatible", false}};
        rep.verdict = Verdict::none;
      }
      return finish(rep, expect, t0, out_path, payload);
    }
    auto spec = spec_from_json((*j)["spec"], *p, *q);
    if (!spec) {
      parse_error(spec.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    Outcome<Condition> r = Outcome<Condition>::failure("unreachable");
    if (j->contains("tuples")) {
      const auto& tj = (*j)["tuples"];
      if (!tj.contains("low") || !tj.contains("high") || !j->contains("starred") ||
          !j->contains("type")) {
        parse_error({"typed merge needs tuples.low, tuples.high, starred, type"});
        return finish(rep, expect, t0, out_path, payload);
      }
      auto low = nodes_from_ids(tj["low"], *p);
      auto high = nodes_from_ids(tj["high"], *q);
      auto starred = nodes_from_ids((*j)["starred"], *q);
      auto g = TypeVector::parse((*j)["type"].get<std::string>());
      if (!low || !high || !starred || !g) {
        parse_error({"bad tuple or type data in the typed merge input"});
        return finish(rep, expect, t0, out_path, payload);
      }
      r = amalgamate_with_type(*p, *q, {*low, *high, *starred, *g}, *spec);
    } else {
      r = amalgamate(*p, *q, *spec);
    }
    if (!r) {
      fail_with(r.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    payload = to_json(*r);
    rep.result = json{{"condition", payload}};
    rep.verdict = Verdict::pass;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- gen-tree ----
  if (c_gen->parsed()) {
    rep.command = "gen-tree";
    if (!in_path.empty()) {
      auto j = slurp(in_path, rep);
      if (!j) {
        parse_error(j.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto t = tree_from_json(*j);
      if (!t) {
        parse_error(t.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto normal = check_normal(*t);
      json chain = json::array(), anti = json::array();
      for (const auto& nd : max_chain(*t)) chain.push_back(to_json(nd));
      for (const auto& nd : max_antichain(*t)) anti.push_back(to_json(nd));
      rep.result = json{{"node_count", t->node_count()},
                        {"normal", to_json(normal)},
                        {"max_chain", chain},
                        {"max_antichain", anti}};
      rep.verdict = normal.normal() ? Verdict::pass : Verdict::fail;
      if (!normal.normal())
        for (const auto& nd : normal.splitting_failures)
          rep.violations.push_back("splitting failure at " + nd.str());
      return finish(rep, expect, t0, out_path, payload);
    }
    rep.inputs["height"] = height;
    rep.inputs["widths"] = widths_csv;
    auto t = build_pseudo_generic(height, parse_csv_ints(widths_csv), seed);
    if (!t) {
      fail_with(t.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    payload = to_json(*t);
    rep.result = json{{"tree", payload}, {"normal", to_json(check_normal(*t))}};
    rep.verdict = Verdict::pass;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- lex-compare ----
  if (c_lex->parsed()) {
    rep.command = "lex-compare";
    auto j = slurp(in_path, rep);
    if (!j || !j->contains("tree") || !j->contains("a") || !j->contains("b")) {
      parse_error(j ? std::vector<std::string>{"lex input is {tree, a, b} with node ids"}
                    : j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto t = tree_from_json((*j)["tree"]);
    if (!t) {
      parse_error(t.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    TreeView tv(*t);
    int ia = (*j)["a"].get<int>(), ib = (*j)["b"].get<int>();
    if (ia < 0 || ib < 0 || ia >= tv.size() || ib >= tv.size()) {
      parse_error({"node id out of range"});
      return finish(rep, expect, t0, out_path, payload);
    }
    Node a = tv.node_of(ia), b = tv.node_of(ib);
    auto ord = lex_compare(*t, a, b);
    auto d = delta(*t, a, b);
    int meet = tv.meet_level(ia, ib);
    rep.result = json{{"ordering", ordering_name(*ord)}, {"delta", *d}, {"meet_level", meet}};
    if (meet >= 0 && meet < std::min(a.level, b.level)) {
      rep.result["branch_a"] = to_json(*projection(*t, a, meet + 1));
      rep.result["branch_b"] = to_json(*projection(*t, b, meet + 1));
    }
    rep.verdict = Verdict::pass;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- check-lemma ----
  if (c_lemma->parsed()) {
    rep.command = "check-lemma " + lemma_which;
    if (lemma_which == "2.4") {
      LeveledTree t;
      if (!in_path.empty()) {
        auto j = slurp(in_path, rep);
        if (!j) {
          parse_error(j.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        auto tt = tree_from_json(j->contains("tree") ? (*j)["tree"] : *j);
        if (!tt) {
          parse_error(tt.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        t = *tt;
      } else {
        rep.inputs["height"] = height;
        rep.inputs["widths"] = widths_csv;
        auto tt = build_pseudo_generic(height, parse_csv_ints(widths_csv), seed);
        if (!tt) {
          fail_with(tt.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        t = *tt;
      }
      auto bad = lex_meet_violations(t);
      json arr = json::array();
      for (const auto& v : bad) {
        arr.push_back(json::array({to_json(v.a), to_json(v.b), to_json(v.c), to_json(v.d)}));
        rep.violations.push_back("meet of " + v.a.str() + "," + v.b.str() + " reaches " +
                                 v.c.str());
      }
      rep.result = json{{"violations", arr}};
      rep.verdict = bad.empty() ? Verdict::pass : Verdict::fail;
      return finish(rep, expect, t0, out_path, payload);
    }
    // 2.11
    auto j = slurp(in_path, rep);
    if (!j || !j->contains("condition") || !j->contains("config")) {
      parse_error(j ? std::vector<std::string>{"input is {condition, config}"} : j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto p = condition_from_json((*j)["condition"]);
    if (!p) {
      parse_error(p.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    const auto& cj = (*j)["config"];
    const char* names[5] = {"fork", "left", "right", "left_top", "right_top"};
    Node nodes[5];
    for (int i = 0; i < 5; ++i) {
      if (!cj.contains(names[i])) {
        parse_error({std::string("config needs node index ") + names[i]});
        return finish(rep, expect, t0, out_path, payload);
      }
      int idx = cj[names[i]].get<int>();
      if (idx < 0 || idx >= static_cast<int>(p->nodes.size())) {
        parse_error({"config index out of range"});
        return finish(rep, expect, t0, out_path, payload);
      }
      nodes[i] = p->nodes[static_cast<std::size_t>(idx)];
    }
    ForcedLexConfig cfg{nodes[0], nodes[1], nodes[2], nodes[3], nodes[4]};
    auto ok = check_forced_lex(*p, cfg, completions, seed);
    rep.inputs["completions"] = completions;
    if (!ok) {
      fail_with(ok.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    rep.result = json{{"holds", *ok}, {"completions", completions}};
    rep.verdict = *ok ? Verdict::pass : Verdict::fail;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- realize ----
  if (c_realize->parsed()) {
    rep.command = "realize " + realize_which;
    auto j = slurp(in_path, rep);
    if (!j) {
      parse_error(j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto g = TypeVector::parse(type_bits);
    if (!g) {
      parse_error(g.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    rep.inputs["type"] = type_bits;
    if (realize_which == "linear") {
      auto s = linear_sequence_from_json(j->contains("sequence") ? (*j)["sequence"] : *j);
      if (!s) {
        parse_error(s.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto vr = validate_linear_sequence(*s);
      if (!vr.ok()) {
        fail_with(vr.violations);
        return finish(rep, expect, t0, out_path, payload);
      }
      if (pair_query.size() == 2) {
        auto sat = satisfies_linear(s->tuples[static_cast<std::size_t>(pair_query[0])],
                                    s->tuples[static_cast<std::size_t>(pair_query[1])], *g);
        if (!sat) {
          fail_with(sat.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        rep.result = json{{"satisfies", *sat}};
        rep.verdict = *sat ? Verdict::pass : Verdict::fail;
        return finish(rep, expect, t0, out_path, payload);
      }
      auto hit = realize_linear(*s, *g);
      auto co = realize_linear(*s, complement(*g));
      if (!hit || !co) {
        fail_with(hit ? co.errors() : hit.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      rep.result = json{{"witness", hit->has_value()
                                        ? json::array({(*hit)->first, (*hit)->second})
                                        : json("none")},
                        {"complement_agrees", hit->has_value() == co->has_value()}};
      rep.verdict = hit->has_value() ? Verdict::some : Verdict::none;
      return finish(rep, expect, t0, out_path, payload);
    }
    // tree
    if (!j->contains("tree") || !j->contains("sequence")) {
      parse_error({"tree realization input is {tree, sequence}"});
      return finish(rep, expect, t0, out_path, payload);
    }
    auto t = tree_from_json((*j)["tree"]);
    if (!t) {
      parse_error(t.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto s = tree_sequence_from_json((*j)["sequence"], *t);
    if (!s) {
      parse_error(s.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    if (pair_query.size() == 2) {
      auto sat = satisfies_tree(*t, s->tuples[static_cast<std::size_t>(pair_query[0])],
                                s->tuples[static_cast<std::size_t>(pair_query[1])], *g);
      if (!sat) {
        fail_with(sat.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      rep.result = json{{"satisfies", *sat}};
      rep.verdict = *sat ? Verdict::pass : Verdict::fail;
      return finish(rep, expect, t0, out_path, payload);
    }
    auto hit = realize_tree(*t, *s, *g);
    if (!hit) {
      fail_with(hit.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    rep.result = json{{"witness", hit->has_value()
                                      ? json::array({(*hit)->first, (*hit)->second})
                                      : json("none")}};
    if (with_delta_bound) {
      auto b = delta_bound(*t, *s);
      if (b) rep.result["delta_bound"] = *b;
    }
    if (project_at >= 0) {
      auto groups = project_and_group(*t, *s, project_at);
      if (!groups) {
        fail_with(groups.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      json garr = json::array();
      for (const auto& gr : *groups) {
        json base = json::array();
        for (const auto& nd : gr.base) base.push_back(to_json(nd));
        garr.push_back(json{{"base", base}, {"members", gr.members}, {"increasing", gr.increasing}});
      }
      rep.result["groups"] = garr;
    }
    rep.verdict = hit->has_value() ? Verdict::some : Verdict::none;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- separated ----
  if (c_sep->parsed()) {
    rep.command = "separated";
    auto j = slurp(in_path, rep);
    if (!j) {
      parse_error(j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    if (classify) {
      if (!j->contains("pair1") || !j->contains("pair2")) {
        parse_error({"classification input is {pair1, pair2}"});
        return finish(rep, expect, t0, out_path, payload);
      }
      auto p1 = (*j)["pair1"], p2 = (*j)["pair2"];
      auto r = classify_pair_relation({p1[0].get<int>(), p1[1].get<int>()},
                                      {p2[0].get<int>(), p2[1].get<int>()});
      if (!r) {
        fail_with(r.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      rep.result = json{{"relation", pair_relation_name(*r)}};
      rep.verdict = Verdict::pass;
      return finish(rep, expect, t0, out_path, payload);
    }
    auto s = linear_sequence_from_json(j->contains("sequence") ? (*j)["sequence"] : *j);
    if (!s) {
      parse_error(s.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto vr = validate_linear_sequence(*s);
    if (!vr.ok()) {
      fail_with(vr.violations);
      return finish(rep, expect, t0, out_path, payload);
    }
    std::optional<SeparatedWitness> given;
    if (j->contains("witness")) given = SeparatedWitness{(*j)["witness"].get<std::vector<int>>()};
    auto w = check_separated(*s, given);
    if (w) {
      rep.result = json{{"witness", w->separators}};
      rep.verdict = Verdict::some;
    } else {
      rep.result = json{{"witness", "none"}};
      rep.verdict = Verdict::none;
    }
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- counterexample ----
  if (c_counter->parsed()) {
    rep.command = "counterexample " + counter_which;
    if (counter_which == "prop39") {
      if (size < 1) {
        parse_error({"--size must be at least 1"});
        return finish(rep, expect, t0, out_path, payload);
      }
      rep.inputs["size"] = size;
      auto w = doubling_witness(size);
      LinearTupleSequence s;
      s.order_size = 2 * size;
      for (auto [a, b] : w) s.tuples.push_back({a, b});
      auto ten = realize_linear(s, TypeVector({1, 0}));
      auto eleven = realize_linear(s, TypeVector({1, 1}));
      rep.result = json{
          {"pattern_10", ten->has_value() ? json::array({(*ten)->first, (*ten)->second})
                                          : json("none")},
          {"pattern_11", eleven->has_value()
                             ? json::array({(*eleven)->first, (*eleven)->second})
                             : json("none")}};
      rep.verdict = ten->has_value() ? Verdict::some : Verdict::none;
      return finish(rep, expect, t0, out_path, payload);
    }
    if (counter_which == "sec4") {
      LeveledTree t;
      if (!in_path.empty()) {
        auto j = slurp(in_path, rep);
        if (!j) {
          parse_error(j.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        auto tt = tree_from_json(j->contains("tree") ? (*j)["tree"] : *j);
        if (!tt) {
          parse_error(tt.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        t = *tt;
      } else {
        int h = height > 0 ? height : 3 * ladder;
        if (h < 2) {
          parse_error({"give --in or --height/--k to build a spine tree"});
          return finish(rep, expect, t0, out_path, payload);
        }
        rep.inputs["height"] = h;
        t = build_spine_tree(h, seed);
      }
      auto seq = fork_ladder_pairs(t, ladder);
      if (!seq) {
        fail_with(seq.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto hit = realize_tree(t, *seq, TypeVector({1, 1}));
      if (!hit) {
        fail_with(hit.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      rep.result = json{{"pairs", tree_sequence_to_json(t, *seq)["tuples"]},
                        {"pattern_11", hit->has_value()
                                           ? json::array({(*hit)->first, (*hit)->second})
                                           : json("none")}};
      rep.verdict = hit->has_value() ? Verdict::some : Verdict::none;
      return finish(rep, expect, t0, out_path, payload);
    }
    // prop33
    auto j = slurp(in_path, rep);
    if (!j || !j->contains("pairs") || !j->contains("index_pairs")) {
      parse_error(j ? std::vector<std::string>{"input is {order_size, pairs, index_pairs}"}
                    : j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    std::vector<std::pair<int, int>> pairs, ipairs;
    for (const auto& pj : (*j)["pairs"]) pairs.emplace_back(pj[0].get<int>(), pj[1].get<int>());
    for (const auto& pj : (*j)["index_pairs"])
      ipairs.emplace_back(pj[0].get<int>(), pj[1].get<int>());
    int order_size = j->contains("order_size") ? (*j)["order_size"].get<int>() : 0;
    auto s = nested_triples(order_size, pairs, ipairs);
    if (!s) {
      fail_with(s.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto hit = realize_linear(*s, TypeVector({1, 0, 1}));
    rep.result = json{{"tuples", to_json(*s)["tuples"]},
                      {"pattern_101", hit->has_value()
                                          ? json::array({(*hit)->first, (*hit)->second})
                                          : json("none")}};
    rep.verdict = hit->has_value() ? Verdict::some : Verdict::none;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- derived ----
  if (c_derived->parsed()) {
    rep.command = "derived";
    auto j = slurp(in_path, rep);
    if (!j) {
      parse_error(j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto t = tree_from_json(j->contains("tree") ? (*j)["tree"] : *j);
    if (!t) {
      parse_error(t.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    TreeView tv(*t);
    if (!base_csv.empty()) {
      std::vector<Node> base;
      for (int id : parse_csv_ints(base_csv)) {
        if (id < 0 || id >= tv.size()) {
          parse_error({"base node id out of range"});
          return finish(rep, expect, t0, out_path, payload);
        }
        base.push_back(tv.node_of(id));
      }
      rep.inputs["base"] = base_csv;
      if (split_at >= 0) {
        auto sp = split_embedding(*t, base, split_at);
        if (!sp) {
          fail_with(sp.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        rep.result = json{{"order_violations", sp->order_violations},
                          {"density_violations", sp->density_violations}};
        for (const auto& v : sp->order_violations) rep.violations.push_back(v);
        for (const auto& v : sp->density_violations) rep.violations.push_back(v);
        rep.verdict = sp->ok() ? Verdict::pass : Verdict::fail;
        return finish(rep, expect, t0, out_path, payload);
      }
      auto d = derived_at(*t, base);
      if (!d) {
        fail_with(d.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      payload = to_json(d->tree);
      rep.result = json{{"tree", payload}, {"labels", d->labels}};
      rep.verdict = Verdict::pass;
      return finish(rep, expect, t0, out_path, payload);
    }
    if (arity < 1) {
      parse_error({"give --n or --base"});
      return finish(rep, expect, t0, out_path, payload);
    }
    rep.inputs["n"] = arity;
    auto d = derived_power(*t, arity);
    if (!d) {
      fail_with(d.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    payload = to_json(d->tree);
    rep.result = json{{"tree", payload}, {"labels", d->labels}};
    rep.verdict = Verdict::pass;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- dense-below ----
  if (c_dense->parsed()) {
    rep.command = "dense-below";
    auto j = slurp(in_path, rep);
    if (!j || !j->contains("tree") || !j->contains("target")) {
      parse_error(j ? std::vector<std::string>{"input is {tree, target}"} : j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto t = tree_from_json((*j)["tree"]);
    if (!t) {
      parse_error(t.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    TreeView tv(*t);
    std::vector<Node> target;
    for (const auto& e : (*j)["target"]) {
      int id = e.get<int>();
      if (id < 0 || id >= tv.size()) {
        parse_error({"target id out of range"});
        return finish(rep, expect, t0, out_path, payload);
      }
      target.push_back(tv.node_of(id));
    }
    auto a = dense_below(*t, target);
    rep.result = json{{"node", a ? to_json(*a) : json("none")}};
    rep.verdict = a ? Verdict::some : Verdict::none;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- pstar ----
  if (c_pstar->parsed()) {
    rep.command = "pstar " + pstar_which;
    auto j = slurp(in_path, rep);
    if (!j) {
      parse_error(j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    if (pstar_which == "validate") {
      auto c = pstar_from_json(*j);
      if (!c) {
        parse_error(c.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto vr = validate_pstar(*c);
      if (!vr.ok()) {
        rep.result = json{{"valid", false}};
        fail_with(vr.violations);
        return finish(rep, expect, t0, out_path, payload);
      }
      if (!extends_path.empty()) {
        Report dummy;
        auto j2 = slurp(extends_path, dummy);
        rep.inputs["extends"] = dummy.inputs["in"];
        if (!j2) {
          parse_error(j2.errors());
          return finish(rep, expect, t0, out_path, payload);
        }
        auto c2 = pstar_from_json(*j2);
        if (!c2 || !validate_pstar(*c2).ok()) {
          parse_error({"the --extends file does not hold a valid colored condition"});
          return finish(rep, expect, t0, out_path, payload);
        }
        bool ext = pstar_extends(*c, *c2);
        rep.result = json{{"valid", true}, {"extends", ext}};
        rep.verdict = ext ? Verdict::pass : Verdict::fail;
        return finish(rep, expect, t0, out_path, payload);
      }
      rep.result = json{{"valid", true}};
      rep.verdict = Verdict::pass;
      return finish(rep, expect, t0, out_path, payload);
    }
    if (pstar_which == "amalgamate") {
      if (!j->contains("p") || !j->contains("q") || !j->contains("spec")) {
        parse_error({"input is {p, q, spec, tuples, starred, type}"});
        return finish(rep, expect, t0, out_path, payload);
      }
      auto p = pstar_from_json((*j)["p"]);
      auto q = pstar_from_json((*j)["q"]);
      if (!p || !q) {
        parse_error(!p ? p.errors() : q.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto spec = spec_from_json((*j)["spec"], p->tree, q->tree);
      if (!spec) {
        parse_error(spec.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      TypedAmalgamationInput input;
      if (j->contains("tuples")) {
        auto low = nodes_from_ids((*j)["tuples"]["low"], p->tree);
        auto high = nodes_from_ids((*j)["tuples"]["high"], q->tree);
        auto starred = nodes_from_ids((*j)["starred"], q->tree);
        auto g = TypeVector::parse((*j)["type"].get<std::string>());
        if (!low || !high || !starred || !g) {
          parse_error({"bad tuple or type data"});
          return finish(rep, expect, t0, out_path, payload);
        }
        input = {*low, *high, *starred, *g};
      }
      auto r = pstar_amalgamate(*p, *q, input, *spec);
      if (!r) {
        fail_with(r.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      payload = to_json(*r);
      rep.result = json{{"condition", payload}};
      rep.verdict = Verdict::pass;
      return finish(rep, expect, t0, out_path, payload);
    }
    // extract
    if (!j->contains("cond") || !j->contains("base")) {
      parse_error({"input is {cond, base}"});
      return finish(rep, expect, t0, out_path, payload);
    }
    auto c = pstar_from_json((*j)["cond"]);
    if (!c) {
      parse_error(c.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto base = nodes_from_ids((*j)["base"], c->tree);
    if (!base) {
      parse_error(base.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto f = extract_specializer(*c, *base);
    json arr = json::array();
    OrderView ov(c->tree);
    bool proper = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
      json tup = json::array();
      for (const auto& nd : f[i].first) tup.push_back(find_node(c->tree, nd));
      arr.push_back(json{{"a", tup}, {"color", f[i].second}});
      for (std::size_t k = i + 1; k < f.size(); ++k) {
        bool below = true, upper = true;
        for (std::size_t m = 0; m < f[i].first.size(); ++m) {
          int x = find_node(c->tree, f[i].first[m]), y = find_node(c->tree, f[k].first[m]);
          if (!ov.less(x, y)) below = false;
          if (!ov.less(y, x)) upper = false;
        }
        if ((below || upper) && f[i].second == f[k].second) proper = false;
      }
    }
    rep.result = json{{"map", arr}, {"proper", proper}};
    rep.verdict = proper ? Verdict::pass : Verdict::fail;
    return finish(rep, expect, t0, out_path, payload);
  }

  // ---- sigma-reduce ----
  if (c_sigma->parsed()) {
    rep.command = "sigma-reduce";
    auto j = slurp(in_path, rep);
    if (!j || !j->contains("sigma")) {
      parse_error(j ? std::vector<std::string>{"input is {sequence|tree+sequence, sigma}"}
                    : j.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto g = TypeVector::parse(type_bits);
    if (!g) {
      parse_error(g.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    rep.inputs["type"] = type_bits;
    std::vector<int> sigma = (*j)["sigma"].get<std::vector<int>>();
    if (j->contains("tree")) {
      auto t = tree_from_json((*j)["tree"]);
      if (!t) {
        parse_error(t.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto s = tree_sequence_from_json((*j)["sequence"], *t);
      if (!s) {
        parse_error(s.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      auto r = sigma_reduce(*s, sigma, *g);
      if (!r) {
        fail_with(r.errors());
        return finish(rep, expect, t0, out_path, payload);
      }
      TypeVector out_type = complement_too ? complement(r->second) : r->second;
      rep.result = json{{"sequence", tree_sequence_to_json(*t, r->first)},
                        {"type", out_type.str()}};
      rep.verdict = Verdict::pass;
      return finish(rep, expect, t0, out_path, payload);
    }
    auto s = linear_sequence_from_json(j->contains("sequence") ? (*j)["sequence"] : *j);
    if (!s) {
      parse_error(s.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    auto r = sigma_reduce(*s, sigma, *g);
    if (!r) {
      fail_with(r.errors());
      return finish(rep, expect, t0, out_path, payload);
    }
    TypeVector out_type = complement_too ? complement(r->second) : r->second;
    rep.result = json{{"sequence", to_json(r->first)}, {"type", out_type.str()}};
    rep.verdict = Verdict::pass;
    return finish(rep, expect, t0, out_path, payload);
  }

  std::cout << json{{"command", "none"}, {"verdict", "error"},
                    {"violations", json::array({"unknown subcommand"})}}
                   .dump(1)
            << "\n";
  return 2;
}
