// Command-line front end: cycles, normal forms, module actions, connector
// sets, Ext dimensions, and the truncated verifiers, over Q or a prime
// field. Exit codes: 0 success, 1 failed check, 2 usage or input error.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpa/ext.hpp"
#include "lpa/fixtures.hpp"
#include "lpa/testing/acceptance.hpp"

using nlohmann::json;
using namespace lpa;

namespace {

struct Options {
  std::string graph_file;
  std::string field = "Q";
  bool as_json = false;
  int truncation = 3;
  int oracle_bound = 0;  // 0 = skip the oracle
  std::string source, target;  // "cycle:poly" for ext; bare cycles for connectors
  std::string module_spec;     // "cycle:poly" or "cycle" (with --scalar)
  std::string cycle, poly, scalar;
  std::string expr, vector_lit;
  bool want_resolution = false, want_lemma = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrKind::UsageError, "cannot open graph file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A cycle argument is an alias produced by `cycles` or a literal edge list.
Cycle resolve_cycle(const Graph& g, const std::string& spec) {
  auto cycles = find_cycles(g);
  auto names = cycle_aliases(g, cycles);
  for (size_t i = 0; i < cycles.size(); ++i)
    if (names[i] == spec) return cycles[i];
  return parse_cycle(g, spec);
}

// "cycle:poly" split at the first colon.
std::pair<std::string, std::string> split_module_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    fail(ErrKind::UsageError, "expected 'cycle:polynomial', got '" + spec + "'");
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

template <class F>
int cmd_cycles(const Options& opt, const Graph& g, const F&) {
  auto cycles = find_cycles(g);
  auto names = cycle_aliases(g, cycles);
  if (opt.as_json) {
    json out = json::array();
    for (size_t i = 0; i < cycles.size(); ++i)
      out.push_back({{"alias", names[i]},
                     {"edges", path_str(g, cycles[i].path)},
                     {"base", g.vertex_id(cycles[i].base(g))},
                     {"exclusive", is_exclusive(g, cycles[i])}});
    std::cout << out.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < cycles.size(); ++i)
      std::cout << names[i] << ": " << path_str(g, cycles[i].path) << " (base "
                << g.vertex_id(cycles[i].base(g))
                << (is_exclusive(g, cycles[i]) ? ", exclusive)" : ")") << "\n";
  }
  return 0;
}

template <class F>
int cmd_nf(const Options& opt, const Graph& g, const F& f) {
  auto x = element_parse(&g, f, opt.expr);
  auto n = normal_form(x);
  if (opt.as_json)
    std::cout << json{{"input", opt.expr}, {"normal_form", element_str(n)}}.dump(2) << "\n";
  else
    std::cout << element_str(n) << "\n";
  return 0;
}

template <class F>
int cmd_connectors(const Options& opt, const Graph& g, const F&) {
  Cycle c = resolve_cycle(g, opt.source);
  Cycle e = resolve_cycle(g, opt.target);
  auto res = connector_set(g, c, e);
  if (opt.as_json) {
    json out{{"infinite", res.infinite}};
    if (res.infinite) {
      out["witness"] = {{"stem", path_str(g, res.witness.stem)},
                        {"loop", path_str(g, make_path(g, res.witness.cycle))},
                        {"tail", path_str(g, res.witness.tail)}};
    } else {
      out["representatives"] = json::array();
      for (const auto& r : res.reps) out["representatives"].push_back(path_str(g, r));
    }
    std::cout << out.dump(2) << "\n";
  } else if (res.infinite) {
    std::cout << "infinite; pumping witness: stem [" << path_str(g, res.witness.stem)
              << "], loop [" << path_str(g, make_path(g, res.witness.cycle)) << "], tail ["
              << path_str(g, res.witness.tail) << "]\n";
  } else {
    std::cout << res.reps.size() << " representative(s)\n";
    for (const auto& r : res.reps) std::cout << "  [" << path_str(g, r) << "]\n";
  }
  return 0;
}

template <class F>
int cmd_ext(const Options& opt, const Graph& g, const F& f) {
  auto [csrc, psrc] = split_module_spec(opt.source);
  auto [ctgt, ptgt] = split_module_spec(opt.target);
  Cycle c = resolve_cycle(g, csrc);
  Cycle e = resolve_cycle(g, ctgt);
  auto p = make_basic(f, poly_parse(f, psrc));
  auto q = make_basic(f, poly_parse(f, ptgt));
  auto dim = ext_dim(g, f, c, p, e, q);
  std::optional<OracleResult> ora;
  bool agree = true;
  if (opt.oracle_bound > 0) {
    ora = ext_dim_oracle(g, f, c, p, e, q, opt.oracle_bound);
    agree = dim.infinite ? !ora->stable : (ora->stable && ora->value == dim.value);
  }
  if (opt.as_json) {
    json out{{"dimension", dim.value_str()},
             {"case", ext_case_name(dim.tag)},
             {"rotation_warning", dim.rotation_warning}};
    if (dim.connectors) {
      if (dim.connectors->infinite) {
        out["connectors"] = "infinite";
      } else {
        out["connectors"] = json::array();
        for (const auto& r : dim.connectors->reps)
          out["connectors"].push_back(path_str(g, r));
      }
    }
    if (ora)
      out["oracle"] = {{"stable", ora->stable},
                       {"at_bound", ora->at_bound},
                       {"at_next", ora->at_next},
                       {"verdict", agree ? "AGREE" : "DISAGREE"}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "dim Ext^1 = " << dim.value_str() << " (" << ext_case_name(dim.tag) << ")\n";
    if (dim.rotation_warning)
      std::cout << "warning: cycles are rotations of each other but not identical\n";
    if (dim.connectors && !dim.connectors->infinite)
      for (const auto& r : dim.connectors->reps)
        std::cout << "connector: [" << path_str(g, r) << "]\n";
    if (ora)
      std::cout << "oracle: "
                << (ora->stable ? "stable at " + std::to_string(ora->value)
                                : "unstable (" + std::to_string(ora->at_bound) + " -> " +
                                      std::to_string(ora->at_next) + ")")
                << " -- " << (agree ? "AGREE" : "DISAGREE") << "\n";
  }
  if (!agree) {
    std::cerr << "oracle disagrees with the closed form\n";
    return 1;
  }
  return 0;
}

template <class F>
int cmd_ext_table(const Options& opt, const Graph& g, const F& f) {
  auto p = make_basic(f, poly_parse(f, opt.poly.empty() ? opt.source : opt.poly));
  auto q = make_basic(f, poly_parse(f, opt.target));
  auto cycles = find_cycles(g);
  auto names = cycle_aliases(g, cycles);
  std::vector<size_t> keep;
  for (size_t i = 0; i < cycles.size(); ++i)
    if (is_exclusive(g, cycles[i])) keep.push_back(i);
  json rows = json::array();
  for (size_t i : keep)
    for (size_t j : keep) {
      auto dim = ext_dim(g, f, cycles[i], p, cycles[j], q);
      if (opt.as_json)
        rows.push_back({{"src", names[i]},
                        {"tgt", names[j]},
                        {"dimension", dim.value_str()},
                        {"case", ext_case_name(dim.tag)}});
      else
        std::cout << names[i] << " -> " << names[j] << ": " << dim.value_str() << " ("
                  << ext_case_name(dim.tag) << ")\n";
    }
  if (opt.as_json) std::cout << rows.dump(2) << "\n";
  return 0;
}

template <class F>
int cmd_act(const Options& opt, const Graph& g, const F& f) {
  std::string rendered;
  if (!opt.scalar.empty()) {
    Cycle e = resolve_cycle(g, opt.module_spec);
    ChenModule<F, F> m(&g, e, f, f, f.parse(opt.scalar));
    auto v = opt.vector_lit.empty() ? m.generator() : vector_parse(m, opt.vector_lit);
    rendered = vector_str(m, m.act(element_parse(&g, f, opt.expr), v));
  } else {
    auto [cyc, pol] = split_module_spec(opt.module_spec);
    Cycle e = resolve_cycle(g, cyc);
    auto p = make_basic(f, poly_parse(f, pol));
    ExtField<F> kp(f, p);
    ChenModule<F, ExtField<F>> m(&g, e, f, kp, kp.xbar());
    auto v = opt.vector_lit.empty() ? m.generator() : vector_parse(m, opt.vector_lit);
    rendered = vector_str(m, m.act(element_parse(&g, f, opt.expr), v));
  }
  if (opt.as_json)
    std::cout << json{{"result", rendered}}.dump(2) << "\n";
  else
    std::cout << rendered << "\n";
  return 0;
}

template <class F>
int cmd_verify(const Options& opt, const Graph& g, const F& f) {
  if (opt.want_resolution == opt.want_lemma)
    fail(ErrKind::UsageError, "pass exactly one of --resolution or --lemma");
  Cycle e = resolve_cycle(g, opt.cycle);
  VerifyReport rep;
  if (opt.want_resolution) {
    std::optional<Poly<F>> p;
    std::optional<typename F::Elem> a;
    if (!opt.scalar.empty())
      a = f.parse(opt.scalar);
    else
      p = make_basic(f, poly_parse(f, opt.poly));
    rep = verify_resolution(g, f, e, p, a, opt.truncation);
  } else {
    rep = verify_contraction_lemma(g, f, e, make_basic(f, poly_parse(f, opt.poly)),
                                   opt.truncation);
  }
  if (opt.as_json) {
    json out = json::array();
    for (const auto& c : rep.checks)
      out.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& c : rep.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

template <class F>
int dispatch(const std::string& cmd, const Options& opt, const Graph& g, const F& f) {
  if (cmd == "cycles") return cmd_cycles(opt, g, f);
  if (cmd == "nf") return cmd_nf(opt, g, f);
  if (cmd == "connectors") return cmd_connectors(opt, g, f);
  if (cmd == "ext") return cmd_ext(opt, g, f);
  if (cmd == "ext-table") return cmd_ext_table(opt, g, f);
  if (cmd == "act") return cmd_act(opt, g, f);
  if (cmd == "verify") return cmd_verify(opt, g, f);
  fail(ErrKind::UsageError, "unknown command '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Leavitt path algebra toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_graph) {
    if (needs_graph)
      sub->add_option("-g,--graph", opt.graph_file, "graph description file")->required();
    sub->add_option("--field", opt.field, "coefficient field: Q (default) or F<prime>");
    sub->add_flag("--json", opt.as_json, "machine-readable output");
  };

  add_common(app.add_subcommand("cycles", "list cycles with aliases and exclusivity"), true);

  auto* nf = app.add_subcommand("nf", "normal form of an algebra element");
  add_common(nf, true);
  nf->add_option("expr", opt.expr, "element expression")->required();

  auto* conn = app.add_subcommand("connectors", "connector set between two cycles");
  add_common(conn, true);
  conn->add_option("--source", opt.source, "source cycle (alias or edge list)")->required();
  conn->add_option("--target", opt.target, "target cycle (alias or edge list)")->required();

  auto* ext = app.add_subcommand("ext", "Ext^1 dimension between twisted simple modules");
  add_common(ext, true);
  ext->add_option("--source", opt.source, "source module as cycle:polynomial")->required();
  ext->add_option("--target", opt.target, "target module as cycle:polynomial")->required();
  ext->add_option("--oracle", opt.oracle_bound,
                  "also run the truncated oracle at this bound and cross-check");

  auto* table = app.add_subcommand("ext-table", "Ext^1 table over all exclusive cycles");
  add_common(table, true);
  table->add_option("--source-poly", opt.source, "polynomial for every source module")
      ->required();
  table->add_option("--target-poly", opt.target, "polynomial for every target module")
      ->required();

  auto* act = app.add_subcommand("act", "apply an element to a twisted module vector");
  add_common(act, true);
  act->add_option("--module", opt.module_spec,
                  "module as cycle:polynomial (or a bare cycle with --scalar)")
      ->required();
  act->add_option("--scalar", opt.scalar, "scalar twist instead of a polynomial");
  act->add_option("--vector", opt.vector_lit, "module vector literal (default: generator)");
  act->add_option("expr", opt.expr, "element expression")->required();

  auto* verify = app.add_subcommand("verify", "resolution or contraction-lemma checks");
  add_common(verify, true);
  verify->add_flag("--resolution", opt.want_resolution, "check the projective resolution");
  verify->add_flag("--lemma", opt.want_lemma, "check the ideal-contraction lemma");
  verify->add_option("--cycle", opt.cycle, "cycle to verify at")->required();
  verify->add_option("--poly", opt.poly, "twist polynomial");
  verify->add_option("--scalar", opt.scalar, "scalar twist (resolution only)");
  verify->add_option("-L,--truncation", opt.truncation, "truncation length (default 3)");

  auto* self = app.add_subcommand("selftest", "run the acceptance suite on built-in fixtures");
  add_common(self, false);

  std::string cmd;
  try {
    app.parse(argc, argv);
    cmd = app.get_subcommands().front()->get_name();
    if (cmd == "selftest") return lpa::testing::run_acceptance(std::cout) ? 0 : 1;
    if (cmd == "verify" && opt.poly.empty() && opt.scalar.empty())
      fail(ErrKind::UsageError, "need --poly or --scalar");

    Graph g = parse_graph(read_file(opt.graph_file));
    if (opt.field == "Q") return dispatch(cmd, opt, g, RationalField{});
    if (opt.field.size() > 1 && opt.field[0] == 'F')
      return dispatch(cmd, opt, g, PrimeField(std::stoll(opt.field.substr(1))));
    fail(ErrKind::UsageError, "field must be Q or F<prime>, got '" + opt.field + "'");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
