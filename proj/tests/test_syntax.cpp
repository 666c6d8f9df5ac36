#include <gtest/gtest.h>

#include "lotos/io.hpp"
#include "lotos/syntax/adl_parser.hpp"
#include "lotos/syntax/asc_parser.hpp"
#include "lotos/syntax/parser.hpp"
#include "lotos/syntax/printer.hpp"
#include "lotos/syntax/validate.hpp"
#include "oracles.hpp"

using namespace lotos;
using namespace lotos::syntax;

namespace {

std::vector<std::string> codes(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

std::string first_code(std::string_view text) {
  auto r = parse_spec(text);
  EXPECT_FALSE(r.ok()) << text;
  return r.diagnostics.empty() ? "" : r.diagnostics.front().code;
}

}  // namespace

TEST(ParseSpec, SmallestSpecification) {
  auto r = parse_spec("specification S [a] : noexit behaviour stop endspec");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->name, "S");
  EXPECT_EQ(r->top_gates, GateList{"a"});
  EXPECT_TRUE(is<Stop>(r->top_behavior));
  EXPECT_TRUE(r->processes.empty());
}

TEST(ParseSpec, ClientServerReconstruction) {
  auto spec = oracle::load("client_server.lot");
  std::vector<std::string> names;
  for (const auto& p : spec.processes) names.push_back(p.name);
  EXPECT_EQ(names, (std::vector<std::string>{"Client", "Connector", "Server"}));
  // (Client |[invClt, terClt]| Connector) |[invSrv, terSrv]| Server
  const auto* top = as<Par>(spec.top_behavior);
  ASSERT_NE(top, nullptr);
  EXPECT_EQ(top->sync.gates, (GateList{"invSrv", "terSrv"}));
  ASSERT_NE(as<Inst>(top->right), nullptr);
  EXPECT_EQ(as<Inst>(top->right)->process, "Server");
  const auto* inner = as<Par>(top->left);
  ASSERT_NE(inner, nullptr);
  EXPECT_EQ(as<Inst>(inner->left)->process, "Client");
  EXPECT_EQ(as<Inst>(inner->right)->process, "Connector");
}

TEST(ParseSpec, UnknownProcessIsLocated) {
  auto r = parse_spec("specification S [a]: noexit behaviour P[a] endspec");
  ASSERT_FALSE(r.ok());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, code::unknown_process);
  EXPECT_EQ(r.diagnostics[0].location.line, 1u);
  EXPECT_EQ(r.diagnostics[0].location.column, 39u);
}

TEST(ParseSpec, BrokenCorpusFile) {
  auto text = read_text_file(oracle::corpus("broken.lot"));
  ASSERT_TRUE(text);
  auto r = parse_spec(*text);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.front().code, code::unknown_process);
  EXPECT_EQ(r.diagnostics.front().location.line, 4u);
  EXPECT_EQ(r.diagnostics.front().location.column, 5u);
}

TEST(ParseSpec, DistinctErrorCodes) {
  EXPECT_EQ(first_code("specification S [a] : noexit behaviour a; $ endspec"), code::lexical);
  EXPECT_EQ(first_code("specification S [a] : noexit behaviour a; endspec"), code::syntax);
  EXPECT_EQ(first_code("specification S [a] : noexit behaviour stop where "
                       "process P [a] : noexit := stop endproc process P [a] : noexit := stop endproc endspec"),
            code::duplicate);
  EXPECT_EQ(first_code("specification S [a] : noexit behaviour a ?x:NAT; stop endspec"), code::unknown_sort);
  EXPECT_EQ(first_code("specification S [a] : noexit behaviour b; stop endspec"), code::unknown_gate);
  EXPECT_EQ(first_code("specification S [a] : noexit behaviour P[a, a, a] where "
                       "process P [x, y] : noexit := x; stop endproc endspec"),
            code::arity);
  EXPECT_EQ(first_code("specification S [a] : noexit sorts B = {t} behaviour a !x; stop endspec"),
            code::unbound_variable);
  EXPECT_EQ(first_code("specification S [a] : noexit library RESULT, SERVICES endlib behaviour stop endspec"),
            code::library);
}

TEST(ParseSpec, CommentsAndSpellingVariants) {
  auto r = parse_spec(
      "(* block *) Specification S [a] : noexit :=\n"
      "Behaviour P[a] /* c-style */\n"
      "Where Process P [g] : noexit := I; g; P[g] Endprocess\n"
      "Endspec");
  ASSERT_TRUE(r.ok()) << r.diagnostics.front();
  const auto* body = as<Prefix>(r->processes[0].body);
  ASSERT_NE(body, nullptr);
  EXPECT_TRUE(body->action.internal);
}

TEST(ParseSpec, IdentifiersAreCaseSensitive) {
  auto r = parse_spec("specification S [a] : noexit behaviour A; stop endspec");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.front().code, code::unknown_gate);
}

TEST(ParseSpec, Deterministic) {
  std::string bad = "specification S [a] : noexit behaviour a; P[b] ||| endspec";
  auto r1 = parse_spec(bad), r2 = parse_spec(bad);
  EXPECT_EQ(r1.diagnostics, r2.diagnostics);
  auto s1 = oracle::load("multicast.lot"), s2 = oracle::load("multicast.lot");
  EXPECT_EQ(s1, s2);
}

TEST(ParseSpec, DiagnosticsLieInsideInput) {
  for (std::string text : {"specification", "specification S [a] : noexit behaviour (a; stop",
                           "specification S [a] : noexit behaviour a; stop endspec trailing",
                           "specification S [a] : noexit behaviour a; stop (* open"}) {
    auto r = parse_spec(text);
    ASSERT_FALSE(r.ok()) << text;
    for (const auto& d : r.diagnostics) {
      EXPECT_GE(d.location.line, 1u) << text;
      EXPECT_EQ(d.location.line, 1u) << text;
      EXPECT_LE(d.location.column, text.size() + 1) << text;
    }
  }
}

TEST(ParseBehavior, TwoBranchChoice) {
  auto r = parse_behavior("a; stop [] b; stop");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r, choice(prefix("a", stop()), prefix("b", stop())));
}

TEST(ParseBehavior, HideOverParallel) {
  auto ctx = parse_spec(
      "specification C [a, b, c] : noexit behaviour stop where "
      "process P1 [x, y] : noexit := x; y; stop endproc "
      "process P2 [x, y] : noexit := x; y; stop endproc endspec");
  ASSERT_TRUE(ctx.ok());
  auto r = parse_behavior("hide b in P1[a,b] |[b]| P2[b,c]", *ctx);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r, hide({"b"}, par(inst("P1", {"a", "b"}), SyncSet::on({"b"}), inst("P2", {"b", "c"}))));
}

TEST(ParseBehavior, Enable) {
  auto r = parse_behavior("exit >> stop");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r, seq(exit_(), stop()));
}

TEST(ParseBehavior, PrefixBindsTighterThanChoice) {
  auto r = parse_behavior("a; b; stop [] c; stop");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r, choice(prefix("a", prefix("b", stop())), prefix("c", stop())));
}

TEST(ParseBehavior, PrecedenceLadder) {
  // hide < >> < [> < parallel < [] < ;
  auto r = parse_behavior("a; stop [] b; stop ||| c; stop [> d; stop >> e; stop");
  ASSERT_TRUE(r.ok());
  auto expected = seq(disrupt(par(choice(prefix("a", stop()), prefix("b", stop())), SyncSet::interleave(),
                                  prefix("c", stop())),
                              prefix("d", stop())),
                      prefix("e", stop()));
  EXPECT_EQ(*r, expected);
  auto l = parse_behavior("a; stop ||| b; stop || c; stop");
  ASSERT_TRUE(l.ok());
  EXPECT_EQ(*l, par(par(prefix("a", stop()), SyncSet::interleave(), prefix("b", stop())), SyncSet::all(),
                    prefix("c", stop())));
}

TEST(ParseBehavior, OffersResolveAgainstContext) {
  auto ctx = oracle::spec_of("stop", "", "S = {v, w}");
  auto r = parse_behavior("a ?x:S; b !x; c !v; stop", ctx);
  ASSERT_TRUE(r.ok());
  const auto* p1 = as<Prefix>(*r);
  const auto* p2 = as<Prefix>(p1->rest);
  const auto* p3 = as<Prefix>(p2->rest);
  EXPECT_EQ(std::get<ReceiveOffer>(p1->action.offers[0]).sort, "S");
  EXPECT_EQ(std::get<SendOffer>(p2->action.offers[0]).kind, SendOffer::Kind::variable);
  EXPECT_EQ(std::get<SendOffer>(p3->action.offers[0]).kind, SendOffer::Kind::value);
  auto bad = parse_behavior("a; b !x; stop", ctx);
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(bad.diagnostics.front().code, code::unbound_variable);
}

TEST(RoundTrip, CorpusSpecifications) {
  for (const char* f : {"client_server.lot", "multicast.lot", "observer.lot", "deadlocked.lot",
                        "mutations/multicast_unordered.lot"}) {
    auto spec = oracle::load(f);
    auto again = parse_spec(to_string(spec));
    ASSERT_TRUE(again.ok()) << f << "\n" << to_string(spec);
    EXPECT_EQ(*again, spec) << f;
    EXPECT_EQ(to_string(*again), to_string(spec)) << f;
  }
}

TEST(RoundTrip, PrinterUsesMinimalParentheses) {
  EXPECT_EQ(to_string(*parse_behavior("(a; stop [] b; stop) ||| c; stop")), "a; stop [] b; stop ||| c; stop");
  EXPECT_EQ(to_string(*parse_behavior("a; (b; stop [] c; stop)")), "a; (b; stop [] c; stop)");
  EXPECT_EQ(to_string(*parse_behavior("a; stop ||| (b; stop ||| c; stop)")), "a; stop ||| (b; stop ||| c; stop)");
}

TEST(Validate, ObserverIsClean) { EXPECT_TRUE(validate_spec(oracle::load("observer.lot")).empty()); }

TEST(Validate, UnboundVariable) {
  auto r = parse_spec_unchecked(
      "specification S [a] : noexit sorts B = {t} behaviour P[a] where "
      "process P [g] : noexit := g !x; stop endproc endspec");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(codes(validate_spec(*r)), std::vector<std::string>{code::unbound_variable});
}

TEST(Validate, ArityMismatch) {
  auto r = parse_spec_unchecked(
      "specification S [a, b, c] : noexit behaviour P[a, b, c] where "
      "process P [x, y] : noexit := x; stop endproc endspec");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(codes(validate_spec(*r)), std::vector<std::string>{code::arity});
}

TEST(Validate, OneDiagnosticPerViolation) {
  auto r = parse_spec_unchecked(
      "specification S [a] : noexit sorts B = {t} behaviour b; Q[a] ||| c !y; stop where "
      "process P [g, g] : noexit := g; stop endproc endspec");
  ASSERT_TRUE(r.ok());
  auto cs = codes(validate_spec(*r));
  std::sort(cs.begin(), cs.end());
  std::vector<std::string> expected{code::duplicate, code::unbound_variable, code::unknown_gate, code::unknown_gate,
                                    code::unknown_process};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(cs, expected);
}

TEST(ParseAsc, EmptyContract) {
  auto r = parse_asc("component X where sc { } ic { } bc none end");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->name, "X");
  EXPECT_TRUE(r->sc.conjuncts.empty());
  EXPECT_EQ(r->ic, contracts::InterfaceContract{});
  EXPECT_FALSE(r->bc);
  EXPECT_FALSE(r->assertion);
}

TEST(ParseAsc, ObserverContract) {
  auto r = parse_asc(*read_text_file(oracle::corpus("observer.asc")));
  ASSERT_TRUE(r.ok()) << r.diagnostics.front();
  std::set<std::string> im;
  for (const auto& m : r->ic.in_messages) im.insert(m.message);
  EXPECT_EQ(im, (std::set<std::string>{"attach", "detach", "getstate", "setstate", "update", "notify", "change"}));
  EXPECT_EQ(r->ic.processes.size(), 3u);
  EXPECT_EQ(r->ic.in_ports.size(), 4u);
  EXPECT_EQ(r->ic.out_ports.size(), 3u);
  EXPECT_EQ(r->ic.external_in, std::vector<std::string>{"change"});
  ASSERT_TRUE(r->bc);
  EXPECT_EQ(r->bc->spec_name, "Observer");
  EXPECT_EQ(r->bc->path, "observer.lot");
  ASSERT_TRUE(r->assertion);
  EXPECT_EQ(r->sc.exists_vars, (std::vector<std::string>{"s", "o"}));
  EXPECT_EQ(r->sc.conjuncts.size(), 3u);
  EXPECT_TRUE(r->sc.conjuncts[2].args[0].variable);
}

TEST(ParseAsc, MisspelledPredicate) {
  auto r = parse_asc("component X where sc { exists a : Inherits(a, B) } end");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.front().code, code::unknown_predicate);
  EXPECT_EQ(r.diagnostics.front().location.column, 35u);
}

TEST(ParseAsc, PredicateArityAndGroundTerms) {
  auto r = parse_asc("component X where sc { inherit(A) } end");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.front().code, code::predicate_arity);
  auto g = parse_asc("component X where sc { exists x : inherit(Subject, x) & class(x) } end");
  ASSERT_TRUE(g.ok());
  EXPECT_FALSE(g->sc.conjuncts[0].args[0].variable);
  EXPECT_TRUE(g->sc.conjuncts[0].args[1].variable);
}

TEST(ParseAsc, MalformedInterface) {
  for (std::string ic : {"ic { in_ports { p } }", "ic { ports { p : P } }", "ic { flows { a - b } }",
                         "ic { processes { P } processes { Q } }", "ic { in_msgs { m : } }"}) {
    auto r = parse_asc("component X where " + ic + " end");
    ASSERT_FALSE(r.ok()) << ic;
    EXPECT_EQ(r.diagnostics.front().code, code::malformed_ic) << ic;
  }
  auto dup = parse_asc("component X where sc { } sc { } end");
  ASSERT_FALSE(dup.ok());
  EXPECT_EQ(dup.diagnostics.front().code, code::syntax);
}

TEST(ParseAdl, ClientServerConfiguration) {
  auto r = parse_adl_unresolved(*read_text_file(oracle::corpus("client_server.adl")));
  ASSERT_TRUE(r.ok()) << r.diagnostics.front();
  EXPECT_EQ(r->config.name, "ClientServer");
  ASSERT_TRUE(r->use_path);
  EXPECT_EQ(*r->use_path, "client_server.lot");
  ASSERT_EQ(r->config.elements.size(), 3u);
  EXPECT_EQ(r->config.elements[2].kind, adl::ElementKind::connector);
  EXPECT_EQ(r->config.elements[2].process, "Connector");
}

TEST(ParseAdl, CompositionRestrictedToParallelAndHide) {
  std::string head = "configuration C components { x = P[a] y = P[a] } connectors { k = Q[a] } composition { ";
  EXPECT_TRUE(parse_adl_unresolved(head + "hide a in x |[a]| k |[a]| y } end").ok());
  for (std::string bad : {"x [] y", "x >> y", "a; x", "x[a] ||| y"}) {
    auto r = parse_adl_unresolved(head + bad + " } end");
    EXPECT_FALSE(r.ok()) << bad;
  }
}

TEST(ParseAdl, MissingUseFile) {
  auto r = parse_adl("configuration C use \"nowhere.lot\" components { } connectors { } composition { x } end",
                     LOTOSADL_CORPUS_DIR);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.front().code, code::io);
}
