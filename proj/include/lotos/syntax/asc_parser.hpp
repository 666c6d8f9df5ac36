#pragma once

// `.asc` contract files:
//
//   component <Name> where
//     assert { <free text> }                       optional, stored verbatim
//     sc { [exists v1, ..., vn :] atom {and atom} }  optional; '&' also joins
//     ic {                                          optional; every section optional
//       processes   { p, ... }
//       in_ports    { port : process, ... }
//       out_ports   { port : process, ... }
//       in_msgs     { message : port, ... }
//       out_msgs    { message : port, ... }
//       external_in { message, ... }
//       flows       { out_port -> in_port, ... }
//     }
//     bc <SpecName> from "<path>.lot" | bc none     optional
//   end
//
// Sections may appear in any order, each at most once. In `sc`, identifiers
// listed after `exists` are variables; all others are ground terms.

#include <string>
#include <string_view>

#include "lotos/contracts/contract.hpp"
#include "lotos/syntax/parser_base.hpp"

namespace lotos::syntax {

namespace detail {

class AscParser : public ParserBase {
 public:
  using ParserBase::ParserBase;
  using ParserBase::collect_diagnostics;

  contracts::AscContract contract() {
    contracts::AscContract c;
    expect_keyword("component");
    c.name = expect_ident("component name");
    expect_keyword("where");
    bool seen_assert = false, seen_sc = false, seen_ic = false, seen_bc = false;
    auto once = [&](bool& flag, const Token& at) {
      if (flag) fail(at, "duplicate '" + at.text + "' section");
      flag = true;
    };
    for (;;) {
      const Token t = peek();
      if (t.is_keyword("end")) {
        take();
        break;
      }
      if (t.is_keyword("assert")) {
        once(seen_assert, t);
        take();
        expect_punct('{');
        std::string text;
        if (!lex_.raw_block(text)) fail(t, "unterminated assert block");
        c.assertion = trim(text);
      } else if (t.is_keyword("sc")) {
        once(seen_sc, t);
        take();
        c.sc = query();
      } else if (t.is_keyword("ic")) {
        once(seen_ic, t);
        take();
        c.ic = interface();
      } else if (t.is_keyword("bc")) {
        once(seen_bc, t);
        take();
        if (!accept_keyword("none")) {
          contracts::BehaviorRef ref;
          ref.spec_name = expect_ident("specification name");
          expect_keyword("from");
          if (peek().kind != TokenKind::string) fail_expected("quoted .lot path");
          ref.path = take().text;
          c.bc = ref;
        }
      } else {
        fail_expected("'assert', 'sc', 'ic', 'bc' or 'end'");
      }
    }
    if (peek().kind != TokenKind::end) fail_expected("end of input");
    return c;
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
  }

  contracts::Query query() {
    contracts::Query q;
    expect_punct('{');
    if (accept_punct('}')) return q;
    if (accept_keyword("exists")) {
      q.exists_vars = ident_list("variable");
      expect_punct(':');
    }
    do {
      q.conjuncts.push_back(atom(q.exists_vars));
    } while (accept_keyword("and") || accept_punct('&'));
    expect_punct('}');
    return q;
  }

  contracts::Atom atom(const std::vector<std::string>& vars) {
    Token head = peek();
    contracts::Atom a;
    a.predicate = expect_ident("predicate");
    auto arity = contracts::predicate_arity(a.predicate);
    if (!arity) fail(head, "unknown predicate '" + a.predicate + "'", code::unknown_predicate);
    expect_punct('(');
    for (const auto& n : ident_list("term")) {
      bool is_var = std::find(vars.begin(), vars.end(), n) != vars.end();
      a.args.push_back(is_var ? contracts::Term::var(n) : contracts::Term::ground(n));
    }
    expect_punct(')');
    if (a.args.size() != *arity)
      fail(head, "predicate '" + a.predicate + "' takes " + std::to_string(*arity) + " argument(s), got " +
                     std::to_string(a.args.size()),
           code::predicate_arity);
    return a;
  }

  [[noreturn]] void malformed(const std::string& msg) { fail(peek(), msg, code::malformed_ic); }

  std::string ic_ident(const std::string& what) {
    if (!peek().is_ident()) malformed("expected " + what + " in ic section");
    return take().text;
  }

  void ic_expect(char c, const std::string& context) {
    if (!accept_punct(c)) malformed(std::string("expected '") + c + "' in " + context);
  }

  template <typename Entry>
  void entries(const std::string& section, Entry entry) {
    ic_expect('{', section);
    if (accept_punct('}')) return;
    do {
      entry();
    } while (accept_punct(','));
    ic_expect('}', section);
  }

  contracts::InterfaceContract interface() {
    contracts::InterfaceContract ic;
    ic_expect('{', "ic");
    std::vector<std::string> seen;
    while (!accept_punct('}')) {
      if (!peek().is_ident()) malformed("expected an ic section name or '}'");
      Token t = take();
      std::string name = t.text;
      if (std::find(seen.begin(), seen.end(), name) != seen.end())
        fail(t, "duplicate ic section '" + name + "'", code::malformed_ic);
      seen.push_back(name);
      auto owned = [&](std::vector<contracts::Port>& out) {
        entries(name, [&] {
          contracts::Port p;
          p.id = ic_ident("port id");
          ic_expect(':', name);
          p.process = ic_ident("owning process");
          out.push_back(p);
        });
      };
      auto carried = [&](std::vector<contracts::PortMessage>& out) {
        entries(name, [&] {
          contracts::PortMessage m;
          m.message = ic_ident("message id");
          ic_expect(':', name);
          m.port = ic_ident("port id");
          out.push_back(m);
        });
      };
      if (name == "processes")
        entries(name, [&] { ic.processes.push_back(ic_ident("process name")); });
      else if (name == "in_ports")
        owned(ic.in_ports);
      else if (name == "out_ports")
        owned(ic.out_ports);
      else if (name == "in_msgs")
        carried(ic.in_messages);
      else if (name == "out_msgs")
        carried(ic.out_messages);
      else if (name == "external_in")
        entries(name, [&] { ic.external_in.push_back(ic_ident("message id")); });
      else if (name == "flows")
        entries(name, [&] {
          contracts::Flow f;
          f.from = ic_ident("output port");
          ic_expect('-', name);
          ic_expect('>', name);
          f.to = ic_ident("input port");
          ic.flows.push_back(f);
        });
      else
        fail(t, "unknown ic section '" + name + "'", code::malformed_ic);
    }
    return ic;
  }
};

}  // namespace detail

inline ParseResult<contracts::AscContract> parse_asc(std::string_view text) {
  detail::AscParser p(text);
  ParseResult<contracts::AscContract> r;
  try {
    auto c = p.contract();
    r.diagnostics = p.collect_diagnostics();
    if (!has_errors(r.diagnostics)) r.value = std::move(c);
  } catch (const ParseAbort&) {
    r.diagnostics = p.collect_diagnostics();
  }
  return r;
}

}  // namespace lotos::syntax
