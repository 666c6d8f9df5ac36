#pragma once

// Interface contract IC = (P, IP, OP, IM, OM, IMI): processes, input and
// output ports owned by processes, messages received on input ports,
// messages emitted on output ports, and messages arriving from outside the
// component.
//
// Constraints, checked per component:
//   C1  input port ids are pairwise distinct
//   C2  output port ids are pairwise distinct
//   C3  every message in IM is emitted by some OM entry or listed in IMI
//   C4  every message in OM is consumed by some IM entry
// Structural invariants of the tuple are reported under their own codes:
//   IC-OWNER  a port's owning process is not in P
//   IC-PORT   a message or flow names a port that is not declared

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lotos::contracts {

struct Port {
  std::string id;
  std::string process;
  bool operator==(const Port&) const = default;
};

struct PortMessage {
  std::string message;
  std::string port;
  bool operator==(const PortMessage&) const = default;
};

// Optional declared wiring from an output port to an input port.
struct Flow {
  std::string from;
  std::string to;
  bool operator==(const Flow&) const = default;
};

struct InterfaceContract {
  std::vector<std::string> processes;     // P
  std::vector<Port> in_ports;             // IP
  std::vector<Port> out_ports;            // OP
  std::vector<PortMessage> in_messages;   // IM
  std::vector<PortMessage> out_messages;  // OM
  std::vector<std::string> external_in;   // IMI
  std::vector<Flow> flows;

  bool operator==(const InterfaceContract&) const = default;
};

namespace violation {
inline constexpr const char* c1 = "C1";
inline constexpr const char* c2 = "C2";
inline constexpr const char* c3 = "C3";
inline constexpr const char* c4 = "C4";
inline constexpr const char* owner = "IC-OWNER";
inline constexpr const char* port = "IC-PORT";
}  // namespace violation

struct Violation {
  std::string constraint;
  std::vector<std::string> elements;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

namespace detail {

inline std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
  return s;
}

inline void unique_ports(const std::vector<Port>& ports, const char* code, const char* what,
                         std::vector<Violation>& out) {
  std::map<std::string, std::vector<std::string>> owners;
  for (const auto& p : ports) owners[p.id].push_back(p.process);
  for (auto& [id, procs] : owners) {
    if (procs.size() < 2) continue;
    std::sort(procs.begin(), procs.end());
    out.push_back({code, {id},
                   std::string(what) + " port '" + id + "' declared " + std::to_string(procs.size()) +
                       " times (owners: " + join(procs) + ")"});
  }
}

}  // namespace detail

// Violations in constraint order (C1, C2, C3, C4, IC-OWNER, IC-PORT), each
// group sorted by its elements. The result does not depend on the order of
// entries inside the contract.
inline std::vector<Violation> check_interface(const InterfaceContract& ic) {
  std::vector<Violation> out;
  detail::unique_ports(ic.in_ports, violation::c1, "input", out);
  detail::unique_ports(ic.out_ports, violation::c2, "output", out);

  std::set<std::string> received, emitted, external(ic.external_in.begin(), ic.external_in.end());
  for (const auto& m : ic.in_messages) received.insert(m.message);
  for (const auto& m : ic.out_messages) emitted.insert(m.message);
  for (const auto& m : received)
    if (!emitted.count(m) && !external.count(m))
      out.push_back({violation::c3, {m}, "input message '" + m + "' is neither emitted inside the component nor external"});
  for (const auto& m : emitted)
    if (!received.count(m))
      out.push_back({violation::c4, {m}, "output message '" + m + "' is consumed by no input port"});

  std::set<std::string> procs(ic.processes.begin(), ic.processes.end());
  std::set<std::pair<std::string, std::string>> bad_owner;
  for (const auto* ports : {&ic.in_ports, &ic.out_ports})
    for (const auto& p : *ports)
      if (!procs.count(p.process)) bad_owner.emplace(p.id, p.process);
  for (const auto& [id, proc] : bad_owner)
    out.push_back({violation::owner, {id, proc}, "port '" + id + "' is owned by undeclared process '" + proc + "'"});

  std::set<std::string> in_ids, out_ids;
  for (const auto& p : ic.in_ports) in_ids.insert(p.id);
  for (const auto& p : ic.out_ports) out_ids.insert(p.id);
  std::set<std::vector<std::string>> bad_port;
  for (const auto& m : ic.in_messages)
    if (!in_ids.count(m.port)) bad_port.insert({m.port, m.message});
  for (const auto& m : ic.out_messages)
    if (!out_ids.count(m.port)) bad_port.insert({m.port, m.message});
  for (const auto& f : ic.flows) {
    if (!out_ids.count(f.from)) bad_port.insert({f.from, f.from + "->" + f.to});
    if (!in_ids.count(f.to)) bad_port.insert({f.to, f.from + "->" + f.to});
  }
  for (const auto& e : bad_port)
    out.push_back({violation::port, e, "undeclared port '" + e[0] + "' referenced by '" + e[1] + "'"});
  return out;
}

}  // namespace lotos::contracts
