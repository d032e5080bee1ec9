#pragma once

#include <string>
#include <vector>

#include "fpd/coupling.hpp"

namespace fpd {

enum class ElementKind { R, L, C, K, J, P };

// One netlist element. Node 0 is ground. value is ohms (R), henries (L),
// farads (C), the coupling coefficient (K), siemens (J), or the port
// reference impedance (P). K stores the names of its two inductors (without
// the leading L) in ref_a/ref_b and uses no nodes of its own.
struct Element {
    ElementKind kind = ElementKind::R;
    std::string name;
    int n1 = 0;
    int n2 = 0;
    double value = 0.0;
    std::string ref_a;
    std::string ref_b;
    int port_index = 0;  // P only, 1-based
};

struct Netlist {
    std::vector<Element> elements;

    const Element* find(ElementKind kind, const std::string& name) const;
    // Ports in ascending port_index order; validate() guarantees uniqueness.
    std::vector<const Element*> ports_sorted() const;
    void validate() const;
};

// Parses the element-per-line grammar:
//   R<name> n1 n2 <value>  |  L<name> n1 n2 <value>  |  C<name> n1 n2 <value>
//   K<name> L<a> L<b> <k>  |  J<name> n1 n2 <value_S>
//   P<index> n1 0 <z0>
// Kind letters are case-insensitive, '*' starts a comment line, values accept
// scientific notation and the suffixes f p n u m k M G. Throws ParseError
// with line/column on malformed input and on violated netlist invariants.
Netlist parse_netlist(const std::string& text);

// Canonical text form; parse(serialize(x)) reproduces x exactly (values are
// written with shortest round-trip precision and no suffixes).
std::string serialize_netlist(const Netlist& net);

// Narrowband lumped realization of a coupling network: per resonator a shunt
// c0 || l0 = 1/(w0^2 c0) tank to ground, per coupling k_ij an ideal inverter
// J = k_ij*w0*c0 between tank nodes, per port an inverter
// J = sqrt(w0*c0/(Qe*z0)) from the tank to a z0 port.
Netlist coupling_to_netlist(const CouplingNetwork& net, double c0, double z0 = 50.0);

}  // namespace fpd
