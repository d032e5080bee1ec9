#include "fpd/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace fpd {

namespace {

struct Token {
    std::string text;
    int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

double suffix_multiplier(char c) {
    switch (c) {
        case 'f': return 1e-15;
        case 'p': return 1e-12;
        case 'n': return 1e-9;
        case 'u': return 1e-6;
        case 'm': return 1e-3;
        case 'k': return 1e3;
        case 'M': return 1e6;
        case 'G': return 1e9;
        default: return 0.0;
    }
}

double parse_value(const Token& tok, int line) {
    const std::string& s = tok.text;
    const char* begin = s.data();
    const char* end = begin + s.size();
    if (begin != end && *begin == '+') ++begin;  // from_chars rejects a leading +
    double v = 0.0;
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr == begin)
        throw ParseError("bad numeric value '" + s + "'", line, tok.column);
    if (res.ptr != end) {
        if (res.ptr + 1 != end)
            throw ParseError("trailing characters after value '" + s + "'", line, tok.column);
        const double mult = suffix_multiplier(*res.ptr);
        if (mult == 0.0)
            throw ParseError(std::string("unknown engineering suffix '") + *res.ptr + "' in '" + s + "'",
                             line, tok.column);
        v *= mult;
    }
    if (!std::isfinite(v))
        throw ParseError("value '" + s + "' is not finite", line, tok.column);
    return v;
}

int parse_node(const Token& tok, int line) {
    const std::string& s = tok.text;
    int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 0)
        throw ParseError("node must be a nonnegative integer, got '" + s + "'", line, tok.column);
    return v;
}

bool valid_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Inductor reference token "L<name>" (kind letter case-insensitive).
std::string parse_inductor_ref(const Token& tok, int line) {
    const std::string& s = tok.text;
    if (s.size() < 2 || (s[0] != 'L' && s[0] != 'l') || !valid_name(s.substr(1)))
        throw ParseError("expected an inductor reference like L1, got '" + s + "'", line, tok.column);
    return s.substr(1);
}

char kind_letter(ElementKind k) {
    switch (k) {
        case ElementKind::R: return 'R';
        case ElementKind::L: return 'L';
        case ElementKind::C: return 'C';
        case ElementKind::K: return 'K';
        case ElementKind::J: return 'J';
        case ElementKind::P: return 'P';
    }
    return '?';
}

std::string format_value(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct DisjointSet {
    std::map<int, int> parent;

    int find(int x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        int root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            int next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }

    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

const Element* Netlist::find(ElementKind kind, const std::string& name) const {
    for (const Element& el : elements)
        if (el.kind == kind && el.name == name) return &el;
    return nullptr;
}

std::vector<const Element*> Netlist::ports_sorted() const {
    std::vector<const Element*> ports;
    for (const Element& el : elements)
        if (el.kind == ElementKind::P) ports.push_back(&el);
    std::sort(ports.begin(), ports.end(),
              [](const Element* a, const Element* b) { return a->port_index < b->port_index; });
    return ports;
}

void Netlist::validate() const {
    std::set<std::pair<char, std::string>> names;
    for (const Element& el : elements) {
        if (!valid_name(el.name))
            throw InvalidSpecError("element has an empty or malformed name");
        if (!names.insert({kind_letter(el.kind), el.name}).second)
            throw InvalidSpecError(std::string("duplicate element name ") + kind_letter(el.kind) + el.name);
        switch (el.kind) {
            case ElementKind::R:
            case ElementKind::L:
            case ElementKind::C:
                if (!(el.value > 0.0))
                    throw InvalidSpecError(std::string("element ") + kind_letter(el.kind) + el.name +
                                           " must have a positive value");
                break;
            case ElementKind::K:
                if (!(std::abs(el.value) < 1.0))
                    throw InvalidSpecError("mutual coupling K" + el.name + " needs |k| < 1");
                break;
            case ElementKind::J:
                if (!std::isfinite(el.value))
                    throw InvalidSpecError("inverter J" + el.name + " needs a finite value");
                break;
            case ElementKind::P:
                if (el.port_index < 1)
                    throw InvalidSpecError("port index must be a positive integer");
                if (el.n2 != 0)
                    throw InvalidSpecError("port P" + el.name + " must reference ground as its second node");
                if (el.n1 == 0)
                    throw InvalidSpecError("port P" + el.name + " must attach to a non-ground node");
                if (!(el.value > 0.0))
                    throw InvalidSpecError("port P" + el.name + " needs a positive reference impedance");
                break;
        }
        if (el.n1 < 0 || el.n2 < 0) throw InvalidSpecError("nodes must be nonnegative");
    }

    // Dangling K references.
    for (const Element& el : elements) {
        if (el.kind != ElementKind::K) continue;
        for (const std::string& ref : {el.ref_a, el.ref_b})
            if (!find(ElementKind::L, ref))
                throw InvalidSpecError("K" + el.name + " references missing inductor L" + ref);
    }

    // Ports: at least one, unique indices.
    std::set<int> port_indices;
    bool any_port = false;
    for (const Element& el : elements) {
        if (el.kind != ElementKind::P) continue;
        any_port = true;
        if (!port_indices.insert(el.port_index).second)
            throw InvalidSpecError("duplicate port index " + std::to_string(el.port_index));
    }
    if (!any_port) throw InvalidSpecError("netlist needs at least one port");

    // Every non-ground node must connect through elements to some port.
    // Ports tie their node to ground (the termination), so one component
    // containing ground and all ports must cover every node.
    DisjointSet ds;
    ds.find(0);
    std::set<int> nodes;
    for (const Element& el : elements) {
        if (el.kind == ElementKind::K) continue;
        nodes.insert(el.n1);
        nodes.insert(el.n2);
        ds.unite(el.n1, el.n2);
    }
    std::set<int> port_roots;
    for (const Element& el : elements)
        if (el.kind == ElementKind::P) port_roots.insert(ds.find(el.n1));
    for (int node : nodes) {
        if (node == 0) continue;
        if (!port_roots.count(ds.find(node)))
            throw InvalidSpecError("node " + std::to_string(node) + " is not reachable from any port");
    }
}

Netlist parse_netlist(const std::string& text) {
    Netlist net;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::set<std::pair<char, std::string>> names;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty() || tokens.front().text[0] == '*') continue;

        const Token& head = tokens.front();
        const char kc = static_cast<char>(std::toupper(static_cast<unsigned char>(head.text[0])));
        ElementKind kind;
        switch (kc) {
            case 'R': kind = ElementKind::R; break;
            case 'L': kind = ElementKind::L; break;
            case 'C': kind = ElementKind::C; break;
            case 'K': kind = ElementKind::K; break;
            case 'J': kind = ElementKind::J; break;
            case 'P': kind = ElementKind::P; break;
            default:
                throw ParseError(std::string("unknown element kind '") + head.text[0] + "'",
                                 lineno, head.column);
        }

        Element el;
        el.kind = kind;
        el.name = head.text.substr(1);
        if (!valid_name(el.name))
            throw ParseError("element needs a name after the kind letter, got '" + head.text + "'",
                             lineno, head.column);
        if (!names.insert({kc, el.name}).second)
            throw ParseError(std::string("duplicate element name ") + kc + el.name, lineno, head.column);

        if (tokens.size() != 4)
            throw ParseError("expected 4 fields, got " + std::to_string(tokens.size()), lineno,
                             head.column);

        if (kind == ElementKind::K) {
            el.ref_a = parse_inductor_ref(tokens[1], lineno);
            el.ref_b = parse_inductor_ref(tokens[2], lineno);
            el.value = parse_value(tokens[3], lineno);
            if (!(std::abs(el.value) < 1.0))
                throw ParseError("coupling coefficient must satisfy |k| < 1", lineno, tokens[3].column);
        } else {
            el.n1 = parse_node(tokens[1], lineno);
            el.n2 = parse_node(tokens[2], lineno);
            el.value = parse_value(tokens[3], lineno);
            switch (kind) {
                case ElementKind::R:
                case ElementKind::L:
                case ElementKind::C:
                    if (!(el.value > 0.0))
                        throw ParseError(std::string(1, kc) + el.name + " must have a positive value",
                                         lineno, tokens[3].column);
                    break;
                case ElementKind::P: {
                    int idx = 0;
                    auto res = std::from_chars(el.name.data(), el.name.data() + el.name.size(), idx);
                    if (res.ec != std::errc() || res.ptr != el.name.data() + el.name.size() || idx < 1)
                        throw ParseError("port index must be a positive integer, got '" + el.name + "'",
                                         lineno, head.column);
                    el.port_index = idx;
                    if (el.n2 != 0)
                        throw ParseError("port second node must be ground (0)", lineno, tokens[2].column);
                    if (!(el.value > 0.0))
                        throw ParseError("port reference impedance must be positive", lineno,
                                         tokens[3].column);
                    break;
                }
                default:
                    break;
            }
        }
        net.elements.push_back(std::move(el));
    }

    try {
        net.validate();
    } catch (const InvalidSpecError& e) {
        throw ParseError(e.what());
    }
    return net;
}

std::string serialize_netlist(const Netlist& net) {
    std::string out;
    for (const Element& el : net.elements) {
        out += kind_letter(el.kind);
        out += el.name;
        if (el.kind == ElementKind::K) {
            out += " L" + el.ref_a + " L" + el.ref_b;
        } else {
            out += ' ' + std::to_string(el.n1) + ' ' + std::to_string(el.n2);
        }
        out += ' ' + format_value(el.value) + '\n';
    }
    return out;
}

Netlist coupling_to_netlist(const CouplingNetwork& net, double c0, double z0) {
    net.validate();
    if (!(c0 > 0.0)) throw InvalidSpecError("c0 must be positive");
    if (!(z0 > 0.0)) throw InvalidSpecError("z0 must be positive");

    const double w0 = 2.0 * std::numbers::pi * net.f0;
    const double l0 = 1.0 / (w0 * w0 * c0);

    // Resonator e sits on node e+1; port p gets its own node n+1+p.
    Netlist out;
    for (int e = 0; e < net.n; ++e) {
        Element cap{ElementKind::C, std::to_string(e + 1), e + 1, 0, c0, "", "", 0};
        Element ind{ElementKind::L, std::to_string(e + 1), e + 1, 0, l0, "", "", 0};
        out.elements.push_back(cap);
        out.elements.push_back(ind);
    }
    for (int i = 0; i < net.n; ++i) {
        for (int j = i + 1; j < net.n; ++j) {
            if (net.m(i, j) == 0.0) continue;
            Element inv{ElementKind::J,
                        std::to_string(i + 1) + "_" + std::to_string(j + 1),
                        i + 1,
                        j + 1,
                        net.m(i, j) * w0 * c0,
                        "",
                        "",
                        0};
            out.elements.push_back(inv);
        }
    }
    for (int p = 0; p < net.port_count(); ++p) {
        const PortLoad& load = net.ports[p];
        const double qe = 1.0 / (load.r * net.fbw);
        const double j0 = std::sqrt(w0 * c0 / (qe * z0));
        const int port_node = net.n + 1 + p;
        Element inv{ElementKind::J, "P" + std::to_string(p + 1),
                    port_node, load.resonator + 1, j0, "", "", 0};
        Element port{ElementKind::P, std::to_string(p + 1), port_node, 0, z0, "", "", p + 1};
        out.elements.push_back(inv);
        out.elements.push_back(port);
    }
    out.validate();
    return out;
}

}  // namespace fpd
