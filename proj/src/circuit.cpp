#include "dicke/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dicke {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void require_finite(double angle) {
    require(std::isfinite(angle), "gate angle must be finite");
}

void require_distinct(std::initializer_list<int> qs) {
    std::vector<int> v(qs);
    std::sort(v.begin(), v.end());
    require(std::adjacent_find(v.begin(), v.end()) == v.end(),
            "gate qubit indices must be distinct");
}

}  // namespace

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::PauliX: return "x";
        case GateKind::RotY: return "ry";
        case GateKind::Phase: return "phase";
        case GateKind::ControlledNot: return "cx";
        case GateKind::ControlledRotY: return "cry";
        case GateKind::Toffoli: return "ccx";
        case GateKind::ControlledSwap: return "cswap";
    }
    return "?";
}

int Gate::arity() const {
    switch (kind) {
        case GateKind::PauliX:
        case GateKind::RotY:
        case GateKind::Phase: return 1;
        case GateKind::ControlledNot:
        case GateKind::ControlledRotY: return 2;
        case GateKind::Toffoli:
        case GateKind::ControlledSwap: return 3;
    }
    return 0;
}

Gate Gate::x(int target) {
    return Gate{GateKind::PauliX, {target, -1, -1}, 0.0};
}

Gate Gate::ry(int target, double angle) {
    require_finite(angle);
    return Gate{GateKind::RotY, {target, -1, -1}, angle};
}

Gate Gate::phase(int target, double angle) {
    require_finite(angle);
    return Gate{GateKind::Phase, {target, -1, -1}, angle};
}

Gate Gate::cx(int control, int target) {
    require_distinct({control, target});
    return Gate{GateKind::ControlledNot, {control, target, -1}, 0.0};
}

Gate Gate::cry(int control, int target, double angle) {
    require_distinct({control, target});
    require_finite(angle);
    return Gate{GateKind::ControlledRotY, {control, target, -1}, angle};
}

Gate Gate::ccx(int control1, int control2, int target) {
    require_distinct({control1, control2, target});
    return Gate{GateKind::Toffoli, {control1, control2, target}, 0.0};
}

Gate Gate::cswap(int control, int swap1, int swap2) {
    require_distinct({control, swap1, swap2});
    return Gate{GateKind::ControlledSwap, {control, swap1, swap2}, 0.0};
}

Circuit::Circuit(int n, std::string lbl) : qubit_count(n), label(std::move(lbl)) {
    require(n >= 0, "qubit_count must be non-negative");
}

void Circuit::append(const Gate& g) {
    for (int i = 0; i < g.arity(); ++i) {
        require(g.q[i] >= 0 && g.q[i] < qubit_count,
                "gate qubit index out of range");
    }
    gates.push_back(g);
}

void Circuit::append(const Circuit& other) {
    require(other.qubit_count <= qubit_count,
            "cannot concatenate a wider circuit");
    for (const Gate& g : other.gates) append(g);
}

void Circuit::append_swap(int a, int b) {
    append(Gate::cx(a, b));
    append(Gate::cx(b, a));
    append(Gate::cx(a, b));
}

Topology Topology::all_to_all(int n) {
    require(n >= 1, "topology size must be positive");
    Topology t;
    t.kind = Kind::AllToAll;
    t.n = n;
    return t;
}

Topology Topology::path(int n) {
    require(n >= 1, "topology size must be positive");
    Topology t;
    t.kind = Kind::Path;
    t.n = n;
    return t;
}

Topology Topology::grid(int rows, int cols) {
    require(rows >= 1 && cols >= 1, "grid dimensions must be positive");
    Topology t;
    t.kind = Kind::Grid;
    t.rows = rows;
    t.cols = cols;
    t.n = rows * cols;
    return t;
}

int Topology::size() const { return n; }

bool Topology::adjacent(int a, int b) const {
    if (a == b || a < 0 || b < 0 || a >= n || b >= n) return false;
    switch (kind) {
        case Kind::AllToAll: return true;
        case Kind::Path: return std::abs(a - b) == 1;
        case Kind::Grid: {
            int ra = a / cols, ca = a % cols;
            int rb = b / cols, cb = b % cols;
            return std::abs(ra - rb) + std::abs(ca - cb) == 1;
        }
    }
    return false;
}

std::string Topology::name() const {
    switch (kind) {
        case Kind::AllToAll: return "all-to-all";
        case Kind::Path: return "path";
        case Kind::Grid:
            return "grid" + std::to_string(rows) + "x" + std::to_string(cols);
    }
    return "?";
}

int compute_depth(const Circuit& c) {
    std::vector<int> qubit_layer(c.qubit_count, 0);
    int depth = 0;
    for (const Gate& g : c.gates) {
        int layer = 0;
        for (int i = 0; i < g.arity(); ++i) layer = std::max(layer, qubit_layer[g.q[i]]);
        ++layer;
        for (int i = 0; i < g.arity(); ++i) qubit_layer[g.q[i]] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

namespace {

constexpr double kPi = std::numbers::pi;

// H = Ry(pi/2) * Z, exactly (no global phase).
void emit_h(Circuit& out, int q) {
    out.append(Gate::phase(q, kPi));
    out.append(Gate::ry(q, kPi / 2));
}

// CCZ as a parity walk: phase pi/4 on each of a,b,c, -pi/4 on the three
// pairwise parities, +pi/4 on the triple parity.
void emit_ccz_all_to_all(Circuit& out, int a, int b, int c) {
    const double t = kPi / 4;
    out.append(Gate::phase(a, t));
    out.append(Gate::phase(b, t));
    out.append(Gate::phase(c, t));
    out.append(Gate::cx(b, a));
    out.append(Gate::phase(a, -t));  // a^b
    out.append(Gate::cx(c, a));
    out.append(Gate::phase(a, t));   // a^b^c
    out.append(Gate::cx(b, a));
    out.append(Gate::phase(a, -t));  // a^c
    out.append(Gate::cx(c, a));
    out.append(Gate::cx(c, b));
    out.append(Gate::phase(b, -t));  // b^c
    out.append(Gate::cx(c, b));
}

// Same walk restricted to the two adjacent pairs of a path x - y - z; 8 CX.
void emit_ccz_path(Circuit& out, int x, int y, int z) {
    const double t = kPi / 4;
    out.append(Gate::phase(x, t));
    out.append(Gate::phase(y, t));
    out.append(Gate::phase(z, t));
    out.append(Gate::cx(y, x));
    out.append(Gate::phase(x, -t));  // x^y
    out.append(Gate::cx(z, y));
    out.append(Gate::phase(y, -t));  // y^z
    out.append(Gate::cx(y, x));
    out.append(Gate::phase(x, -t));  // x^z
    out.append(Gate::cx(z, y));
    out.append(Gate::cx(y, x));
    out.append(Gate::phase(x, t));   // x^y^z
    out.append(Gate::cx(z, y));
    out.append(Gate::cx(y, x));
    out.append(Gate::cx(z, y));
}

// Orders the support of a 3-qubit gate as a path x - y - z, or throws.
struct PathTriple {
    int x, y, z;
};

PathTriple order_as_path(const Gate& g, std::size_t index,
                         const Topology* topology) {
    int a = g.q[0], b = g.q[1], c = g.q[2];
    if (topology == nullptr) {
        std::array<int, 3> s{a, b, c};
        std::sort(s.begin(), s.end());
        if (s[1] != s[0] + 1 || s[2] != s[1] + 1) {
            throw std::invalid_argument(
                "topology-aware lowering: gate " + std::to_string(index) + " (" +
                gate_kind_name(g.kind) + ") does not act on a contiguous path segment");
        }
        return {s[0], s[1], s[2]};
    }
    std::array<int, 3> s{a, b, c};
    for (int mid = 0; mid < 3; ++mid) {
        int u = s[(mid + 1) % 3], v = s[(mid + 2) % 3];
        if (topology->adjacent(s[mid], u) && topology->adjacent(s[mid], v)) {
            return {u, s[mid], v};
        }
    }
    throw std::invalid_argument(
        "topology-aware lowering: gate " + std::to_string(index) + " (" +
        gate_kind_name(g.kind) + ") does not act on a contiguous path segment");
}

void lower_toffoli(Circuit& out, const Gate& g, std::size_t index,
                   bool topology_aware, const Topology* topology) {
    int target = g.q[2];
    emit_h(out, target);
    if (topology_aware) {
        PathTriple p = order_as_path(g, index, topology);
        emit_ccz_path(out, p.x, p.y, p.z);
    } else {
        emit_ccz_all_to_all(out, g.q[0], g.q[1], g.q[2]);
    }
    emit_h(out, target);
}

}  // namespace

Circuit lower_to_basis(const Circuit& c, bool topology_aware,
                       const Topology* topology) {
    Circuit out(c.qubit_count, c.label);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        switch (g.kind) {
            case GateKind::PauliX:
            case GateKind::RotY:
            case GateKind::Phase:
            case GateKind::ControlledNot:
                out.append(g);
                break;
            case GateKind::ControlledRotY:
                out.append(Gate::ry(g.q[1], g.angle / 2));
                out.append(Gate::cx(g.q[0], g.q[1]));
                out.append(Gate::ry(g.q[1], -g.angle / 2));
                out.append(Gate::cx(g.q[0], g.q[1]));
                break;
            case GateKind::Toffoli:
                lower_toffoli(out, g, i, topology_aware, topology);
                break;
            case GateKind::ControlledSwap: {
                // Fredkin = CX, Toffoli, CX.
                Gate toff = Gate::ccx(g.q[0], g.q[1], g.q[2]);
                out.append(Gate::cx(g.q[2], g.q[1]));
                lower_toffoli(out, toff, i, topology_aware, topology);
                out.append(Gate::cx(g.q[2], g.q[1]));
                break;
            }
        }
    }
    return out;
}

long long count_cnots(const Circuit& c) {
    Circuit lowered = lower_to_basis(c, false);
    long long count = 0;
    for (const Gate& g : lowered.gates) {
        if (g.kind == GateKind::ControlledNot) ++count;
    }
    return count;
}

Metrics compute_metrics(const Circuit& c) {
    Metrics m;
    m.depth = compute_depth(c);
    m.cnot_count = count_cnots(c);
    m.total_gates = static_cast<long long>(c.gates.size());
    for (const Gate& g : c.gates) ++m.histogram[g.kind];
    return m;
}

namespace {

// True when the vertex set of `g` carries a Hamiltonian path in `t`.
bool support_is_path(const Gate& g, const Topology& t) {
    int arity = g.arity();
    if (arity <= 1) return true;
    if (arity == 2) return t.adjacent(g.q[0], g.q[1]);
    for (int mid = 0; mid < 3; ++mid) {
        int u = g.q[(mid + 1) % 3], v = g.q[(mid + 2) % 3];
        if (t.adjacent(g.q[mid], u) && t.adjacent(g.q[mid], v)) return true;
    }
    return false;
}

Violation first_bad_pair(const Gate& g, const Topology& t, std::size_t index) {
    int arity = g.arity();
    for (int i = 0; i < arity; ++i) {
        for (int j = i + 1; j < arity; ++j) {
            if (!t.adjacent(g.q[i], g.q[j])) return {index, g.q[i], g.q[j]};
        }
    }
    return {index, g.q[0], g.q[1]};
}

}  // namespace

ValidationReport validate_connectivity(const Circuit& c, const Topology& t,
                                       ValidationMode mode) {
    if (c.qubit_count != t.size()) {
        throw std::invalid_argument("circuit size does not match topology size");
    }
    ValidationReport report;
    if (mode == ValidationMode::GateSupport) {
        for (std::size_t i = 0; i < c.gates.size(); ++i) {
            const Gate& g = c.gates[i];
            if (g.arity() >= 2 && !support_is_path(g, t)) {
                report.violations.push_back(first_bad_pair(g, t, i));
            }
        }
        return report;
    }
    Circuit lowered = lower_to_basis(c, true, &t);
    for (std::size_t i = 0; i < lowered.gates.size(); ++i) {
        const Gate& g = lowered.gates[i];
        if (g.arity() == 2 && !t.adjacent(g.q[0], g.q[1])) {
            report.violations.push_back({i, g.q[0], g.q[1]});
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string format_angle(double a) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

const char* kQasmPrelude =
    "gate x a { U(pi,0,pi) a; }\n"
    "gate ry(theta) a { U(theta,0,0) a; }\n"
    "gate phase(lambda) a { U(0,0,lambda) a; }\n"
    "gate cx c,t { CX c,t; }\n"
    "gate h a { U(pi/2,0,pi) a; }\n"
    "gate t a { U(0,0,pi/4) a; }\n"
    "gate tdg a { U(0,0,-pi/4) a; }\n"
    "gate cry(theta) c,t { ry(theta/2) t; cx c,t; ry(-theta/2) t; cx c,t; }\n"
    "gate ccx a,b,c { h c; cx b,c; tdg c; cx a,c; t c; cx b,c; tdg c; cx a,c;"
    " t b; t c; h c; cx a,b; t a; tdg b; cx a,b; }\n"
    "gate cswap c,a,b { cx b,a; ccx c,a,b; cx b,a; }\n";

}  // namespace

std::string to_qasm(const Circuit& c) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    if (!c.label.empty()) os << "// label: " << c.label << "\n";
    os << kQasmPrelude;
    os << "qreg q[" << c.qubit_count << "];\n";
    for (const Gate& g : c.gates) {
        os << gate_kind_name(g.kind);
        if (g.kind == GateKind::RotY || g.kind == GateKind::Phase ||
            g.kind == GateKind::ControlledRotY) {
            os << "(" << format_angle(g.angle) << ")";
        }
        os << " ";
        for (int i = 0; i < g.arity(); ++i) {
            if (i) os << ",";
            os << "q[" << g.q[i] << "]";
        }
        os << ";\n";
    }
    return os.str();
}

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Circuit circuit_from_qasm(const std::string& text) {
    Circuit c;
    std::istringstream is(text);
    std::string line;
    bool have_qreg = false;
    while (std::getline(is, line)) {
        std::string s = strip(line);
        if (s.empty() || s.rfind("OPENQASM", 0) == 0 || s.rfind("include", 0) == 0 ||
            s.rfind("gate ", 0) == 0) {
            continue;
        }
        if (s.rfind("// label: ", 0) == 0) {
            c.label = s.substr(10);
            continue;
        }
        if (s.rfind("//", 0) == 0) continue;
        if (s.rfind("qreg", 0) == 0) {
            auto lb = s.find('['), rb = s.find(']');
            require(lb != std::string::npos && rb != std::string::npos,
                    "malformed qreg");
            c.qubit_count = std::stoi(s.substr(lb + 1, rb - lb - 1));
            have_qreg = true;
            continue;
        }
        require(have_qreg, "qasm instruction before qreg");
        // name[(angle)] q[i](,q[j])* ;
        auto semi = s.find(';');
        require(semi != std::string::npos, "missing semicolon: " + s);
        s = strip(s.substr(0, semi));
        std::string name, angle_text;
        auto sp = s.find(' ');
        require(sp != std::string::npos, "malformed instruction: " + s);
        std::string head = s.substr(0, sp);
        auto lp = head.find('(');
        if (lp != std::string::npos) {
            auto rp = head.rfind(')');
            require(rp != std::string::npos && rp > lp, "malformed angle: " + s);
            name = head.substr(0, lp);
            angle_text = head.substr(lp + 1, rp - lp - 1);
        } else {
            name = head;
        }
        std::vector<int> qubits;
        std::string rest = s.substr(sp + 1);
        std::size_t pos = 0;
        while ((pos = rest.find("q[", pos)) != std::string::npos) {
            auto rb = rest.find(']', pos);
            require(rb != std::string::npos, "malformed operand: " + s);
            qubits.push_back(std::stoi(rest.substr(pos + 2, rb - pos - 2)));
            pos = rb + 1;
        }
        double angle = angle_text.empty() ? 0.0 : std::stod(angle_text);
        if (name == "x") {
            c.append(Gate::x(qubits.at(0)));
        } else if (name == "ry") {
            c.append(Gate::ry(qubits.at(0), angle));
        } else if (name == "phase") {
            c.append(Gate::phase(qubits.at(0), angle));
        } else if (name == "cx") {
            c.append(Gate::cx(qubits.at(0), qubits.at(1)));
        } else if (name == "cry") {
            c.append(Gate::cry(qubits.at(0), qubits.at(1), angle));
        } else if (name == "ccx") {
            c.append(Gate::ccx(qubits.at(0), qubits.at(1), qubits.at(2)));
        } else if (name == "cswap") {
            c.append(Gate::cswap(qubits.at(0), qubits.at(1), qubits.at(2)));
        } else {
            throw std::invalid_argument("unknown qasm gate: " + name);
        }
    }
    return c;
}

std::string to_json_string(const Circuit& c) {
    nlohmann::json j;
    j["qubit_count"] = c.qubit_count;
    j["label"] = c.label;
    j["gates"] = nlohmann::json::array();
    for (const Gate& g : c.gates) {
        nlohmann::json jg;
        jg["kind"] = gate_kind_name(g.kind);
        jg["qubits"] = std::vector<int>(g.q.begin(), g.q.begin() + g.arity());
        if (g.kind == GateKind::RotY || g.kind == GateKind::Phase ||
            g.kind == GateKind::ControlledRotY) {
            jg["angle"] = g.angle;
        }
        j["gates"].push_back(jg);
    }
    return j.dump(2);
}

Circuit circuit_from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Circuit c(j.at("qubit_count").get<int>(), j.value("label", ""));
    for (const auto& jg : j.at("gates")) {
        std::string kind = jg.at("kind").get<std::string>();
        std::vector<int> q = jg.at("qubits").get<std::vector<int>>();
        double angle = jg.value("angle", 0.0);
        if (kind == "x") c.append(Gate::x(q.at(0)));
        else if (kind == "ry") c.append(Gate::ry(q.at(0), angle));
        else if (kind == "phase") c.append(Gate::phase(q.at(0), angle));
        else if (kind == "cx") c.append(Gate::cx(q.at(0), q.at(1)));
        else if (kind == "cry") c.append(Gate::cry(q.at(0), q.at(1), angle));
        else if (kind == "ccx") c.append(Gate::ccx(q.at(0), q.at(1), q.at(2)));
        else if (kind == "cswap") c.append(Gate::cswap(q.at(0), q.at(1), q.at(2)));
        else throw std::invalid_argument("unknown gate kind in json: " + kind);
    }
    return c;
}

}  // namespace dicke
