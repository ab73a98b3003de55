#include "sop/zh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace sop {

namespace {

std::size_t total_ports(const ZhDiagram& d) {
    std::size_t n = 0;
    for (const auto& node : d.nodes) n += node.arity;
    return n;
}

std::size_t port_index(const ZhDiagram& d, const ZhPort& p) {
    if (p.node >= d.nodes.size() || p.leg >= d.nodes[p.node].arity)
        throw InvalidDiagram("port out of range");
    std::size_t base = 0;
    for (std::size_t i = 0; i < p.node; ++i) base += d.nodes[i].arity;
    return base + p.leg;
}

struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

void validate(const ZhDiagram& d) {
    std::vector<int> used(total_ports(d), 0);
    for (const auto& [a, b] : d.wires) {
        used[port_index(d, a)]++;
        used[port_index(d, b)]++;
    }
    for (const auto& p : d.inputs) used[port_index(d, p)]++;
    for (const auto& p : d.outputs) used[port_index(d, p)]++;
    for (int u : used)
        if (u != 1) throw InvalidDiagram("every port must be used exactly once");
    for (const auto& n : d.nodes)
        if (n.kind == ZhNode::Kind::Ground && n.arity != 1)
            throw InvalidDiagram("ground nodes have exactly one leg");
}

SopTerm zh_to_sop(const ZhDiagram& d) {
    validate(d);
    Dsu dsu(total_ports(d));
    for (const auto& [a, b] : d.wires)
        dsu.unite(port_index(d, a), port_index(d, b));
    for (std::size_t n = 0; n < d.nodes.size(); ++n) {
        if (d.nodes[n].kind != ZhNode::Kind::Z) continue;
        for (std::size_t l = 1; l < d.nodes[n].arity; ++l)
            dsu.unite(port_index(d, {n, 0}), port_index(d, {n, l}));
    }

    std::map<std::size_t, VarId> var_of_root;
    VarId next = 1;
    for (std::size_t p = 0; p < total_ports(d); ++p) {
        const std::size_t r = dsu.find(p);
        if (!var_of_root.count(r)) var_of_root[r] = next++;
    }
    auto var_at = [&](const ZhPort& p) {
        return var_of_root.at(dsu.find(port_index(d, p)));
    };

    SopTerm t;
    t.n_in = d.inputs.size();
    t.n_out = d.outputs.size();
    for (VarId v = 1; v < next; ++v) t.vars.push_back(v);
    for (const auto& p : d.outputs) t.out.push_back(BoolPoly::var(var_at(p)));
    for (const auto& p : d.inputs) t.in.push_back(BoolPoly::var(var_at(p)));

    auto leg_monomial = [&](std::size_t n) {
        std::vector<VarId> vs;
        for (std::size_t l = 0; l < d.nodes[n].arity; ++l)
            vs.push_back(var_at({n, l}));
        return Monomial(std::move(vs));
    };
    auto add_zero_box = [&](const Monomial& legs) {
        // r = 0 as the derived sum (1/2) sum_z e^{2 i pi z * legs / 2}.
        const VarId z = next++;
        t.vars.push_back(z);
        t.phase.add_term(legs.merged(Monomial::var(z)), Dyadic::half());
        t.scalar = t.scalar.times_two(-1);
    };
    auto add_exact_real = [&](std::int64_t num, int half_exp, std::size_t arity) {
        if (arity != 0)
            throw UnsupportedParamExact(
                "real H parameters are only exact on 0-ary scalar boxes");
        if (num < 0) {
            t.phase.add_term(Monomial::unit(), Dyadic::half());
            num = -num;
        }
        while ((num & 1) == 0) {
            num >>= 1;
            half_exp += 2;
        }
        t.scalar = Scalar{t.scalar.odd * num, t.scalar.half_exp + half_exp};
    };

    for (std::size_t n = 0; n < d.nodes.size(); ++n) {
        const ZhNode& node = d.nodes[n];
        switch (node.kind) {
            case ZhNode::Kind::Z:
                // A legless spider has no port to hang a net on, but it is
                // still the scalar 1 + 1 = 2: sum it as a fresh free variable.
                if (node.arity == 0) t.vars.push_back(next++);
                break;
            case ZhNode::Kind::Ground:
                t.discards.push_back(BoolPoly::var(var_at({n, 0})));
                break;
            case ZhNode::Kind::H: {
                const HParam& p = node.param;
                switch (p.kind) {
                    case HParam::Kind::DyadicPhase:
                        t.phase.add_term(leg_monomial(n), p.phase);
                        break;
                    case HParam::Kind::Zero:
                        add_zero_box(leg_monomial(n));
                        break;
                    case HParam::Kind::ScalarSqrt2:
                        if (p.num == 0)
                            add_zero_box(leg_monomial(n));
                        else
                            add_exact_real(p.num, p.half_exp, node.arity);
                        break;
                    case HParam::Kind::GeneralReal: {
                        auto [pn, pd] = p.re;
                        if (pd <= 0 || (pd & (pd - 1)) != 0)
                            throw UnsupportedParamExact(
                                "non-dyadic real H parameter");
                        if (pn == 0) {
                            add_zero_box(leg_monomial(n));
                            break;
                        }
                        int half = 0;
                        for (std::int64_t q = pd; q > 1; q >>= 1) half -= 2;
                        add_exact_real(pn, half, node.arity);
                        break;
                    }
                    case HParam::Kind::GeneralComplex:
                        throw UnsupportedParamExact(
                            "complex H parameters have no exact translation");
                }
                break;
            }
        }
    }
    std::sort(t.discards.begin(), t.discards.end());
    t.discards.erase(std::unique(t.discards.begin(), t.discards.end()),
                     t.discards.end());
    return t;
}

namespace {

struct DiagramBuilder {
    ZhDiagram d;
    int extra_half = 0;

    std::size_t add(ZhNode::Kind k, HParam p = HParam::dyadic(Dyadic::zero())) {
        d.nodes.push_back(ZhNode{k, p, 0});
        return d.nodes.size() - 1;
    }
    ZhPort port(std::size_t n) { return {n, d.nodes[n].arity++}; }
    void wire(ZhPort a, ZhPort b) { d.wires.push_back({a, b}); }
    void connect(std::size_t a, std::size_t b) { wire(port(a), port(b)); }
};

}  // namespace

ZhDiagram sop_to_zh(const SopTerm& t0) {
    const SopTerm t = t0.renumbered();
    DiagramBuilder b;

    std::map<VarId, std::size_t> spider;
    for (VarId v : t.vars) spider[v] = b.add(ZhNode::Kind::Z);

    for (const auto& [m, c] : t.phase.terms()) {
        const std::size_t h = b.add(ZhNode::Kind::H, HParam::dyadic(c));
        for (VarId v : m.vars()) b.connect(h, spider[v]);
    }

    const HParam minus_one = HParam::dyadic(Dyadic::half());
    std::map<Monomial, std::size_t> product;  // monomial -> spider carrying it
    auto product_spider = [&](const Monomial& m) {
        if (m.degree() == 1) return spider[m.vars()[0]];
        auto it = product.find(m);
        if (it != product.end()) return it->second;
        // AND gadget: (1/2) sum_a e^{2 i pi a (prod + w) / 2} forces w = prod.
        const std::size_t w = b.add(ZhNode::Kind::Z);
        const std::size_t a = b.add(ZhNode::Kind::Z);
        const std::size_t h_and = b.add(ZhNode::Kind::H, minus_one);
        for (VarId v : m.vars()) b.connect(h_and, spider[v]);
        b.connect(h_and, a);
        const std::size_t h2 = b.add(ZhNode::Kind::H, minus_one);
        b.connect(h2, a);
        b.connect(h2, w);
        b.extra_half -= 2;
        product.emplace(m, w);
        return w;
    };
    // Port carrying the value of an arbitrary boolean polynomial:
    // (1/2) sum_a e^{2 i pi a (p + w) / 2} forces the fresh wire w to equal p.
    auto value_port = [&](const BoolPoly& p) {
        if (auto v = p.as_single_var()) return b.port(spider[*v]);
        const std::size_t w = b.add(ZhNode::Kind::Z);
        const std::size_t a = b.add(ZhNode::Kind::Z);
        for (const auto& m : p.monomials()) {
            if (m.is_unit()) {
                const std::size_t h1 = b.add(ZhNode::Kind::H, minus_one);
                b.connect(h1, a);
            } else {
                const std::size_t h2 = b.add(ZhNode::Kind::H, minus_one);
                b.connect(h2, a);
                b.connect(h2, product_spider(m));
            }
        }
        const std::size_t h2 = b.add(ZhNode::Kind::H, minus_one);
        b.connect(h2, a);
        b.connect(h2, w);
        b.extra_half -= 2;
        return b.port(w);
    };

    for (const auto& p : t.out) b.d.outputs.push_back(value_port(p));
    for (const auto& p : t.in) b.d.inputs.push_back(value_port(p));
    for (const auto& p : t.discards) {
        const ZhPort vp = value_port(p);
        const std::size_t g = b.add(ZhNode::Kind::Ground);
        b.wire(vp, b.port(g));
    }

    const Scalar s{t.scalar.odd, t.scalar.half_exp + b.extra_half};
    if (!(s == Scalar::one()))
        b.add(ZhNode::Kind::H, HParam::scalar_sqrt2(s.odd, s.half_exp));

    validate(b.d);
    return b.d;
}

namespace {

using nlohmann::json;

json param_to_json(const HParam& p) {
    switch (p.kind) {
        case HParam::Kind::DyadicPhase:
            return {{"phase", {{"num", p.phase.num}, {"log_den", p.phase.log_den}}}};
        case HParam::Kind::Zero:
            return {{"zero", true}};
        case HParam::Kind::ScalarSqrt2:
            return {{"sqrt2", {{"num", p.num}, {"half_exp", p.half_exp}}}};
        case HParam::Kind::GeneralReal:
            return {{"real", {p.re.first, p.re.second}}};
        case HParam::Kind::GeneralComplex:
            return {{"complex", {{p.re.first, p.re.second}, {p.im.first, p.im.second}}}};
    }
    return nullptr;
}

HParam param_from_json(const json& j) {
    if (j.contains("phase"))
        return HParam::dyadic(Dyadic::of(j["phase"]["num"].get<std::int64_t>(),
                                         j["phase"]["log_den"].get<std::uint32_t>()));
    if (j.contains("zero")) return HParam::zero();
    if (j.contains("sqrt2"))
        return HParam::scalar_sqrt2(j["sqrt2"]["num"].get<std::int64_t>(),
                                    j["sqrt2"]["half_exp"].get<int>());
    HParam p;
    if (j.contains("real")) {
        p.kind = HParam::Kind::GeneralReal;
        p.re = {j["real"][0].get<std::int64_t>(), j["real"][1].get<std::int64_t>()};
        return p;
    }
    if (j.contains("complex")) {
        p.kind = HParam::Kind::GeneralComplex;
        p.re = {j["complex"][0][0].get<std::int64_t>(),
                j["complex"][0][1].get<std::int64_t>()};
        p.im = {j["complex"][1][0].get<std::int64_t>(),
                j["complex"][1][1].get<std::int64_t>()};
        return p;
    }
    throw ParseError("unknown H parameter encoding");
}

json port_to_json(const ZhPort& p) { return json::array({p.node, p.leg}); }
ZhPort port_from_json(const json& j) {
    return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()};
}

}  // namespace

std::string zh_to_json(const ZhDiagram& d) {
    json j;
    json nodes = json::array();
    for (const auto& n : d.nodes) {
        json e;
        e["kind"] = n.kind == ZhNode::Kind::Z   ? "Z"
                    : n.kind == ZhNode::Kind::H ? "H"
                                                : "G";
        e["param"] = n.kind == ZhNode::Kind::H ? param_to_json(n.param) : json(nullptr);
        e["arity"] = n.arity;
        nodes.push_back(e);
    }
    j["nodes"] = nodes;
    json wires = json::array();
    for (const auto& [a, bp] : d.wires)
        wires.push_back(json::array({port_to_json(a), port_to_json(bp)}));
    j["wires"] = wires;
    json ins = json::array(), outs = json::array();
    for (const auto& p : d.inputs) ins.push_back(port_to_json(p));
    for (const auto& p : d.outputs) outs.push_back(port_to_json(p));
    j["inputs"] = ins;
    j["outputs"] = outs;
    return j.dump();
}

ZhDiagram zh_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad ZH JSON: ") + e.what());
    }
    try {
        ZhDiagram d;
        for (const auto& e : j.at("nodes")) {
            ZhNode n;
            const std::string k = e.at("kind").get<std::string>();
            n.kind = k == "Z"   ? ZhNode::Kind::Z
                     : k == "H" ? ZhNode::Kind::H
                     : k == "G" ? ZhNode::Kind::Ground
                                : throw ParseError("unknown node kind " + k);
            if (n.kind == ZhNode::Kind::H) n.param = param_from_json(e.at("param"));
            n.arity = e.at("arity").get<std::size_t>();
            d.nodes.push_back(n);
        }
        for (const auto& w : j.at("wires"))
            d.wires.push_back({port_from_json(w.at(0)), port_from_json(w.at(1))});
        for (const auto& p : j.at("inputs")) d.inputs.push_back(port_from_json(p));
        for (const auto& p : j.at("outputs")) d.outputs.push_back(port_from_json(p));
        validate(d);
        return d;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad ZH JSON: ") + e.what());
    }
}

namespace {

std::string param_label(const HParam& p) {
    switch (p.kind) {
        case HParam::Kind::DyadicPhase: {
            const Dyadic& c = p.phase;
            if (c.is_zero()) return "1";
            if (c.num == 1 && c.log_den == 1) return "-1";
            if (c.num == 1 && c.log_den == 2) return "i";
            if (c.num == 3 && c.log_den == 2) return "-i";
            return "e^(2i pi " + c.to_string() + ")";
        }
        case HParam::Kind::Zero:
            return "0";
        case HParam::Kind::ScalarSqrt2: {
            std::ostringstream os;
            os << p.num << "*sqrt2^" << p.half_exp;
            return os.str();
        }
        case HParam::Kind::GeneralReal: {
            std::ostringstream os;
            os << p.re.first << "/" << p.re.second;
            return os.str();
        }
        case HParam::Kind::GeneralComplex: {
            std::ostringstream os;
            os << p.re.first << "/" << p.re.second << "+"
               << p.im.first << "/" << p.im.second << "i";
            return os.str();
        }
    }
    return "?";
}

}  // namespace

std::string zh_to_dot(const ZhDiagram& d) {
    std::ostringstream os;
    os << "graph zh {\n  node [fontsize=10];\n";
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const ZhNode& n = d.nodes[i];
        os << "  n" << i << " ";
        switch (n.kind) {
            case ZhNode::Kind::Z:
                os << "[shape=circle,style=filled,fillcolor=white,label=\"\"]";
                break;
            case ZhNode::Kind::H:
                os << "[shape=box,label=\"" << param_label(n.param) << "\"]";
                break;
            case ZhNode::Kind::Ground:
                os << "[shape=box,style=filled,fillcolor=gray,label=\"gnd\"]";
                break;
        }
        os << ";\n";
    }
    for (std::size_t i = 0; i < d.inputs.size(); ++i)
        os << "  in" << i << " [shape=point]; in" << i << " -- n"
           << d.inputs[i].node << ";\n";
    for (std::size_t i = 0; i < d.outputs.size(); ++i)
        os << "  out" << i << " [shape=point]; out" << i << " -- n"
           << d.outputs[i].node << ";\n";
    for (const auto& [a, bp] : d.wires)
        os << "  n" << a.node << " -- n" << bp.node << ";\n";
    os << "}\n";
    return os.str();
}

HDecomposition decompose_h_param(std::complex<double> r) {
    const double eps = 1e-12;
    if (std::abs(r) < eps || std::abs(std::abs(r) - 1.0) < eps)
        throw DegenerateParam("decompose_h_param needs |r| outside {0, 1}");
    const std::complex<double> w = (1.0 - r) / (1.0 + r);
    const double rho = std::abs(w);
    const double theta = std::arg(w);
    const double beta = theta + std::numbers::pi / 2;

    auto build = [&](double alpha) {
        const std::complex<double> ea = std::exp(std::complex<double>(0, alpha));
        const std::complex<double> s = (1.0 + r) / (2.0 * (1.0 + ea));
        return HDecomposition{s, alpha, beta};
    };
    auto error = [&](const HDecomposition& h) {
        const std::complex<double> ea = std::exp(std::complex<double>(0, h.alpha));
        const std::complex<double> eb = std::exp(std::complex<double>(0, h.beta));
        const std::complex<double> w0 = 1.0 + ea;
        const std::complex<double> w1 = (1.0 - ea) * eb;
        return std::max(std::abs(h.s * (w0 + w1) - 1.0),
                        std::abs(h.s * (w0 - w1) - r));
    };

    // The textbook angle first; it does not reconstruct the matrix for
    // generic r, so fall back to the direct solve tan(alpha/2) = rho.
    HDecomposition cand = build(2.0 * std::atan(rho / 2.0));
    if (error(cand) < 1e-9) return cand;
    cand = build(2.0 * std::atan(rho));
    if (error(cand) < 1e-9) return cand;
    throw Error("H parameter decomposition failed to validate");
}

}  // namespace sop
