#include "sop/json_io.hpp"

#include <algorithm>

#include <json.hpp>

namespace sop {

namespace {

using nlohmann::json;

json mon_to_json(const Monomial& m) {
    json a = json::array();
    for (VarId v : m.vars()) a.push_back(v);
    return a;
}

Monomial mon_from_json(const json& j) {
    std::vector<VarId> vs;
    for (const auto& v : j) vs.push_back(v.get<VarId>());
    return Monomial(std::move(vs));
}

json bp_to_json(const BoolPoly& p) {
    json a = json::array();
    for (const auto& m : p.monomials()) a.push_back(mon_to_json(m));
    return a;
}

BoolPoly bp_from_json(const json& j) {
    std::vector<Monomial> ms;
    for (const auto& m : j) ms.push_back(mon_from_json(m));
    return BoolPoly::from_monomials(std::move(ms));
}

}  // namespace

std::string term_to_json(const SopTerm& t) {
    json j;
    j["n_in"] = t.n_in;
    j["n_out"] = t.n_out;
    j["scalar"] = {{"odd", t.scalar.odd}, {"half_exp", t.scalar.half_exp}};
    j["vars"] = t.vars;
    json phase = json::array();
    for (const auto& [m, c] : t.phase.terms())
        phase.push_back({{"mon", mon_to_json(m)},
                         {"num", c.num},
                         {"log_den", c.log_den}});
    j["phase"] = phase;
    json out = json::array(), in = json::array(), dis = json::array();
    for (const auto& p : t.out) out.push_back(bp_to_json(p));
    for (const auto& p : t.in) in.push_back(bp_to_json(p));
    for (const auto& p : t.discards) dis.push_back(bp_to_json(p));
    j["out"] = out;
    j["in"] = in;
    j["discard"] = dis;
    return j.dump();
}

SopTerm term_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad term JSON: ") + e.what());
    }
    try {
        SopTerm t;
        t.n_in = j.at("n_in").get<std::size_t>();
        t.n_out = j.at("n_out").get<std::size_t>();
        t.scalar.odd = j.at("scalar").at("odd").get<std::int64_t>();
        t.scalar.half_exp = j.at("scalar").at("half_exp").get<int>();
        for (const auto& v : j.at("vars")) t.vars.push_back(v.get<VarId>());
        for (const auto& e : j.at("phase"))
            t.phase.add_term(mon_from_json(e.at("mon")),
                             Dyadic::of(e.at("num").get<std::int64_t>(),
                                        e.at("log_den").get<std::uint32_t>()));
        for (const auto& p : j.at("out")) t.out.push_back(bp_from_json(p));
        for (const auto& p : j.at("in")) t.in.push_back(bp_from_json(p));
        for (const auto& p : j.at("discard")) t.discards.push_back(bp_from_json(p));
        std::sort(t.vars.begin(), t.vars.end());
        std::sort(t.discards.begin(), t.discards.end());
        t.discards.erase(std::unique(t.discards.begin(), t.discards.end()),
                         t.discards.end());
        validate(t);
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad term JSON: ") + e.what());
    }
}

}  // namespace sop
