#include "poisred/report.hpp"

namespace poisred {

namespace {

std::string exprList(const std::vector<SuperFn>& fns) {
    std::string out;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        if (i) out += ", ";
        out += fns[i].str();
    }
    return out;
}

std::string pointList(const std::vector<std::vector<Rational>>& points) {
    std::string out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out += ", ";
        out += "(";
        for (std::size_t k = 0; k < points[i].size(); ++k) {
            if (k) out += ",";
            out += str(points[i][k]);
        }
        out += ")";
    }
    return out;
}

} // namespace

std::string echoProblem(const ProblemFile& file) {
    std::string out;
    out += "manifold { n: " + std::to_string(file.chart->dim()) + " }\n";
    if (file.poisson) out += "poisson { " + file.poisson->str() + " }\n";
    for (const auto& s : file.submanifolds) {
        out += "submanifold " + s.name + " { gens: " + exprList(s.gens);
        if (!s.tangentGens.empty()) out += "; tangent: " + exprList(s.tangentGens);
        out += "; points: " + pointList(s.points) + " }\n";
    }
    for (const auto& d : file.distributions)
        out += "distribution " + d.name + " { base: " + d.baseName + "; gens: " + exprList(d.gens) +
               " }\n";
    if (file.problem) {
        const auto& p = *file.problem;
        out += "problem {";
        bool first = true;
        auto field = [&](const std::string& key, const std::string& value) {
            if (value.empty()) return;
            out += std::string(first ? " " : "; ") + key + ": " + value;
            first = false;
        };
        field("C", p.c);
        field("E", p.e);
        field("D", p.d);
        field("A", p.a);
        if (!p.bgens.empty()) field("B", exprList(p.bgens));
        if (p.bound) field("bound", std::to_string(*p.bound));
        out += " }\n";
    }
    return out;
}

std::string renderHypotheses(const HypothesisReport& rep) {
    std::string out;
    for (const auto& h : rep.entries) {
        std::string v = str(h.verdict);
        out += v + std::string(v.size() < 10 ? 10 - v.size() : 1, ' ') + h.name;
        if (!h.evidence.empty()) out += ": " + h.evidence;
        out += "\n";
    }
    out += "overall: " + str(rep.overall()) + "\n";
    return out;
}

std::string renderTable(const BracketTable& table) {
    std::string out;
    out += "generators:";
    for (const auto& g : table.generators) out += " " + g.str() + ";";
    out += "\n";
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        for (std::size_t j = i + 1; j < table.entries[i].size(); ++j) {
            const BracketEntry& e = table.entries[i][j];
            out += "{b" + std::to_string(i + 1) + ", b" + std::to_string(j + 1) + "} = " +
                   e.residue.str();
            if (e.bExpression && !(e.bExpression->isZero() && !e.residue.isZero()))
                out += "  (in B: " + e.bExpression->str() + ")";
            else if (e.decomposition == Membership::UNDECIDED)
                out += "  (no B-decomposition at bound)";
            out += "\n";
        }
    }
    for (const auto& n : table.notes) {
        std::string v = str(n.verdict);
        out += v + std::string(v.size() < 10 ? 10 - v.size() : 1, ' ') + n.name;
        if (!n.evidence.empty()) out += ": " + n.evidence;
        out += "\n";
    }
    out += "jacobi: " + str(table.jacobi);
    if (!table.jacobiEvidence.empty()) out += " (" + table.jacobiEvidence + ")";
    out += "\n";
    return out;
}

nlohmann::json hypothesesJson(const HypothesisReport& rep) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& h : rep.entries)
        entries.push_back({{"name", h.name}, {"verdict", str(h.verdict)}, {"evidence", h.evidence}});
    return {{"entries", entries}, {"overall", str(rep.overall())}};
}

nlohmann::json tableJson(const BracketTable& table) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : table.generators) gens.push_back(g.str());
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        for (std::size_t j = i + 1; j < table.entries[i].size(); ++j) {
            const BracketEntry& e = table.entries[i][j];
            nlohmann::json entry = {{"i", i + 1}, {"j", j + 1}, {"residue", e.residue.str()}};
            if (e.bExpression) entry["inB"] = e.bExpression->str();
            entry["decomposition"] = str(e.decomposition);
            entries.push_back(entry);
        }
    nlohmann::json notes = nlohmann::json::array();
    for (const auto& n : table.notes)
        notes.push_back({{"name", n.name}, {"verdict", str(n.verdict)}, {"evidence", n.evidence}});
    return {{"generators", gens},
            {"entries", entries},
            {"notes", notes},
            {"jacobi", str(table.jacobi)},
            {"jacobiEvidence", table.jacobiEvidence}};
}

nlohmann::json problemJson(const ProblemFile& file) {
    nlohmann::json out;
    out["n"] = file.chart->dim();
    if (file.poisson) out["poisson"] = file.poisson->str();
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& s : file.submanifolds) {
        nlohmann::json js;
        js["name"] = s.name;
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& g : s.gens) gens.push_back(g.str());
        js["gens"] = gens;
        nlohmann::json tans = nlohmann::json::array();
        for (const auto& t : s.tangentGens) tans.push_back(t.str());
        js["tangent"] = tans;
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : s.points) {
            nlohmann::json pt = nlohmann::json::array();
            for (const auto& c : p) pt.push_back(str(c));
            pts.push_back(pt);
        }
        js["points"] = pts;
        subs.push_back(js);
    }
    out["submanifolds"] = subs;
    nlohmann::json dists = nlohmann::json::array();
    for (const auto& d : file.distributions) {
        nlohmann::json jd;
        jd["name"] = d.name;
        jd["base"] = d.baseName;
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& g : d.gens) gens.push_back(g.str());
        jd["gens"] = gens;
        dists.push_back(jd);
    }
    out["distributions"] = dists;
    if (file.problem) {
        const auto& p = *file.problem;
        nlohmann::json jp;
        if (!p.c.empty()) jp["C"] = p.c;
        if (!p.e.empty()) jp["E"] = p.e;
        if (!p.d.empty()) jp["D"] = p.d;
        if (!p.a.empty()) jp["A"] = p.a;
        nlohmann::json bgens = nlohmann::json::array();
        for (const auto& b : p.bgens) bgens.push_back(b.str());
        jp["B"] = bgens;
        if (p.bound) jp["bound"] = *p.bound;
        out["problem"] = jp;
    }
    return out;
}

} // namespace poisred
