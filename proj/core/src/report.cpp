#include "semid/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace semid {

namespace {

using nlohmann::ordered_json;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string case_name(DepCase c) {
    switch (c) {
        case DepCase::Descendant: return "descendant";
        case DepCase::TailBidirected: return "tail-bidirected-path";
        default: return "parameter-dependence";
    }
}

std::string edge_text(const CausalDiagram& d, EdgeId e) {
    const Edge& ed = d.edge(e);
    const char* arrow = ed.kind == EdgeKind::Directed ? " -> " : " <-> ";
    return d.name(ed.a) + arrow + d.name(ed.b) + " [" + ed.param + "]";
}

std::vector<std::string> names_of(const CausalDiagram& d, const std::vector<VarId>& vars) {
    std::vector<std::string> out;
    for (VarId v : vars) out.push_back(d.name(v));
    return out;
}

std::string verdict_line(const CausalDiagram& d, const Verdict& v) {
    switch (v.kind) {
        case VerdictKind::Identified:
            return "IDENTIFIED; schedule: " + join(names_of(d, v.schedule), ", ");
        case VerdictKind::NoAuxiliarySet:
            return "NOT IDENTIFIED: no auxiliary set for " + join(names_of(d, v.culprits), ", ");
        case VerdictKind::Inconclusive:
        default:
            return std::string("INCONCLUSIVE: ") +
                   (v.reason == InconclusiveReason::CoefficientUnavailable
                        ? "coefficient-unavailable"
                        : "cyclic-dependence");
    }
}

std::string reason_name(const Verdict& v) {
    if (!v.reason) return "";
    return *v.reason == InconclusiveReason::CoefficientUnavailable ? "coefficient-unavailable"
                                                                   : "cyclic-dependence";
}

}  // namespace

std::string format_polynomial(const PathPolynomial& poly) {
    if (poly.terms.empty()) return "0";
    std::vector<std::string> rendered;
    for (const auto& term : poly.terms) {
        rendered.push_back(term.empty() ? "1" : join(term, "*"));
    }
    return join(rendered, " + ");
}

std::string format_path(const CausalDiagram& d, const Path& p) {
    std::string out = d.name(p.source);
    for (const PathStep& s : p.steps) {
        const Edge& e = d.edge(s.edge);
        if (e.kind == EdgeKind::Bidirected) {
            out += " <-> ";
        } else {
            out += e.b == s.to ? " -> " : " <- ";
        }
        out += d.name(s.to);
    }
    return out;
}

std::string format_matrix(const Eigen::MatrixXd& m) {
    std::string out;
    char buffer[64];
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            std::snprintf(buffer, sizeof(buffer), "%14.9f", m(i, j));
            out += (j ? " " : "") + std::string(buffer);
        }
        out += "\n";
    }
    return out;
}

std::string text_report(const CausalDiagram& d, const Verdict& v) {
    std::ostringstream out;
    out << verdict_line(d, v) << "\n";
    out << "ordering: " << join(names_of(d, v.delta.order), ", ") << "\n";

    for (VarId y : v.delta.order) {
        std::vector<EdgeId> inc = inc_set(d, y, v.delta);
        if (inc.empty()) continue;
        std::vector<std::string> edges;
        for (EdgeId e : inc) edges.push_back(edge_text(d, e));
        out << "Inc(" << d.name(y) << "): " << join(edges, ", ") << "\n";
    }

    for (VarId y : v.delta.order) {
        auto it = v.assignment.by_target.find(y);
        if (it == v.assignment.by_target.end()) continue;
        const AuxiliaryCandidate& c = it->second;
        out << "auxiliary set for " << d.name(y) << ": {" << join(names_of(d, c.members), ", ")
            << "}" << (c.condition4 ? "" : "  [violates depth condition]") << "\n";
        for (const Witness& w : c.witnesses.witnesses) {
            out << "  witness " << format_path(d, w.path) << "  (uses "
                << d.edge(w.inc_edge).param << ")\n";
        }
    }

    if (v.kind == VerdictKind::Identified) {
        if (v.dependence.edges.empty()) {
            out << "dependence graph: no edges\n";
        } else {
            out << "dependence graph:\n";
            for (const DependenceEdge& e : v.dependence.edges) {
                out << "  " << d.name(e.from) << " -> " << d.name(e.to) << " ("
                    << case_name(e.label) << ")\n";
            }
        }
        out << "schedule: " << join(names_of(d, v.schedule), ", ") << "\n";
    }

    for (const auto& note : v.notes) out << "note: " << note << "\n";
    if (!v.diagnostics.empty()) out << "diagnostics: " << v.diagnostics << "\n";
    return out.str();
}

std::string json_report(const CausalDiagram& d, const Verdict& v) {
    ordered_json doc;
    switch (v.kind) {
        case VerdictKind::Identified: doc["verdict"] = "identified"; break;
        case VerdictKind::NoAuxiliarySet: doc["verdict"] = "no-auxiliary-set"; break;
        default: doc["verdict"] = "inconclusive"; break;
    }
    doc["ordering"] = names_of(d, v.delta.order);

    doc["inc_sets"] = ordered_json::object();
    for (VarId y : v.delta.order) {
        std::vector<EdgeId> inc = inc_set(d, y, v.delta);
        if (inc.empty()) continue;
        ordered_json edges = ordered_json::array();
        for (EdgeId e : inc) edges.push_back(d.edge(e).param);
        doc["inc_sets"][d.name(y)] = edges;
    }

    doc["auxiliary_sets"] = ordered_json::object();
    for (VarId y : v.delta.order) {
        auto it = v.assignment.by_target.find(y);
        if (it == v.assignment.by_target.end()) continue;
        const AuxiliaryCandidate& c = it->second;
        ordered_json entry;
        entry["members"] = names_of(d, c.members);
        entry["condition4"] = c.condition4;
        entry["witnesses"] = ordered_json::array();
        for (const Witness& w : c.witnesses.witnesses) {
            entry["witnesses"].push_back({{"path", format_path(d, w.path)},
                                          {"uses", d.edge(w.inc_edge).param}});
        }
        doc["auxiliary_sets"][d.name(y)] = entry;
    }

    doc["dependence_graph"] = ordered_json::array();
    for (const DependenceEdge& e : v.dependence.edges) {
        doc["dependence_graph"].push_back(
            {{"from", d.name(e.from)}, {"to", d.name(e.to)}, {"case", case_name(e.label)}});
    }
    doc["schedule"] = names_of(d, v.schedule);
    doc["culprits"] = names_of(d, v.culprits);
    doc["reason"] = reason_name(v);
    doc["diagnostics"] = v.diagnostics;
    doc["notes"] = v.notes;
    doc["combinations_tried"] = v.combinations_tried;
    doc["backtracked"] = v.backtracked;
    return doc.dump(2) + "\n";
}

std::string text_round_trip(const RoundTripSummary& s) {
    std::ostringstream out;
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3e", s.worst_error);
    out << "trials: " << s.trials << "\n"
        << "successes: " << s.successes << "\n"
        << "worst error: " << buffer << "\n"
        << "ill-conditioned: " << s.ill_conditioned << "\n"
        << "failures: " << s.failures << "\n";
    for (const auto& note : s.notes) out << "note: " << note << "\n";
    return out.str();
}

std::string json_round_trip(const RoundTripSummary& s) {
    ordered_json doc;
    doc["trials"] = s.trials;
    doc["successes"] = s.successes;
    doc["worst_error"] = s.worst_error;
    doc["ill_conditioned"] = s.ill_conditioned;
    doc["failures"] = s.failures;
    doc["notes"] = s.notes;
    return doc.dump(2) + "\n";
}

std::string dot_diagram(const CausalDiagram& d) {
    std::ostringstream out;
    out << "digraph model {\n  rankdir=LR;\n";
    for (const auto& name : d.variables()) out << "  \"" << name << "\";\n";
    for (const Edge& e : d.edges()) {
        out << "  \"" << d.name(e.a) << "\" -> \"" << d.name(e.b) << "\" [label=\"" << e.param
            << "\"";
        if (e.kind == EdgeKind::Bidirected) out << ", dir=both, style=dashed, constraint=false";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string dot_dependence(const CausalDiagram& d, const DependenceGraph& g) {
    std::ostringstream out;
    out << "digraph dependence {\n  rankdir=LR;\n";
    for (VarId v : g.nodes) out << "  \"" << d.name(v) << "\";\n";
    for (const DependenceEdge& e : g.edges) {
        out << "  \"" << d.name(e.from) << "\" -> \"" << d.name(e.to) << "\" [label=\""
            << case_name(e.label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace semid
