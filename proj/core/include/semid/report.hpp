#pragma once

#include <string>

#include "semid/recover.hpp"

namespace semid {

std::string format_polynomial(const PathPolynomial& poly);
std::string format_path(const CausalDiagram& d, const Path& p);
std::string format_matrix(const Eigen::MatrixXd& m);

/// Human-readable verdict report: verdict line, Inc sets, auxiliary sets with
/// witness paths, dependence graph, schedule.
std::string text_report(const CausalDiagram& d, const Verdict& v);

/// Machine-readable mirror of text_report (same verdict data).
std::string json_report(const CausalDiagram& d, const Verdict& v);

std::string text_round_trip(const RoundTripSummary& s);
std::string json_round_trip(const RoundTripSummary& s);

std::string dot_diagram(const CausalDiagram& d);
std::string dot_dependence(const CausalDiagram& d, const DependenceGraph& g);

}  // namespace semid
