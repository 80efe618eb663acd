#include "cbdiff/export.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <sstream>

namespace cbd {

namespace {

using Json = nlohmann::ordered_json;

std::string threshold_cell(const ThresholdSequence* thresholds, Period t) {
    if (!thresholds) return "";
    if (t > thresholds->explicit_length() && !thresholds->tail) return "";
    return thresholds->at(t).to_string();
}

template <typename T>
Json optional_json(const std::optional<T>& value) {
    return value ? Json(*value) : Json(nullptr);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const char* ranking_name(SpecRanking r) {
    switch (r) {
        case SpecRanking::kIdentical: return "identical";
        case SpecRanking::kFirstAbove: return "A above B";
        case SpecRanking::kSecondAbove: return "B above A";
        case SpecRanking::kUnranked: return "unranked";
    }
    return "unknown";
}

const char* lead_name(Lead lead) {
    switch (lead) {
        case Lead::kFirst: return "A";
        case Lead::kEqual: return "equal";
        case Lead::kSecond: return "B";
        case Lead::kBothInfinite: return "both -inf";
    }
    return "unknown";
}

}  // namespace

void write_trace_csv(std::ostream& out, const DiffusionTrace& trace, const ThresholdSequence* thresholds) {
    out << "period,new_adopters,cumulative_adopters,threshold\n";
    for (const PeriodRecord& rec : trace.periods) {
        out << rec.period << ',' << rec.new_adopters << ',' << rec.cumulative_adopters << ','
            << threshold_cell(thresholds, rec.period) << '\n';
    }
}

std::string summary_json(const DiffusionTrace& trace) {
    const TerminalSummary& term = trace.terminal;
    Json j;
    j["asymptotic_adopters"] = term.asymptotic_adopters;
    j["g_bar"] = term.cutoff_group ? Json(*term.cutoff_group + 1) : Json(nullptr);
    j["stall_period"] = optional_json(term.stall_period);
    j["certified"] = term.certified;
    return dump(j);
}

std::string summary_line(const DiffusionTrace& trace) {
    const TerminalSummary& term = trace.terminal;
    std::ostringstream line;
    line << term.asymptotic_adopters << '/' << trace.individual_count() << " adopt";
    if (!term.certified) {
        line << " by t=" << trace.horizon << "; not certified";
        return line.str();
    }
    if (term.cutoff_group) {
        line << "; G_bar=" << *term.cutoff_group + 1;
    } else {
        line << "; all adopt";
    }
    if (term.stall_period) line << "; certified at t=" << *term.stall_period;
    return line.str();
}

std::string comparison_json(const ComparisonReport& report) {
    Json j;
    j["verdict"] = std::string(verdict_name(report.verdict));
    j["t_tilde"] = optional_json(report.crossing_period);
    j["early_leader"] = report.early_leader ? Json(*report.early_leader == 0 ? "A" : "B") : Json(nullptr);
    Json rows = Json::array();
    for (const ComparisonRow& row : report.per_period) {
        rows.push_back(Json{{"t", row.period},
                            {"dn_a", row.adopters_a},
                            {"dn_b", row.adopters_b},
                            {"h_a", row.threshold_a.to_string()},
                            {"h_b", row.threshold_b.to_string()}});
    }
    j["per_period"] = rows;

    const ComparisonDiagnostics& d = report.diagnostics;
    Json diag;
    diag["ranking"] = ranking_name(d.ranking);
    diag["h2_a"] = d.second_threshold_a.to_string();
    diag["h2_b"] = d.second_threshold_b.to_string();
    diag["speed_case"] = std::string(speed_case_name(d.speed_case));
    diag["speed_case_advisory"] = d.speed_case_advisory;
    diag["faster_at_two"] = d.faster_at_two ? Json(*d.faster_at_two == 0 ? "A" : "B") : Json(nullptr);
    diag["second_period_condition"] = optional_json(d.second_period_condition);
    diag["curve_crossing"] = d.curve_crossing ? Json(format_rational(*d.curve_crossing)) : Json(nullptr);
    diag["both_certified"] = d.both_certified;
    Json segments = Json::array();
    for (const LeadSegment& seg : report.lead_segments) {
        segments.push_back(Json{{"from", seg.begin}, {"to", optional_json(seg.end)}, {"lower", lead_name(seg.lead)}});
    }
    diag["lead_segments"] = segments;
    diag["warnings"] = d.warnings;
    j["diagnostics"] = diag;
    j["summary_a"] = Json::parse(summary_json(report.trace_a));
    j["summary_b"] = Json::parse(summary_json(report.trace_b));
    return dump(j);
}

std::string verdict_line(const ComparisonReport& report) {
    if (report.verdict == Verdict::kSingleCross) {
        return std::string("single-cross at t=") + std::to_string(*report.crossing_period) + " (" +
               (*report.early_leader == 0 ? "A" : "B") + " leads early)";
    }
    return std::string(verdict_name(report.verdict));
}

std::string network_comparison_json(const NetworkComparisonReport& report) {
    Json j;
    j["hypothesis"] = report.hypothesis == TieHypothesis::kScaling ? "scaling" : "mass shift";
    if (report.scale) j["scale"] = format_rational(*report.scale);
    if (report.hypothesis == TieHypothesis::kMassShift) {
        j["shift_from"] = report.shift_from + 1;
        j["shift_to"] = report.shift_to + 1;
    }
    j["both_monotone"] = report.both_monotone;
    j["payoffs_constant"] = report.payoffs_constant;
    j["asserted"] = report.asserted;
    j["contained"] = report.contained;
    j["first_violation"] = optional_json(report.first_violation);
    Json rows = Json::array();
    for (const NetworkRow& row : report.per_period) {
        rows.push_back(Json{{"t", row.period}, {"dn_a", row.adopters_a}, {"dn_b", row.adopters_b},
                            {"contained", row.contained}});
    }
    j["per_period"] = rows;
    j["warnings"] = report.warnings;
    j["summary_a"] = Json::parse(summary_json(report.trace_a));
    j["summary_b"] = Json::parse(summary_json(report.trace_b));
    return dump(j);
}

std::string coverage_json(const CoverageReport& report) {
    Json j;
    Json rows = Json::array();
    for (const CoverageRow& row : report.rows) {
        rows.push_back(Json{{"group", row.group + 1},
                            {"aspiration", format_rational(row.aspiration)},
                            {"F", row.mass_above},
                            {"v_above", format_rational(row.payoff_above)},
                            {"lhs", format_rational(row.lhs)},
                            {"rhs", row.rhs ? Json(format_rational(*row.rhs)) : Json(nullptr)},
                            {"never_adopts", row.blocked}});
    }
    j["rows"] = rows;
    j["g_bar"] = report.cutoff_group ? Json(*report.cutoff_group + 1) : Json(nullptr);
    j["full_adoption"] = report.full_adoption();
    return dump(j);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "value,period,cumulative_adopters\n";
    for (const SweepRow& row : rows) out << row.value << ',' << row.period << ',' << row.cumulative_adopters << '\n';
}

}  // namespace cbd
