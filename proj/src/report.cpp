#include "flawlens/report.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace flawlens {

namespace {

using nlohmann::ordered_json;

ordered_json value_json(Metric metric, double value) {
    if (is_integral(metric) && std::floor(value) == value) return ordered_json(static_cast<long long>(value));
    return ordered_json(value);
}

std::string format_score(double score) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, score);
    std::string text(buf, ptr);
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    return text;
}

}  // namespace

std::string format_value(Metric metric, double value) {
    if (is_integral(metric) && std::floor(value) == value) return std::to_string(static_cast<long long>(value));
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string reports_to_json(const std::vector<SuspectReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json rj;
        rj["strategy"] = r.strategy;
        ordered_json suspects = ordered_json::array();
        for (const auto& id : r.suspects) {
            ordered_json sj;
            sj["id"] = id.str();
            ordered_json evidence = ordered_json::object();
            auto row = r.evidence.find(id);
            if (row != r.evidence.end()) {
                for (const auto& [metric, value] : row->second) {
                    evidence[std::string(to_string(metric))] = value_json(metric, value);
                }
            }
            sj["evidence"] = std::move(evidence);
            suspects.push_back(std::move(sj));
        }
        rj["suspects"] = std::move(suspects);
        rj["warnings"] = r.warnings;
        arr.push_back(std::move(rj));
    }
    ordered_json root;
    root["reports"] = std::move(arr);
    return root.dump(2) + "\n";
}

std::string reports_to_text(const std::vector<SuspectReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << r.strategy << " (" << to_string(r.target_kind) << "): " << r.suspects.size() << " suspect"
            << (r.suspects.size() == 1 ? "" : "s") << "\n";
        for (const auto& id : r.suspects) {
            out << "  " << id.str();
            auto row = r.evidence.find(id);
            if (row != r.evidence.end()) {
                for (const auto& [metric, value] : row->second) {
                    out << "  " << to_string(metric) << "=" << format_value(metric, value);
                }
            }
            out << "\n";
        }
        for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
    }
    return out.str();
}

std::string tables_to_json(const std::vector<MetricTable>& tables) {
    ordered_json metrics = ordered_json::object();
    for (const auto& t : tables) {
        ordered_json values = ordered_json::object();
        for (const auto& [id, v] : t.values) values[id.str()] = value_json(t.metric, v);
        metrics[std::string(to_string(t.metric))] = std::move(values);
    }
    ordered_json root;
    root["metrics"] = std::move(metrics);
    return root.dump(2) + "\n";
}

std::string tables_to_text(const std::vector<MetricTable>& tables) {
    std::ostringstream out;
    for (const auto& t : tables) {
        out << to_string(t.metric) << "\n";
        for (const auto& [id, v] : t.values) out << "  " << id.str() << " " << format_value(t.metric, v) << "\n";
    }
    return out.str();
}

std::string tuning_to_text(const TuneResult& result) {
    std::ostringstream out;
    for (const auto& row : result.table) {
        out << format_assignment(row.assignment) << "  ";
        if (row.f1) {
            out << "F1=" << format_score(*row.f1) << " (tp=" << row.confusion.true_positives
                << " fp=" << row.confusion.false_positives << " fn=" << row.confusion.false_negatives << ")";
        } else {
            out << "invalid: " << row.error;
        }
        out << "\n";
    }
    out << "best: " << format_assignment(result.best) << "  F1=" << format_score(result.score) << "\n";
    return out.str();
}

}  // namespace flawlens
