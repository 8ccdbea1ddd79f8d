#pragma once

#include "flawlens/metrics.hpp"
#include "flawlens/strategy.hpp"
#include "flawlens/tuning.hpp"

#include <string>
#include <vector>

namespace flawlens {

/// {"reports":[{"strategy","suspects":[{"id","evidence":{metric:value}}],"warnings":[...]}]}
/// Suspects are sorted by id and evidence follows canonical metric order,
/// so equal inputs give byte-identical output.
std::string reports_to_json(const std::vector<SuspectReport>& reports);
std::string reports_to_text(const std::vector<SuspectReport>& reports);

/// {"metrics":{"WMC":{"class:A":4,...},...}}
std::string tables_to_json(const std::vector<MetricTable>& tables);
std::string tables_to_text(const std::vector<MetricTable>& tables);

std::string tuning_to_text(const TuneResult& result);

/// Integral metrics print without a fractional part; TCC uses the shortest
/// representation that round-trips.
std::string format_value(Metric metric, double value);

}  // namespace flawlens
