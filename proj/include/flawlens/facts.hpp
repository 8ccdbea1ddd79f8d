#pragma once

#include "flawlens/model.hpp"

#include <string>

namespace flawlens {

/// Serialises a model to the facts JSON format. Key order is fixed and
/// every array is sorted by id, so equal models produce identical text.
std::string facts_to_string(const DesignModel& model);

/// Parses facts JSON. Throws FactsError on schema violations (naming the
/// offending field) and ModelError when references do not resolve.
DesignModel facts_from_string(const std::string& text, const std::string& origin = {});

void save_facts(const DesignModel& model, const std::string& path);
DesignModel load_facts(const std::string& path);

}  // namespace flawlens
