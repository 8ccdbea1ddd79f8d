#pragma once

#include "flawlens/model.hpp"
#include "flawlens/strategy.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flawlens {

struct LabeledSample {
    std::string origin;
    DesignModel model;
    std::set<EntityId> flagged;
};

struct LabeledCorpus {
    std::vector<LabeledSample> samples;
};

/// A strategy with `$name` placeholders and the candidate values for each.
struct TunableStrategy {
    StrategyAst templ;
    std::map<std::string, std::vector<FilterArg>> grid;
};

using Assignment = std::map<std::string, FilterArg>;

struct Confusion {
    long long true_positives = 0;
    long long false_positives = 0;
    long long false_negatives = 0;

    /// 1 when nothing was flagged and nothing was reported.
    double f1() const;
};

struct AssignmentScore {
    Assignment assignment;
    /// Unset when the assignment produced an ill-formed filter or a filter
    /// could not be applied; `error` says why.
    std::optional<double> f1;
    Confusion confusion;
    std::string error;
};

struct TuneResult {
    Assignment best;
    double score = 0.0;
    std::vector<AssignmentScore> table;
};

inline constexpr std::size_t kDefaultGridCap = 10000;

/// Micro-averaged confusion of `strategy` over every sample of the corpus.
Confusion score_strategy(const LabeledCorpus& corpus, const StrategyAst& strategy);

/// Exhaustive grid search maximising micro-averaged F1.
///
/// Assignments are enumerated with holes in lexicographic order (first hole
/// varies slowest) and candidates in grid order; the first assignment with
/// the highest score wins. Throws TuneError for an empty corpus, a grid that
/// does not match the template's holes, a grid larger than `cap`, or when no
/// assignment can be evaluated.
TuneResult tune(const LabeledCorpus& corpus, const TunableStrategy& strategy, std::size_t cap = kDefaultGridCap);

/// Checks every flagged id against its sample's model (TuneError).
void validate_corpus(const LabeledCorpus& corpus);

/// Loads {"samples":[{"facts": path | "sources": [paths], "flagged": [ids]}]}.
/// Relative paths resolve against the corpus file's directory.
LabeledCorpus load_corpus(const std::string& path);

/// Loads {"holes": {"$p": ["25%", "50%", 3, ...]}}.
std::map<std::string, std::vector<FilterArg>> load_grid(const std::string& path);
std::map<std::string, std::vector<FilterArg>> grid_from_string(const std::string& text, const std::string& origin = {});

/// Parses a single candidate value such as "50%", "3" or 1.5.
FilterArg parse_candidate(const std::string& text);

std::string format_assignment(const Assignment& assignment);

}  // namespace flawlens
