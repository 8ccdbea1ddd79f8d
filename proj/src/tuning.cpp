#include "flawlens/tuning.hpp"

#include "flawlens/builder.hpp"
#include "flawlens/errors.hpp"
#include "flawlens/facts.hpp"
#include "flawlens/parser.hpp"

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace flawlens {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot read ") + what + " '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw TuneError(origin + ": malformed JSON: " + e.what());
    }
}

std::string resolve(const fs::path& base, const json& entry, const std::string& where) {
    if (!entry.is_string()) throw TuneError(where + " must be a string path");
    fs::path p(entry.get<std::string>());
    return (p.is_absolute() ? p : base / p).lexically_normal().string();
}

std::string strip_sigil(const std::string& name) {
    return !name.empty() && name.front() == '$' ? name.substr(1) : name;
}

}  // namespace

double Confusion::f1() const {
    const long long denom = 2 * true_positives + false_positives + false_negatives;
    if (denom == 0) return 1.0;
    return 2.0 * static_cast<double>(true_positives) / static_cast<double>(denom);
}

Confusion score_strategy(const LabeledCorpus& corpus, const StrategyAst& strategy) {
    Confusion total;
    for (const auto& sample : corpus.samples) {
        auto report = evaluate(sample.model, strategy);
        for (const auto& id : report.suspects) {
            if (sample.flagged.count(id)) {
                ++total.true_positives;
            } else {
                ++total.false_positives;
            }
        }
        for (const auto& id : sample.flagged) {
            if (!report.suspects.count(id)) ++total.false_negatives;
        }
    }
    return total;
}

void validate_corpus(const LabeledCorpus& corpus) {
    for (const auto& sample : corpus.samples) {
        for (const auto& id : sample.flagged) {
            bool known = sample.model.find_class(id) || sample.model.find_method(id) ||
                         sample.model.find_attribute(id);
            if (!known) {
                throw TuneError("corpus sample '" + sample.origin + "' flags '" + id.str() +
                                "', which is not in its model");
            }
        }
    }
}

TuneResult tune(const LabeledCorpus& corpus, const TunableStrategy& strategy, std::size_t cap) {
    if (corpus.samples.empty()) throw TuneError("empty corpus");
    validate_corpus(corpus);

    const auto template_holes = holes(strategy.templ);
    for (const auto& hole : template_holes) {
        if (!strategy.grid.count(hole)) throw TuneError("grid has no candidates for $" + hole);
    }
    std::size_t combinations = 1;
    for (const auto& [hole, candidates] : strategy.grid) {
        if (!template_holes.count(hole)) throw TuneError("grid names $" + hole + ", which the template does not use");
        if (candidates.empty()) throw TuneError("grid for $" + hole + " is empty");
        if (candidates.size() > cap / combinations) {
            throw TuneError("grid has more than " + std::to_string(cap) + " assignments");
        }
        combinations *= candidates.size();
    }

    std::vector<std::pair<std::string, const std::vector<FilterArg>*>> axes;
    for (const auto& [hole, candidates] : strategy.grid) axes.emplace_back(hole, &candidates);

    TuneResult result;
    std::optional<std::size_t> best_index;
    std::vector<std::size_t> odometer(axes.size(), 0);
    for (std::size_t n = 0; n < combinations; ++n) {
        AssignmentScore row;
        for (std::size_t a = 0; a < axes.size(); ++a) row.assignment[axes[a].first] = (*axes[a].second)[odometer[a]];
        try {
            row.confusion = score_strategy(corpus, bind_holes(strategy.templ, row.assignment));
            row.f1 = row.confusion.f1();
        } catch (const SpecError& e) {
            row.error = e.what();
        } catch (const FilterError& e) {
            row.error = e.what();
        }
        if (row.f1 && (!best_index || *row.f1 > *result.table[*best_index].f1)) best_index = result.table.size();
        result.table.push_back(std::move(row));

        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++odometer[a] < axes[a].second->size()) break;
            odometer[a] = 0;
        }
    }

    if (!best_index) throw TuneError("no grid assignment could be evaluated");
    result.best = result.table[*best_index].assignment;
    result.score = *result.table[*best_index].f1;
    return result;
}

LabeledCorpus load_corpus(const std::string& path) {
    json root = parse_json(read_file(path, "corpus file"), path);
    if (!root.is_object() || !root.contains("samples") || !root["samples"].is_array()) {
        throw TuneError(path + ": corpus must be an object with a \"samples\" array");
    }
    const fs::path base = fs::path(path).parent_path();
    LabeledCorpus corpus;
    const auto& samples = root["samples"];
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const std::string where = path + ": samples[" + std::to_string(i) + "]";
        if (!s.is_object()) throw TuneError(where + " must be an object");
        const bool has_facts = s.contains("facts");
        const bool has_sources = s.contains("sources");
        if (has_facts == has_sources) throw TuneError(where + " needs exactly one of \"facts\" or \"sources\"");

        LabeledSample sample;
        if (has_facts) {
            std::string facts_path = resolve(base, s["facts"], where + ".facts");
            sample.origin = facts_path;
            sample.model = load_facts(facts_path);
        } else {
            if (!s["sources"].is_array() || s["sources"].empty()) {
                throw TuneError(where + ".sources must be a non-empty array");
            }
            std::vector<std::string> paths;
            for (const auto& src : s["sources"]) paths.push_back(resolve(base, src, where + ".sources"));
            sample.origin = paths.front();
            sample.model = build_model(parse_program(read_sources(paths)));
        }
        if (!s.contains("flagged") || !s["flagged"].is_array()) {
            throw TuneError(where + ".flagged must be an array of entity ids");
        }
        for (const auto& id : s["flagged"]) {
            if (!id.is_string()) throw TuneError(where + ".flagged entries must be strings");
            sample.flagged.insert(EntityId(id.get<std::string>()));
        }
        corpus.samples.push_back(std::move(sample));
    }
    validate_corpus(corpus);
    return corpus;
}

FilterArg parse_candidate(const std::string& text) {
    std::string body = text;
    bool percent = !body.empty() && body.back() == '%';
    if (percent) body.pop_back();
    double value = 0.0;
    const char* first = body.data();
    const char* last = first + body.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (body.empty() || ec != std::errc() || ptr != last) throw TuneError("malformed grid value '" + text + "'");
    return percent ? FilterArg::percentage(value) : FilterArg::number(value);
}

std::map<std::string, std::vector<FilterArg>> grid_from_string(const std::string& text, const std::string& origin) {
    json root = parse_json(text, origin);
    if (!root.is_object() || !root.contains("holes") || !root["holes"].is_object()) {
        throw TuneError(origin + ": grid must be an object with a \"holes\" object");
    }
    std::map<std::string, std::vector<FilterArg>> grid;
    for (const auto& [name, values] : root["holes"].items()) {
        if (!values.is_array()) throw TuneError(origin + ": holes." + name + " must be an array");
        auto& candidates = grid[strip_sigil(name)];
        for (const auto& v : values) {
            if (v.is_string()) {
                candidates.push_back(parse_candidate(v.get<std::string>()));
            } else if (v.is_number()) {
                candidates.push_back(FilterArg::number(v.get<double>()));
            } else {
                throw TuneError(origin + ": holes." + name + " values must be numbers or strings");
            }
        }
    }
    return grid;
}

std::map<std::string, std::vector<FilterArg>> load_grid(const std::string& path) {
    return grid_from_string(read_file(path, "grid file"), path);
}

std::string format_assignment(const Assignment& assignment) {
    std::string out;
    for (const auto& [hole, value] : assignment) {
        if (!out.empty()) out += ", ";
        out += "$" + hole + "=" + to_sod(value);
    }
    return out;
}

}  // namespace flawlens
