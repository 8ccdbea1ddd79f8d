#pragma once

#include "flawlens/builder.hpp"
#include "flawlens/model.hpp"
#include "flawlens/parser.hpp"

#include <random>
#include <string>
#include <vector>

namespace flawlens::testing {

inline std::string fixture(const std::string& relative) {
    return std::string(FLAWLENS_FIXTURE_DIR) + "/" + relative;
}

inline DesignModel model_from_source(const std::string& text, const std::string& path = "inline.moo") {
    return build_model(parse_program(SourceProgram{{{path, text}}}));
}

inline DesignModel load_f1() {
    return build_model(parse_program(read_sources({fixture("f1.moo")})));
}

inline std::vector<std::string> planted_sources() {
    return {fixture("planted/domain.moo"), fixture("planted/blob.moo"), fixture("planted/controls.moo")};
}

inline DesignModel load_planted() {
    return build_model(parse_program(read_sources(planted_sources())));
}

inline EntityId cls(const std::string& name) { return EntityId::for_class(name); }
inline EntityId meth(const std::string& owner, const std::string& name) { return EntityId::for_method(owner, name); }
inline EntityId attr(const std::string& owner, const std::string& name) { return EntityId::for_attribute(owner, name); }

/// Random well-formed model: up to `max_classes` declared classes with up to
/// `max_methods` methods each, single acyclic inheritance, a few external
/// classes with opaque members, random calls, accesses and accessors.
inline DesignModel random_model(std::mt19937& rng, int max_classes = 8, int max_methods = 5) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

    DesignModel::ClassMap classes;
    DesignModel::MethodMap methods;
    DesignModel::AttributeMap attributes;

    const int n_classes = pick(0, max_classes);
    const int n_external = pick(0, 2);
    std::vector<std::string> declared;
    std::vector<std::string> external;
    for (int i = 0; i < n_external; ++i) {
        std::string name = "X" + std::to_string(i);
        external.push_back(name);
        ClassEntity c;
        c.id = EntityId::for_class(name);
        c.name = name;
        c.is_external = true;
        classes.emplace(c.id, c);
    }
    for (int i = 0; i < n_classes; ++i) {
        std::string name = "C" + std::to_string(i);
        ClassEntity c;
        c.id = EntityId::for_class(name);
        c.name = name;
        if (i > 0 && chance(0.5)) {
            c.superclass = EntityId::for_class(declared[pick(0, i - 1)]);
        } else if (!external.empty() && chance(0.2)) {
            c.superclass = EntityId::for_class(external[pick(0, static_cast<int>(external.size()) - 1)]);
        }
        const int n_attrs = pick(0, 4);
        for (int a = 0; a < n_attrs; ++a) {
            AttributeEntity at;
            at.name = "a" + std::to_string(a);
            at.id = EntityId::for_attribute(name, at.name);
            at.owner = c.id;
            at.visibility = chance(0.3) ? Visibility::Public : Visibility::Private;
            c.attributes.push_back(at.id);
            attributes.emplace(at.id, at);
        }
        const int n_methods = pick(0, max_methods);
        for (int m = 0; m < n_methods; ++m) {
            MethodEntity me;
            me.name = "m" + std::to_string(m);
            me.id = EntityId::for_method(name, me.name);
            me.owner = c.id;
            me.visibility = chance(0.7) ? Visibility::Public : Visibility::Private;
            me.cyclomatic = pick(1, 6);
            me.statement_count = pick(0, 30);
            c.methods.push_back(me.id);
            methods.emplace(me.id, me);
        }
        declared.push_back(name);
        classes.emplace(c.id, c);
    }

    for (int i = 0; i < n_external; ++i) {
        auto& ext = classes.at(EntityId::for_class(external[i]));
        const int n_members = pick(0, 2);
        for (int k = 0; k < n_members; ++k) {
            MethodEntity me;
            me.name = "op" + std::to_string(k);
            me.id = EntityId::for_method(ext.name, me.name);
            me.owner = ext.id;
            ext.methods.push_back(me.id);
            methods.emplace(me.id, me);
            AttributeEntity at;
            at.name = "f" + std::to_string(k);
            at.id = EntityId::for_attribute(ext.name, at.name);
            at.owner = ext.id;
            at.visibility = Visibility::Public;
            ext.attributes.push_back(at.id);
            attributes.emplace(at.id, at);
        }
    }

    std::vector<EntityId> all_methods;
    std::vector<EntityId> all_attributes;
    for (const auto& [id, m] : methods) all_methods.push_back(id);
    for (const auto& [id, a] : attributes) all_attributes.push_back(id);

    for (auto& [id, m] : methods) {
        if (classes.at(m.owner).is_external) continue;
        if (!all_methods.empty()) {
            const int n_calls = pick(0, 3);
            for (int k = 0; k < n_calls; ++k) {
                m.calls.insert(all_methods[pick(0, static_cast<int>(all_methods.size()) - 1)]);
            }
        }
        if (!all_attributes.empty()) {
            const int n_access = pick(0, 4);
            for (int k = 0; k < n_access; ++k) {
                m.accesses.insert(all_attributes[pick(0, static_cast<int>(all_attributes.size()) - 1)]);
            }
        }
        const auto& own = classes.at(m.owner).attributes;
        if (!own.empty() && chance(0.3)) m.accessor_of = own[pick(0, static_cast<int>(own.size()) - 1)];
    }

    return DesignModel(std::move(classes), std::move(methods), std::move(attributes));
}

}  // namespace flawlens::testing
