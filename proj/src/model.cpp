#include "flawlens/model.hpp"

#include "flawlens/errors.hpp"

#include <algorithm>
#include <sstream>

namespace flawlens {

namespace {

constexpr std::string_view kClassPrefix = "class:";
constexpr std::string_view kMethodPrefix = "method:";
constexpr std::string_view kAttributePrefix = "attr:";

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

std::string_view kind_label(EntityKind kind) {
    switch (kind) {
        case EntityKind::Class: return "class";
        case EntityKind::Method: return "method";
        case EntityKind::Attribute: return "attribute";
    }
    return "?";
}

}  // namespace

EntityId EntityId::for_class(std::string_view name) {
    return EntityId(std::string(kClassPrefix) + std::string(name));
}

EntityId EntityId::for_method(std::string_view owner, std::string_view name) {
    return EntityId(std::string(kMethodPrefix) + std::string(owner) + "." + std::string(name));
}

EntityId EntityId::for_attribute(std::string_view owner, std::string_view name) {
    return EntityId(std::string(kAttributePrefix) + std::string(owner) + "." + std::string(name));
}

std::optional<EntityKind> EntityId::kind() const {
    if (starts_with(value_, kClassPrefix)) return EntityKind::Class;
    if (starts_with(value_, kMethodPrefix)) return EntityKind::Method;
    if (starts_with(value_, kAttributePrefix)) return EntityKind::Attribute;
    return std::nullopt;
}

std::string_view EntityId::qualified_name() const {
    auto colon = value_.find(':');
    if (colon == std::string::npos) return value_;
    return std::string_view(value_).substr(colon + 1);
}

std::optional<std::string_view> EntityId::owner_name() const {
    auto k = kind();
    if (!k || *k == EntityKind::Class) return std::nullopt;
    auto qn = qualified_name();
    auto dot = qn.rfind('.');
    if (dot == std::string_view::npos || dot == 0) return std::nullopt;
    return qn.substr(0, dot);
}

std::string_view to_string(Visibility v) {
    return v == Visibility::Public ? "public" : "private";
}

std::optional<Visibility> parse_visibility(std::string_view text) {
    if (text == "public") return Visibility::Public;
    if (text == "private") return Visibility::Private;
    return std::nullopt;
}

DesignModel::DesignModel(ClassMap classes, MethodMap methods, AttributeMap attributes)
    : classes_(std::move(classes)), methods_(std::move(methods)), attributes_(std::move(attributes)) {
    for (auto& [id, cls] : classes_) {
        std::sort(cls.attributes.begin(), cls.attributes.end());
        std::sort(cls.methods.begin(), cls.methods.end());
    }
}

const ClassEntity* DesignModel::find_class(const EntityId& id) const {
    auto it = classes_.find(id);
    return it == classes_.end() ? nullptr : &it->second;
}

const MethodEntity* DesignModel::find_method(const EntityId& id) const {
    auto it = methods_.find(id);
    return it == methods_.end() ? nullptr : &it->second;
}

const AttributeEntity* DesignModel::find_attribute(const EntityId& id) const {
    auto it = attributes_.find(id);
    return it == attributes_.end() ? nullptr : &it->second;
}

const ClassEntity& DesignModel::get_class(const EntityId& id) const {
    if (const auto* c = find_class(id)) return *c;
    throw ModelError("unknown class '" + id.str() + "'");
}

const MethodEntity& DesignModel::get_method(const EntityId& id) const {
    if (const auto* m = find_method(id)) return *m;
    throw ModelError("unknown method '" + id.str() + "'");
}

const AttributeEntity& DesignModel::get_attribute(const EntityId& id) const {
    if (const auto* a = find_attribute(id)) return *a;
    throw ModelError("unknown attribute '" + id.str() + "'");
}

std::vector<EntityId> ancestors(const DesignModel& model, const EntityId& cls) {
    std::vector<EntityId> chain;
    const ClassEntity* current = &model.get_class(cls);
    while (current->superclass) {
        if (chain.size() >= model.classes().size()) {
            throw ModelError("inheritance cycle reachable from '" + cls.str() + "'");
        }
        chain.push_back(*current->superclass);
        current = &model.get_class(*current->superclass);
    }
    return chain;
}

std::set<EntityId> subclasses_of(const DesignModel& model, const EntityId& cls) {
    model.get_class(cls);
    std::set<EntityId> result;
    for (const auto& [id, c] : model.classes()) {
        if (c.superclass && *c.superclass == cls) result.insert(id);
    }
    return result;
}

std::set<EntityId> declared_methods(const DesignModel& model, const EntityId& cls) {
    const auto& c = model.get_class(cls);
    return {c.methods.begin(), c.methods.end()};
}

namespace {

class Validator {
public:
    explicit Validator(const DesignModel& model) : model_(model) {}

    std::vector<Diagnostic> run() {
        check_keys();
        check_classes();
        check_cycles();
        check_members();
        return std::move(out_);
    }

private:
    void report(std::string code, const EntityId& id, std::string message) {
        out_.push_back({std::move(code), id, std::move(message)});
    }

    template <typename Map>
    void check_key_set(const Map& map, EntityKind expected) {
        for (const auto& [key, entity] : map) {
            if (key != entity.id) {
                report("key-mismatch", key, "map key differs from entity id '" + entity.id.str() + "'");
            }
            if (entity.id.kind() != expected) {
                report("bad-id", entity.id,
                       "id does not carry the " + std::string(kind_label(expected)) + " prefix");
            }
        }
    }

    void check_keys() {
        check_key_set(model_.classes(), EntityKind::Class);
        check_key_set(model_.methods(), EntityKind::Method);
        check_key_set(model_.attributes(), EntityKind::Attribute);
        for (const auto& [id, cls] : model_.classes()) {
            if (id.qualified_name() != cls.name) {
                report("bad-id", id, "id does not encode class name '" + cls.name + "'");
            }
        }
    }

    void check_classes() {
        for (const auto& [id, cls] : model_.classes()) {
            if (cls.superclass) {
                if (!model_.find_class(*cls.superclass)) {
                    report("dangling-superclass", id,
                           "superclass '" + cls.superclass->str() + "' is not in the model");
                }
                if (cls.is_external) {
                    report("external-superclass", id, "external class declares a superclass");
                }
            }
            check_listing(cls, cls.attributes, "attribute", attribute_listing_);
            check_listing(cls, cls.methods, "method", method_listing_);
        }
    }

    void check_listing(const ClassEntity& cls, const std::vector<EntityId>& members,
                       const char* what, std::map<EntityId, EntityId>& listing) {
        for (const auto& member : members) {
            bool exists = std::string_view(what) == "method" ? model_.find_method(member) != nullptr
                                                            : model_.find_attribute(member) != nullptr;
            if (!exists) {
                report("dangling-member", cls.id,
                       std::string("listed ") + what + " '" + member.str() + "' is not in the model");
                continue;
            }
            auto [it, inserted] = listing.emplace(member, cls.id);
            if (!inserted) {
                report("duplicate-listing", member,
                       "listed by both '" + it->second.str() + "' and '" + cls.id.str() + "'");
            }
        }
    }

    void check_cycles() {
        enum class Mark { Unvisited, InProgress, Done };
        std::map<EntityId, Mark> marks;
        for (const auto& [id, cls] : model_.classes()) marks[id] = Mark::Unvisited;

        for (const auto& [start, cls] : model_.classes()) {
            if (marks[start] != Mark::Unvisited) continue;
            std::vector<EntityId> path;
            EntityId current = start;
            while (true) {
                auto mark = marks.find(current);
                if (mark == marks.end() || mark->second == Mark::Done) break;
                if (mark->second == Mark::InProgress) {
                    auto pos = std::find(path.begin(), path.end(), current);
                    std::vector<EntityId> cycle(pos, path.end());
                    std::ostringstream members;
                    for (std::size_t i = 0; i < cycle.size(); ++i) {
                        members << (i ? " -> " : "") << cycle[i].str();
                    }
                    members << " -> " << current.str();
                    report("inheritance-cycle", *std::min_element(cycle.begin(), cycle.end()),
                           "inheritance cycle: " + members.str());
                    break;
                }
                mark->second = Mark::InProgress;
                path.push_back(current);
                const auto& c = model_.classes().at(current);
                if (!c.superclass) break;
                current = *c.superclass;
            }
            for (const auto& id : path) marks[id] = Mark::Done;
        }
    }

    template <typename Entity>
    const ClassEntity* check_owner(const Entity& entity, const std::map<EntityId, EntityId>& listing) {
        const auto* owner = model_.find_class(entity.owner);
        if (!owner) {
            report("dangling-owner", entity.id, "owner '" + entity.owner.str() + "' is not in the model");
            return nullptr;
        }
        auto listed = listing.find(entity.id);
        if (listed == listing.end() || listed->second != entity.owner) {
            report("owner-mismatch", entity.id, "owner '" + entity.owner.str() + "' does not list it");
        }
        auto encoded = entity.id.owner_name();
        if (!encoded || *encoded != owner->name ||
            entity.id.qualified_name() != owner->name + "." + entity.name) {
            report("bad-id", entity.id, "id does not encode owner '" + owner->name + "' and name '" +
                                            entity.name + "'");
        }
        return owner;
    }

    void check_members() {
        for (const auto& [id, attr] : model_.attributes()) {
            check_owner(attr, attribute_listing_);
        }
        for (const auto& [id, method] : model_.methods()) {
            const auto* owner = check_owner(method, method_listing_);
            if (method.cyclomatic < 1) {
                report("bad-cyclomatic", id, "cyclomatic complexity must be at least 1");
            }
            if (method.statement_count < 0) {
                report("bad-statement-count", id, "statement count must be non-negative");
            }
            for (const auto& callee : method.calls) {
                if (!model_.find_method(callee)) {
                    report("dangling-call", id, "called method '" + callee.str() + "' is not in the model");
                }
            }
            for (const auto& target : method.accesses) {
                if (!model_.find_attribute(target)) {
                    report("dangling-access", id,
                           "accessed attribute '" + target.str() + "' is not in the model");
                }
            }
            if (method.accessor_of) {
                const auto* attr = model_.find_attribute(*method.accessor_of);
                if (!attr || attr->owner != method.owner) {
                    report("bad-accessor", id,
                           "accessor_of '" + method.accessor_of->str() + "' is not an attribute of its owner");
                }
            }
            if (owner && owner->is_external) {
                bool opaque = method.cyclomatic == 1 && method.statement_count == 0 &&
                              method.calls.empty() && method.accesses.empty() && !method.accessor_of;
                if (!opaque) {
                    report("external-member-not-opaque", id, "members of external classes carry no body facts");
                }
            }
        }
    }

    const DesignModel& model_;
    std::vector<Diagnostic> out_;
    std::map<EntityId, EntityId> attribute_listing_;
    std::map<EntityId, EntityId> method_listing_;
};

}  // namespace

std::vector<Diagnostic> validate(const DesignModel& model) {
    return Validator(model).run();
}

void require_valid(const DesignModel& model) {
    auto diagnostics = validate(model);
    if (diagnostics.empty()) return;
    std::ostringstream msg;
    msg << "invalid design model (" << diagnostics.size() << " problem"
        << (diagnostics.size() == 1 ? "" : "s") << ")";
    for (const auto& d : diagnostics) {
        msg << "\n  " << d.code << ": " << d.entity.str() << ": " << d.message;
    }
    throw ModelError(msg.str());
}

}  // namespace flawlens
