#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace flawlens {

enum class EntityKind { Class, Method, Attribute };

/// Identifier of a design entity, in the form "kind:QualifiedName"
/// ("class:A", "method:A.m1", "attr:A.x").
class EntityId {
public:
    EntityId() = default;
    explicit EntityId(std::string value) : value_(std::move(value)) {}

    static EntityId for_class(std::string_view name);
    static EntityId for_method(std::string_view owner, std::string_view name);
    static EntityId for_attribute(std::string_view owner, std::string_view name);

    const std::string& str() const noexcept { return value_; }

    /// Kind encoded in the prefix; nullopt when the prefix is not recognised.
    std::optional<EntityKind> kind() const;
    /// Everything after the "kind:" prefix.
    std::string_view qualified_name() const;
    /// Owning class name encoded in a member id ("A" for "method:A.m1").
    std::optional<std::string_view> owner_name() const;

    auto operator<=>(const EntityId&) const = default;
    bool operator==(const EntityId&) const = default;

private:
    std::string value_;
};

enum class Visibility { Public, Private };

std::string_view to_string(Visibility v);
std::optional<Visibility> parse_visibility(std::string_view text);

struct ClassEntity {
    EntityId id;
    std::string name;
    std::optional<EntityId> superclass;
    bool is_external = false;
    std::vector<EntityId> attributes;
    std::vector<EntityId> methods;

    bool operator==(const ClassEntity&) const = default;
};

struct MethodEntity {
    EntityId id;
    std::string name;
    EntityId owner;
    Visibility visibility = Visibility::Public;
    int cyclomatic = 1;
    int statement_count = 0;
    std::set<EntityId> calls;
    std::set<EntityId> accesses;
    std::optional<EntityId> accessor_of;

    bool operator==(const MethodEntity&) const = default;
};

struct AttributeEntity {
    EntityId id;
    std::string name;
    EntityId owner;
    Visibility visibility = Visibility::Private;

    bool operator==(const AttributeEntity&) const = default;
};

/// Immutable graph of classes, methods and attributes.
///
/// Member sequences of each class are kept sorted by id so that two models
/// describing the same design compare equal regardless of declaration order.
/// External classes may list opaque members (methods and attributes that
/// the analysed code references but whose bodies are unknown).
class DesignModel {
public:
    using ClassMap = std::map<EntityId, ClassEntity>;
    using MethodMap = std::map<EntityId, MethodEntity>;
    using AttributeMap = std::map<EntityId, AttributeEntity>;

    DesignModel() = default;
    DesignModel(ClassMap classes, MethodMap methods, AttributeMap attributes);

    const ClassMap& classes() const noexcept { return classes_; }
    const MethodMap& methods() const noexcept { return methods_; }
    const AttributeMap& attributes() const noexcept { return attributes_; }

    const ClassEntity* find_class(const EntityId& id) const;
    const MethodEntity* find_method(const EntityId& id) const;
    const AttributeEntity* find_attribute(const EntityId& id) const;

    /// Throws ModelError when absent.
    const ClassEntity& get_class(const EntityId& id) const;
    const MethodEntity& get_method(const EntityId& id) const;
    const AttributeEntity& get_attribute(const EntityId& id) const;

    bool operator==(const DesignModel&) const = default;

private:
    ClassMap classes_;
    MethodMap methods_;
    AttributeMap attributes_;
};

/// Superclass chain from the immediate parent up to the root.
std::vector<EntityId> ancestors(const DesignModel& model, const EntityId& cls);

/// Classes whose superclass is exactly `cls`.
std::set<EntityId> subclasses_of(const DesignModel& model, const EntityId& cls);

/// Methods declared on `cls` itself (inherited methods excluded).
std::set<EntityId> declared_methods(const DesignModel& model, const EntityId& cls);

struct Diagnostic {
    std::string code;
    EntityId entity;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

/// Checks every structural invariant; empty result means the model is well formed.
std::vector<Diagnostic> validate(const DesignModel& model);

/// Runs validate() and throws ModelError summarising the diagnostics, if any.
void require_valid(const DesignModel& model);

}  // namespace flawlens
