#include "flawlens/builder.hpp"

#include "flawlens/errors.hpp"

#include <variant>

namespace flawlens {

namespace {

using ast::Expr;
using ast::ExprKind;
using ast::Stmt;
using ast::StmtKind;

struct PrimitiveType {};
struct UnknownType {};
/// Static type of an expression: a class, a primitive, or not statically known.
using StaticType = std::variant<EntityId, PrimitiveType, UnknownType>;

std::string where(const ast::Position& pos) {
    std::string file = pos.file.empty() ? std::string("<input>") : pos.file;
    return file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": ";
}

[[noreturn]] void model_error(const ast::Position& pos, const std::string& message) {
    throw ModelError(where(pos) + message);
}

class ModelBuilder {
public:
    explicit ModelBuilder(const ast::Program& program) : program_(program) {}

    DesignModel build() {
        register_classes();
        link_superclasses();
        declare_members();
        for (const auto& decl : program_.classes) {
            for (const auto& method : decl.methods) analyse_body(decl, method);
        }
        DesignModel model(std::move(classes_), std::move(methods_), std::move(attributes_));
        require_valid(model);
        return model;
    }

private:
    // ---- declarations -------------------------------------------------

    void register_classes() {
        for (const auto& decl : program_.classes) {
            if (is_primitive_type(decl.name)) {
                model_error(decl.pos, "class name '" + decl.name + "' is reserved for a primitive type");
            }
            if (!declared_.emplace(decl.name, &decl).second) {
                model_error(decl.pos, "duplicate class '" + decl.name + "'");
            }
            ClassEntity cls;
            cls.id = EntityId::for_class(decl.name);
            cls.name = decl.name;
            classes_.emplace(cls.id, std::move(cls));
        }
    }

    void link_superclasses() {
        for (const auto& decl : program_.classes) {
            if (!decl.superclass) continue;
            if (is_primitive_type(*decl.superclass)) {
                model_error(decl.pos, "class '" + decl.name + "' cannot extend primitive type '" +
                                          *decl.superclass + "'");
            }
            EntityId parent = declared_.count(*decl.superclass) ? EntityId::for_class(*decl.superclass)
                                                                : ensure_external(*decl.superclass);
            classes_.at(EntityId::for_class(decl.name)).superclass = parent;
        }
    }

    void declare_members() {
        for (const auto& decl : program_.classes) {
            auto& cls = classes_.at(EntityId::for_class(decl.name));
            for (const auto& a : decl.attributes) {
                AttributeEntity attr;
                attr.id = EntityId::for_attribute(decl.name, a.name);
                attr.name = a.name;
                attr.owner = cls.id;
                attr.visibility = a.is_public ? Visibility::Public : Visibility::Private;
                if (attributes_.count(attr.id)) {
                    model_error(a.pos, "duplicate attribute '" + a.name + "' in class '" + decl.name + "'");
                }
                attribute_types_[attr.id] = resolve_type(a.type_name);
                cls.attributes.push_back(attr.id);
                attributes_.emplace(attr.id, std::move(attr));
            }
            for (const auto& m : decl.methods) {
                MethodEntity method;
                method.id = EntityId::for_method(decl.name, m.name);
                method.name = m.name;
                method.owner = cls.id;
                method.visibility = m.is_public ? Visibility::Public : Visibility::Private;
                if (methods_.count(method.id)) {
                    model_error(m.pos, "duplicate method '" + m.name + "' in class '" + decl.name + "'");
                }
                for (const auto& p : m.params) resolve_type(p.type_name);
                cls.methods.push_back(method.id);
                methods_.emplace(method.id, std::move(method));
            }
        }
    }

    EntityId ensure_external(const std::string& name) {
        EntityId id = EntityId::for_class(name);
        if (!classes_.count(id)) {
            ClassEntity cls;
            cls.id = id;
            cls.name = name;
            cls.is_external = true;
            classes_.emplace(id, std::move(cls));
        }
        return id;
    }

    StaticType resolve_type(const std::string& name) {
        if (is_primitive_type(name)) return PrimitiveType{};
        if (declared_.count(name)) return EntityId::for_class(name);
        return ensure_external(name);
    }

    // ---- member lookup ------------------------------------------------

    EntityId ensure_external_attribute(ClassEntity& ext, const std::string& name) {
        EntityId id = EntityId::for_attribute(ext.name, name);
        if (!attributes_.count(id)) {
            AttributeEntity attr;
            attr.id = id;
            attr.name = name;
            attr.owner = ext.id;
            attr.visibility = Visibility::Public;
            attributes_.emplace(id, std::move(attr));
            attribute_types_[id] = UnknownType{};
            ext.attributes.push_back(id);
        }
        return id;
    }

    EntityId ensure_external_method(ClassEntity& ext, const std::string& name) {
        EntityId id = EntityId::for_method(ext.name, name);
        if (!methods_.count(id)) {
            MethodEntity method;
            method.id = id;
            method.name = name;
            method.owner = ext.id;
            method.visibility = Visibility::Public;
            methods_.emplace(id, std::move(method));
            ext.methods.push_back(id);
        }
        return id;
    }

    /// Walks `start` and its ancestors; the first declared match wins, and an
    /// external class in the chain absorbs any name not found below it.
    std::optional<EntityId> lookup_member(const EntityId& start, const std::string& name, bool method) {
        std::set<EntityId> visited;
        std::optional<EntityId> current = start;
        while (current && visited.insert(*current).second) {
            auto& cls = classes_.at(*current);
            if (cls.is_external) {
                return method ? ensure_external_method(cls, name) : ensure_external_attribute(cls, name);
            }
            EntityId candidate = method ? EntityId::for_method(cls.name, name)
                                        : EntityId::for_attribute(cls.name, name);
            if (method ? methods_.count(candidate) > 0 : attributes_.count(candidate) > 0) {
                return candidate;
            }
            current = cls.superclass;
        }
        return std::nullopt;
    }

    // ---- bodies -------------------------------------------------------

    struct BodyContext {
        EntityId owner;
        MethodEntity* method;
        std::vector<std::map<std::string, StaticType>> scopes;
        int decisions = 0;
        int statements = 0;
    };

    const StaticType* find_local(const BodyContext& ctx, const std::string& name) const {
        for (auto it = ctx.scopes.rbegin(); it != ctx.scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }

    void declare_local(BodyContext& ctx, const ast::Position& pos, const std::string& name, StaticType type) {
        if (find_local(ctx, name)) model_error(pos, "redeclaration of '" + name + "'");
        ctx.scopes.back().emplace(name, std::move(type));
    }

    void analyse_body(const ast::ClassDecl& decl, const ast::MethodDecl& m) {
        BodyContext ctx;
        ctx.owner = EntityId::for_class(decl.name);
        ctx.method = &methods_.at(EntityId::for_method(decl.name, m.name));
        ctx.scopes.emplace_back();
        for (const auto& p : m.params) declare_local(ctx, p.pos, p.name, resolve_type(p.type_name));

        walk_block(ctx, m.body);

        ctx.method->cyclomatic = 1 + ctx.decisions;
        ctx.method->statement_count = ctx.statements;
        ctx.method->accessor_of = detect_accessor(decl, m);
    }

    void walk_block(BodyContext& ctx, const std::vector<Stmt>& stmts) {
        ctx.scopes.emplace_back();
        for (const auto& s : stmts) walk_stmt(ctx, s);
        ctx.scopes.pop_back();
    }

    void walk_stmt(BodyContext& ctx, const Stmt& s) {
        ++ctx.statements;
        switch (s.kind) {
            case StmtKind::VarDecl: {
                StaticType type = resolve_type(s.type_name);
                if (s.expr) walk_expr(ctx, *s.expr);
                declare_local(ctx, s.pos, s.name, std::move(type));
                break;
            }
            case StmtKind::Assign:
                walk_assign(ctx, s);
                break;
            case StmtKind::ExprStmt:
            case StmtKind::Return:
                if (s.expr) walk_expr(ctx, *s.expr);
                break;
            case StmtKind::If:
                ++ctx.decisions;
                walk_expr(ctx, *s.expr);
                walk_block(ctx, s.body);
                if (s.has_else) walk_block(ctx, s.else_body);
                break;
            case StmtKind::While:
                ++ctx.decisions;
                walk_expr(ctx, *s.expr);
                walk_block(ctx, s.body);
                break;
            case StmtKind::For:
                // Header assignments are part of the loop node, not statements.
                ++ctx.decisions;
                for (const auto& init : s.for_init) walk_assign(ctx, init);
                if (s.expr) walk_expr(ctx, *s.expr);
                for (const auto& update : s.for_update) walk_assign(ctx, update);
                walk_block(ctx, s.body);
                break;
        }
    }

    void walk_assign(BodyContext& ctx, const Stmt& s) {
        const auto& lv = *s.target;
        StaticType base_type;
        if (lv.this_qualified) {
            auto attr = lookup_member(ctx.owner, lv.base, false);
            if (!attr) model_error(lv.pos, "assignment to undeclared field '" + lv.base + "'");
            ctx.method->accesses.insert(*attr);
            base_type = attribute_types_.at(*attr);
        } else if (const auto* local = find_local(ctx, lv.base)) {
            base_type = *local;
        } else {
            auto attr = lookup_member(ctx.owner, lv.base, false);
            if (!attr) model_error(lv.pos, "assignment to undeclared name '" + lv.base + "'");
            ctx.method->accesses.insert(*attr);
            base_type = attribute_types_.at(*attr);
        }
        if (lv.member) {
            if (std::holds_alternative<PrimitiveType>(base_type)) {
                model_error(lv.pos, "field assignment on primitive value '" + lv.base + "'");
            }
            if (const auto* cls = std::get_if<EntityId>(&base_type)) {
                auto attr = lookup_member(*cls, *lv.member, false);
                if (!attr) {
                    model_error(lv.pos, "assignment to undeclared field '" + *lv.member + "' of class '" +
                                            classes_.at(*cls).name + "'");
                }
                ctx.method->accesses.insert(*attr);
            }
        }
        walk_expr(ctx, *s.expr);
    }

    StaticType walk_expr(BodyContext& ctx, const Expr& e) {
        switch (e.kind) {
            case ExprKind::This:
                return ctx.owner;
            case ExprKind::IntLit:
                return PrimitiveType{};
            case ExprKind::Compare:
                walk_expr(ctx, e.operands[0]);
                walk_expr(ctx, e.operands[1]);
                return PrimitiveType{};
            case ExprKind::Name: {
                if (const auto* local = find_local(ctx, e.text)) return *local;
                auto attr = lookup_member(ctx.owner, e.text, false);
                if (!attr) model_error(e.pos, "undeclared name '" + e.text + "'");
                ctx.method->accesses.insert(*attr);
                return attribute_types_.at(*attr);
            }
            case ExprKind::Field: {
                StaticType receiver = walk_expr(ctx, e.operands[0]);
                auto cls = receiver_class(receiver, e);
                if (!cls) return UnknownType{};
                auto attr = lookup_member(*cls, e.text, false);
                if (!attr) {
                    model_error(e.pos, "unknown field '" + e.text + "' of class '" + classes_.at(*cls).name + "'");
                }
                ctx.method->accesses.insert(*attr);
                return attribute_types_.at(*attr);
            }
            case ExprKind::Call: {
                std::size_t first_arg = e.has_receiver ? 1 : 0;
                StaticType receiver = e.has_receiver ? walk_expr(ctx, e.operands[0]) : StaticType(ctx.owner);
                for (std::size_t i = first_arg; i < e.operands.size(); ++i) walk_expr(ctx, e.operands[i]);
                auto cls = receiver_class(receiver, e);
                if (!cls) return UnknownType{};
                auto callee = lookup_member(*cls, e.text, true);
                if (!callee) {
                    model_error(e.pos, "unknown method '" + e.text + "' of class '" + classes_.at(*cls).name + "'");
                }
                ctx.method->calls.insert(*callee);
                return UnknownType{};
            }
        }
        return UnknownType{};
    }

    std::optional<EntityId> receiver_class(const StaticType& type, const Expr& e) const {
        if (std::holds_alternative<PrimitiveType>(type)) {
            model_error(e.pos, "member '" + e.text + "' accessed on a primitive value");
        }
        if (const auto* cls = std::get_if<EntityId>(&type)) return *cls;
        return std::nullopt;
    }

    /// Getter: body is exactly `return this.f;`.
    /// Setter: exactly one parameter p and body exactly `this.f = p;`.
    /// In both cases f must be declared on the method's own class.
    std::optional<EntityId> detect_accessor(const ast::ClassDecl& decl, const ast::MethodDecl& m) const {
        if (m.body.size() != 1) return std::nullopt;
        const Stmt& s = m.body.front();
        auto own_attribute = [&](const std::string& name) -> std::optional<EntityId> {
            EntityId id = EntityId::for_attribute(decl.name, name);
            if (attributes_.count(id)) return id;
            return std::nullopt;
        };
        if (s.kind == StmtKind::Return && s.expr && s.expr->kind == ExprKind::Field &&
            s.expr->operands.front().kind == ExprKind::This) {
            return own_attribute(s.expr->text);
        }
        if (s.kind == StmtKind::Assign && m.params.size() == 1 && s.target->this_qualified &&
            !s.target->member && s.expr->kind == ExprKind::Name && s.expr->text == m.params.front().name) {
            return own_attribute(s.target->base);
        }
        return std::nullopt;
    }

    const ast::Program& program_;
    std::map<std::string, const ast::ClassDecl*> declared_;
    DesignModel::ClassMap classes_;
    DesignModel::MethodMap methods_;
    DesignModel::AttributeMap attributes_;
    std::map<EntityId, StaticType> attribute_types_;
};

}  // namespace

bool is_primitive_type(std::string_view name) {
    return name == "int" || name == "bool" || name == "string";
}

DesignModel build_model(const ast::Program& program) {
    return ModelBuilder(program).build();
}

}  // namespace flawlens
