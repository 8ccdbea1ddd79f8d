#pragma once

#include <optional>
#include <string>
#include <vector>

namespace flawlens::ast {

struct Position {
    std::string file;
    int line = 0;
    int column = 0;

    bool operator==(const Position&) const = default;
};

enum class ExprKind {
    This,     // `this`
    Name,     // local, parameter or bare field name
    IntLit,
    Field,    // operands[0].name
    Call,     // operands[0].name(operands[1..]) or name(args) when !has_receiver
    Compare,  // operands[0] op operands[1]
};

struct Expr {
    ExprKind kind = ExprKind::Name;
    Position pos;
    /// Identifier for Name/Field/Call, operator for Compare, digits for IntLit.
    std::string text;
    bool has_receiver = false;
    std::vector<Expr> operands;

    bool operator==(const Expr&) const = default;
};

/// Assignment target: ["this" "."] IDENT ["." IDENT].
struct LValue {
    Position pos;
    bool this_qualified = false;
    std::string base;
    std::optional<std::string> member;

    bool operator==(const LValue&) const = default;
};

enum class StmtKind { VarDecl, Assign, ExprStmt, If, While, For, Return };

struct Stmt {
    StmtKind kind = StmtKind::ExprStmt;
    Position pos;
    std::string name;       // VarDecl
    std::string type_name;  // VarDecl
    std::optional<LValue> target;
    /// Value (VarDecl/Assign/Return), expression (ExprStmt) or condition (If/While/For).
    std::optional<Expr> expr;
    std::vector<Stmt> body;
    std::vector<Stmt> else_body;
    bool has_else = false;
    std::vector<Stmt> for_init;    // zero or one Assign
    std::vector<Stmt> for_update;  // zero or one Assign

    bool operator==(const Stmt&) const = default;
};

struct TypedName {
    Position pos;
    std::string name;
    std::string type_name;

    bool operator==(const TypedName&) const = default;
};

struct AttrDecl {
    Position pos;
    bool is_public = false;
    std::string name;
    std::string type_name;

    bool operator==(const AttrDecl&) const = default;
};

struct MethodDecl {
    Position pos;
    bool is_public = false;
    std::string name;
    std::vector<TypedName> params;
    std::vector<Stmt> body;

    bool operator==(const MethodDecl&) const = default;
};

struct ClassDecl {
    Position pos;
    std::string name;
    std::optional<std::string> superclass;
    std::vector<AttrDecl> attributes;
    std::vector<MethodDecl> methods;

    bool operator==(const ClassDecl&) const = default;
};

struct Program {
    std::vector<ClassDecl> classes;

    bool operator==(const Program&) const = default;
};

}  // namespace flawlens::ast
