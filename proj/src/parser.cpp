#include "flawlens/parser.hpp"

#include "flawlens/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace flawlens {

namespace {

using ast::Expr;
using ast::ExprKind;
using ast::Position;
using ast::Stmt;
using ast::StmtKind;

std::string describe(const Token& t) {
    switch (t.kind) {
        case TokenKind::Eof: return "end of input";
        case TokenKind::Identifier: return "identifier '" + t.text + "'";
        case TokenKind::Integer: return "integer '" + t.text + "'";
        case TokenKind::Keyword: return "keyword '" + t.text + "'";
        case TokenKind::Punct: return "'" + t.text + "'";
    }
    return "token";
}

class Parser {
public:
    Parser(const std::vector<Token>& tokens, std::string file)
        : tokens_(tokens), file_(std::move(file)) {
        if (tokens_.empty() || tokens_.back().kind != TokenKind::Eof) {
            throw ParseError(file_, 1, 1, "token stream does not end with end of input");
        }
    }

    ast::Program program() {
        ast::Program prog;
        while (!at_eof()) prog.classes.push_back(class_decl());
        return prog;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t idx = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[idx];
    }

    bool at_eof() const { return peek().kind == TokenKind::Eof; }

    bool check(TokenKind kind, std::string_view text = {}) const {
        const auto& t = peek();
        return t.kind == kind && (text.empty() || t.text == text);
    }

    bool check_punct(std::string_view text) const { return check(TokenKind::Punct, text); }
    bool check_keyword(std::string_view text) const { return check(TokenKind::Keyword, text); }

    const Token& take() {
        const Token& t = peek();
        if (pos_ < tokens_.size() - 1) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        const auto& t = peek();
        throw ParseError(file_, t.line, t.column, "expected " + expected + ", found " + describe(t));
    }

    Position here() const { return {file_, peek().line, peek().column}; }

    const Token& expect_punct(std::string_view text) {
        if (!check_punct(text)) fail("'" + std::string(text) + "'");
        return take();
    }

    const Token& expect_keyword(std::string_view text) {
        if (!check_keyword(text)) fail("'" + std::string(text) + "'");
        return take();
    }

    std::string expect_identifier() {
        if (!check(TokenKind::Identifier)) fail("identifier");
        return take().text;
    }

    ast::ClassDecl class_decl() {
        ast::ClassDecl decl;
        decl.pos = here();
        expect_keyword("class");
        decl.name = expect_identifier();
        if (check_keyword("extends")) {
            take();
            decl.superclass = expect_identifier();
        }
        expect_punct("{");
        while (!check_punct("}")) {
            if (at_eof()) fail("'}'");
            member(decl);
        }
        take();
        return decl;
    }

    void member(ast::ClassDecl& decl) {
        Position pos = here();
        bool is_public;
        if (check_keyword("public")) {
            is_public = true;
        } else if (check_keyword("private")) {
            is_public = false;
        } else {
            fail("'public' or 'private'");
        }
        take();

        if (check_keyword("var")) {
            take();
            ast::AttrDecl attr;
            attr.pos = pos;
            attr.is_public = is_public;
            attr.name = expect_identifier();
            expect_punct(":");
            attr.type_name = expect_identifier();
            expect_punct(";");
            decl.attributes.push_back(std::move(attr));
        } else if (check_keyword("def")) {
            take();
            ast::MethodDecl method;
            method.pos = pos;
            method.is_public = is_public;
            method.name = expect_identifier();
            expect_punct("(");
            if (!check_punct(")")) {
                method.params.push_back(typed_name());
                while (check_punct(",")) {
                    take();
                    method.params.push_back(typed_name());
                }
            }
            expect_punct(")");
            method.body = block();
            decl.methods.push_back(std::move(method));
        } else {
            fail("'var' or 'def'");
        }
    }

    ast::TypedName typed_name() {
        ast::TypedName tn;
        tn.pos = here();
        tn.name = expect_identifier();
        expect_punct(":");
        tn.type_name = expect_identifier();
        return tn;
    }

    std::vector<Stmt> block() {
        expect_punct("{");
        std::vector<Stmt> stmts;
        while (!check_punct("}")) {
            if (at_eof()) fail("'}'");
            stmts.push_back(statement());
        }
        take();
        return stmts;
    }

    Stmt statement() {
        Stmt s;
        s.pos = here();
        if (check_keyword("var")) {
            take();
            s.kind = StmtKind::VarDecl;
            s.name = expect_identifier();
            expect_punct(":");
            s.type_name = expect_identifier();
            if (check_punct("=")) {
                take();
                s.expr = expression();
            }
            expect_punct(";");
        } else if (check_keyword("if")) {
            take();
            s.kind = StmtKind::If;
            expect_punct("(");
            s.expr = expression();
            expect_punct(")");
            s.body = block();
            if (check_keyword("else")) {
                take();
                s.has_else = true;
                s.else_body = block();
            }
        } else if (check_keyword("while")) {
            take();
            s.kind = StmtKind::While;
            expect_punct("(");
            s.expr = expression();
            expect_punct(")");
            s.body = block();
        } else if (check_keyword("for")) {
            take();
            s.kind = StmtKind::For;
            expect_punct("(");
            if (!check_punct(";")) s.for_init.push_back(assignment_no_semi());
            expect_punct(";");
            if (!check_punct(";")) s.expr = expression();
            expect_punct(";");
            if (!check_punct(")")) s.for_update.push_back(assignment_no_semi());
            expect_punct(")");
            s.body = block();
        } else if (check_keyword("return")) {
            take();
            s.kind = StmtKind::Return;
            if (!check_punct(";")) s.expr = expression();
            expect_punct(";");
        } else {
            Expr e = expression();
            if (check_punct("=")) {
                take();
                s.kind = StmtKind::Assign;
                s.target = to_lvalue(e);
                s.expr = expression();
            } else {
                s.kind = StmtKind::ExprStmt;
                s.expr = std::move(e);
            }
            expect_punct(";");
        }
        return s;
    }

    Stmt assignment_no_semi() {
        Stmt s;
        s.pos = here();
        s.kind = StmtKind::Assign;
        Expr target = postfix();
        s.target = to_lvalue(target);
        expect_punct("=");
        s.expr = expression();
        return s;
    }

    ast::LValue to_lvalue(const Expr& e) const {
        auto invalid = [&]() -> ast::LValue {
            throw ParseError(file_, e.pos.line, e.pos.column, "invalid assignment target");
        };
        ast::LValue lv;
        lv.pos = e.pos;
        if (e.kind == ExprKind::Name) {
            lv.base = e.text;
            return lv;
        }
        if (e.kind != ExprKind::Field) return invalid();
        const Expr& receiver = e.operands.front();
        if (receiver.kind == ExprKind::This) {
            lv.this_qualified = true;
            lv.base = e.text;
            return lv;
        }
        if (receiver.kind == ExprKind::Name) {
            lv.base = receiver.text;
            lv.member = e.text;
            return lv;
        }
        if (receiver.kind == ExprKind::Field && receiver.operands.front().kind == ExprKind::This) {
            lv.this_qualified = true;
            lv.base = receiver.text;
            lv.member = e.text;
            return lv;
        }
        return invalid();
    }

    Expr expression() {
        Expr left = postfix();
        if (check_punct(">") || check_punct("<") || check_punct("==")) {
            Expr cmp;
            cmp.kind = ExprKind::Compare;
            cmp.pos = left.pos;
            cmp.text = take().text;
            cmp.operands.push_back(std::move(left));
            cmp.operands.push_back(postfix());
            return cmp;
        }
        return left;
    }

    std::vector<Expr> arguments() {
        std::vector<Expr> args;
        expect_punct("(");
        if (!check_punct(")")) {
            args.push_back(expression());
            while (check_punct(",")) {
                take();
                args.push_back(expression());
            }
        }
        expect_punct(")");
        return args;
    }

    Expr postfix() {
        Expr e = primary();
        while (check_punct(".")) {
            take();
            Expr next;
            next.pos = here();
            next.text = expect_identifier();
            next.operands.push_back(std::move(e));
            if (check_punct("(")) {
                next.kind = ExprKind::Call;
                next.has_receiver = true;
                for (auto& arg : arguments()) next.operands.push_back(std::move(arg));
            } else {
                next.kind = ExprKind::Field;
            }
            e = std::move(next);
        }
        return e;
    }

    Expr primary() {
        Expr e;
        e.pos = here();
        if (check(TokenKind::Integer)) {
            e.kind = ExprKind::IntLit;
            e.text = take().text;
            return e;
        }
        if (check_punct("(")) {
            take();
            Expr inner = expression();
            expect_punct(")");
            return inner;
        }
        if (check(TokenKind::Identifier)) {
            e.text = take().text;
            if (e.text == "this") {
                e.kind = ExprKind::This;
                e.text.clear();
            } else if (check_punct("(")) {
                e.kind = ExprKind::Call;
                e.has_receiver = false;
                e.operands = arguments();
            } else {
                e.kind = ExprKind::Name;
            }
            return e;
        }
        fail("expression");
    }

    const std::vector<Token>& tokens_;
    std::string file_;
    std::size_t pos_ = 0;
};

}  // namespace

ast::Program parse_tokens(const std::vector<Token>& tokens, const std::string& file) {
    return Parser(tokens, file).program();
}

ast::Program parse_program(const SourceProgram& program) {
    ast::Program combined;
    std::set<std::string> seen;
    for (const auto& f : program.files) {
        if (!seen.insert(f.path).second) {
            throw ModelError("source file '" + f.path + "' given more than once");
        }
        auto part = parse_tokens(tokenize(f.text, f.path), f.path);
        for (auto& decl : part.classes) combined.classes.push_back(std::move(decl));
    }
    return combined;
}

SourceProgram read_sources(const std::vector<std::string>& paths) {
    SourceProgram program;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot read source file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        program.files.push_back({path, buf.str()});
    }
    return program;
}

}  // namespace flawlens
