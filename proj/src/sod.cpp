#include "flawlens/errors.hpp"
#include "flawlens/strategy.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace flawlens {

namespace {

enum class SodTok { Ident, Number, Hole, Assign, LParen, RParen, Comma, Semi, Percent, Eof };

struct SodToken {
    SodTok kind;
    std::string text;
    int line;
    int column;
};

std::string describe(const SodToken& t) {
    switch (t.kind) {
        case SodTok::Eof: return "end of input";
        case SodTok::Ident: return "'" + t.text + "'";
        case SodTok::Number: return "number " + t.text;
        case SodTok::Hole: return "placeholder $" + t.text;
        default: return "'" + t.text + "'";
    }
}

std::vector<SodToken> lex(std::string_view text, const std::string& file) {
    std::vector<SodToken> out;
    std::size_t i = 0;
    int line = 1;
    int column = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        const int l = line;
        const int col = column;
        std::size_t len = 0;
        SodTok kind;
        std::string value;

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i + len < text.size() && is_ident(text[i + len])) ++len;
            kind = SodTok::Ident;
            value = std::string(text.substr(i, len));
        } else if (c == '$') {
            len = 1;
            while (i + len < text.size() && is_ident(text[i + len])) ++len;
            if (len == 1) throw LexError(file, l, col, "expected placeholder name after '$'");
            kind = SodTok::Hole;
            value = std::string(text.substr(i + 1, len - 1));
        } else if (is_digit(c) || ((c == '-' || c == '.') && i + 1 < text.size() && is_digit(text[i + 1]))) {
            if (c == '-') ++len;
            while (i + len < text.size() && is_digit(text[i + len])) ++len;
            if (i + len < text.size() && text[i + len] == '.') {
                ++len;
                while (i + len < text.size() && is_digit(text[i + len])) ++len;
            }
            if (i + len < text.size() && (text[i + len] == 'e' || text[i + len] == 'E')) {
                std::size_t exp = len + 1;
                if (i + exp < text.size() && (text[i + exp] == '+' || text[i + exp] == '-')) ++exp;
                if (i + exp < text.size() && is_digit(text[i + exp])) {
                    len = exp;
                    while (i + len < text.size() && is_digit(text[i + len])) ++len;
                }
            }
            kind = SodTok::Number;
            value = std::string(text.substr(i, len));
        } else if (c == ':' && i + 1 < text.size() && text[i + 1] == '=') {
            len = 2;
            kind = SodTok::Assign;
            value = ":=";
        } else {
            len = 1;
            value = std::string(1, c);
            switch (c) {
                case '(': kind = SodTok::LParen; break;
                case ')': kind = SodTok::RParen; break;
                case ',': kind = SodTok::Comma; break;
                case ';': kind = SodTok::Semi; break;
                case '%': kind = SodTok::Percent; break;
                default: throw LexError(file, l, col, std::string("illegal character '") + c + "'");
            }
        }
        out.push_back({kind, std::move(value), l, col});
        advance(len);
    }
    out.push_back({SodTok::Eof, "", line, column});
    return out;
}

class SodParser {
public:
    SodParser(std::vector<SodToken> tokens, std::string file, ParseOptions options)
        : tokens_(std::move(tokens)), file_(std::move(file)), options_(options) {}

    std::vector<StrategyAst> file() {
        std::vector<StrategyAst> out;
        while (peek().kind != SodTok::Eof) out.push_back(strategy());
        return out;
    }

private:
    struct Typed {
        StrategyExpr expr;
        TargetKind kind;
    };

    const SodToken& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }

    const SodToken& take() {
        const auto& t = peek();
        if (pos_ < tokens_.size() - 1) ++pos_;
        return t;
    }

    bool is_word(std::string_view word) const {
        return peek().kind == SodTok::Ident && peek().text == word;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        const auto& t = peek();
        throw ParseError(file_, t.line, t.column, "expected " + expected + ", found " + describe(t));
    }

    std::string at(const SodToken& t) const {
        return (file_.empty() ? std::string("<input>") : file_) + ":" + std::to_string(t.line) + ":" +
               std::to_string(t.column) + ": ";
    }

    const SodToken& expect(SodTok kind, const char* what) {
        if (peek().kind != kind) fail(what);
        return take();
    }

    StrategyAst strategy() {
        StrategyAst s;
        s.name = expect(SodTok::Ident, "strategy name").text;
        if (s.name == "and" || s.name == "or" || s.name == "butnot") {
            throw ParseError(file_, tokens_[pos_ - 1].line, tokens_[pos_ - 1].column,
                             "'" + s.name + "' is reserved and cannot name a strategy");
        }
        expect(SodTok::Assign, "':='");
        Typed body = or_expr();
        expect(SodTok::Semi, "';'");
        s.expr = std::move(body.expr);
        s.target_kind = body.kind;
        return s;
    }

    Typed combine(StrategyExpr::Kind op, Typed left, Typed right, const SodToken& op_token) {
        if (left.kind != right.kind) {
            throw StrategyTypeError(at(op_token) + "operands of '" + op_token.text + "' mix " +
                                    std::string(to_string(left.kind)) + " and " +
                                    std::string(to_string(right.kind)) + " metrics");
        }
        return {StrategyExpr::binary(op, std::move(left.expr), std::move(right.expr)), left.kind};
    }

    Typed or_expr() {
        Typed left = and_expr();
        while (is_word("or")) {
            SodToken op = take();
            left = combine(StrategyExpr::Kind::Or, std::move(left), and_expr(), op);
        }
        return left;
    }

    Typed and_expr() {
        Typed left = atom();
        while (is_word("and") || is_word("butnot")) {
            SodToken op = take();
            auto kind = op.text == "and" ? StrategyExpr::Kind::And : StrategyExpr::Kind::ButNot;
            left = combine(kind, std::move(left), atom(), op);
        }
        return left;
    }

    Typed atom() {
        expect(SodTok::LParen, "'('");
        if (peek().kind == SodTok::Ident && peek(1).kind == SodTok::Comma) {
            const SodToken metric_tok = take();
            auto metric = parse_metric(metric_tok.text);
            if (!metric) throw NameError(at(metric_tok) + "unknown metric '" + metric_tok.text + "'");
            take();
            FilterSpec filter = filter_spec();
            expect(SodTok::RParen, "')'");
            return {StrategyExpr::atom(*metric, std::move(filter)), entity_kind(*metric)};
        }
        Typed inner = or_expr();
        expect(SodTok::RParen, "')'");
        return inner;
    }

    FilterSpec filter_spec() {
        const SodToken name_tok = expect(SodTok::Ident, "filter name");
        auto kind = parse_filter_kind(name_tok.text);
        if (!kind) throw NameError(at(name_tok) + "unknown filter '" + name_tok.text + "'");
        FilterSpec spec;
        spec.kind = *kind;
        if (peek().kind == SodTok::LParen) {
            take();
            spec.args.push_back(argument());
            while (peek().kind == SodTok::Comma) {
                take();
                spec.args.push_back(argument());
            }
            expect(SodTok::RParen, "')'");
        }
        try {
            check_filter(spec, options_.allow_holes);
        } catch (const SpecError& e) {
            throw SpecError(at(name_tok) + e.what());
        }
        return spec;
    }

    FilterArg argument() {
        if (peek().kind == SodTok::Hole) {
            const auto& t = take();
            if (!options_.allow_holes) {
                throw ParseError(file_, t.line, t.column, "placeholder $" + t.text + " outside a tuning template");
            }
            return FilterArg::placeholder(t.text);
        }
        const SodToken num = expect(SodTok::Number, "number");
        double value = 0.0;
        const char* first = num.text.data();
        const char* last = first + num.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            throw ParseError(file_, num.line, num.column, "malformed number '" + num.text + "'");
        }
        if (peek().kind == SodTok::Percent) {
            take();
            return FilterArg::percentage(value);
        }
        return FilterArg::number(value);
    }

    std::vector<SodToken> tokens_;
    std::string file_;
    ParseOptions options_;
    std::size_t pos_ = 0;
};

int precedence(StrategyExpr::Kind kind) {
    switch (kind) {
        case StrategyExpr::Kind::Or: return 1;
        case StrategyExpr::Kind::And:
        case StrategyExpr::Kind::ButNot: return 2;
        case StrategyExpr::Kind::Atom: return 3;
    }
    return 3;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_arg(const FilterArg& arg) {
    if (arg.is_hole()) return "$" + arg.hole;
    return format_number(arg.value) + (arg.percent ? "%" : "");
}

std::string format_filter(const FilterSpec& f) {
    std::string out(to_string(f.kind));
    if (f.args.empty()) return out;
    out += "(";
    for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ", ";
        out += format_arg(f.args[i]);
    }
    return out + ")";
}

void print(const StrategyExpr& e, std::string& out) {
    if (e.kind == StrategyExpr::Kind::Atom) {
        out += "(";
        out += to_string(e.metric);
        out += ", " + format_filter(e.filter) + ")";
        return;
    }
    const char* op = e.kind == StrategyExpr::Kind::And ? " and " : e.kind == StrategyExpr::Kind::Or ? " or " : " butnot ";
    const int p = precedence(e.kind);
    const auto& l = e.children[0];
    const auto& r = e.children[1];
    bool wrap_left = precedence(l.kind) < p;
    bool wrap_right = precedence(r.kind) <= p;
    if (wrap_left) out += "(";
    print(l, out);
    if (wrap_left) out += ")";
    out += op;
    if (wrap_right) out += "(";
    print(r, out);
    if (wrap_right) out += ")";
}

template <typename Fn>
void for_each_atom(const StrategyExpr& e, Fn&& fn) {
    if (e.kind == StrategyExpr::Kind::Atom) {
        fn(e);
        return;
    }
    for (const auto& child : e.children) for_each_atom(child, fn);
}

void bind_in_place(StrategyExpr& e, const std::map<std::string, FilterArg>& values) {
    if (e.kind == StrategyExpr::Kind::Atom) {
        for (auto& arg : e.filter.args) {
            if (!arg.is_hole()) continue;
            auto it = values.find(arg.hole);
            if (it == values.end()) throw SpecError("no value bound for $" + arg.hole);
            arg = it->second;
        }
        check_filter(e.filter);
        return;
    }
    for (auto& child : e.children) bind_in_place(child, values);
}

}  // namespace

StrategyExpr StrategyExpr::atom(Metric metric, FilterSpec filter) {
    StrategyExpr e;
    e.kind = Kind::Atom;
    e.metric = metric;
    e.filter = std::move(filter);
    return e;
}

StrategyExpr StrategyExpr::binary(Kind kind, StrategyExpr left, StrategyExpr right) {
    StrategyExpr e;
    e.kind = kind;
    e.children.push_back(std::move(left));
    e.children.push_back(std::move(right));
    return e;
}

std::vector<StrategyAst> parse_strategies(std::string_view text, const std::string& file, ParseOptions options) {
    return SodParser(lex(text, file), file, options).file();
}

StrategyAst parse_strategy(std::string_view text, const std::string& file, ParseOptions options) {
    auto all = parse_strategies(text, file, options);
    if (all.size() != 1) {
        throw ParseError(file, 1, 1, "expected exactly one strategy, found " + std::to_string(all.size()));
    }
    return std::move(all.front());
}

std::vector<StrategyAst> load_strategies(const std::string& path, ParseOptions options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read strategy file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_strategies(buf.str(), path, options);
}

std::string to_sod(const StrategyExpr& expr) {
    std::string out;
    print(expr, out);
    return out;
}

std::string to_sod(const StrategyAst& strategy) {
    return strategy.name + " := " + to_sod(strategy.expr) + ";";
}

std::string to_sod(const FilterSpec& filter) {
    return format_filter(filter);
}

std::string to_sod(const FilterArg& arg) {
    return format_arg(arg);
}

std::vector<Metric> metrics_used(const StrategyAst& strategy) {
    std::set<Metric> seen;
    for_each_atom(strategy.expr, [&](const StrategyExpr& atom) { seen.insert(atom.metric); });
    return {seen.begin(), seen.end()};
}

std::set<std::string> holes(const StrategyAst& strategy) {
    std::set<std::string> out;
    for_each_atom(strategy.expr, [&](const StrategyExpr& atom) {
        for (const auto& arg : atom.filter.args) {
            if (arg.is_hole()) out.insert(arg.hole);
        }
    });
    return out;
}

StrategyAst bind_holes(const StrategyAst& strategy, const std::map<std::string, FilterArg>& values) {
    StrategyAst bound = strategy;
    bind_in_place(bound.expr, values);
    return bound;
}

std::vector<std::string> lint_strategy(const StrategyAst& strategy, std::size_t model_size,
                                       std::size_t small_system_limit) {
    std::vector<std::string> warnings;
    if (model_size >= small_system_limit) return warnings;
    for_each_atom(strategy.expr, [&](const StrategyExpr& atom) {
        const auto kind = atom.filter.kind;
        if (kind != FilterKind::TopValues && kind != FilterKind::BottomValues) return;
        if (atom.filter.args.empty() || !atom.filter.args[0].percent) return;
        warnings.push_back(strategy.name + ": (" + std::string(to_string(atom.metric)) + ", " +
                           format_filter(atom.filter) + ") uses a percentage on a small system (" +
                           std::to_string(model_size) + " entities, limit " + std::to_string(small_system_limit) +
                           "); prefer an absolute count");
    });
    return warnings;
}

}  // namespace flawlens
