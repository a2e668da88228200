#include "geoflow/symfun.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>

#include "geoflow/dual.hpp"

namespace geoflow {

namespace {

// ---------------------------------------------------------------- tokenizer

enum class Tok { Number, Symbol, Ident, Plus, Minus, Star, Slash, Caret, LPar, RPar, End };

struct Token {
    Tok kind;
    std::size_t begin = 0;
    std::size_t end = 0;
    double number = 0.0;     // Tok::Number
    int symbol_index = 0;    // Tok::Symbol
    std::string ident;       // Tok::Ident
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& current() const { return cur_; }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        cur_ = Token{};
        cur_.begin = pos_;
        if (pos_ >= text_.size()) {
            cur_.kind = Tok::End;
            cur_.end = pos_;
            return;
        }
        const char c = text_[pos_];
        switch (c) {
            case '+': single(Tok::Plus); return;
            case '-': single(Tok::Minus); return;
            case '*': single(Tok::Star); return;
            case '/': single(Tok::Slash); return;
            case '^': single(Tok::Caret); return;
            case '(': single(Tok::LPar); return;
            case ')': single(Tok::RPar); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            lexNumber();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            lexIdent();
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

  private:
    void single(Tok k) {
        cur_.kind = k;
        cur_.end = ++pos_;
    }

    void lexNumber() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected digits after decimal point", pos_);
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t epos = pos_ + 1;
            if (epos < text_.size() && (text_[epos] == '+' || text_[epos] == '-')) ++epos;
            if (epos < text_.size() && std::isdigit(static_cast<unsigned char>(text_[epos]))) {
                ++epos;
                while (epos < text_.size() && std::isdigit(static_cast<unsigned char>(text_[epos]))) ++epos;
                pos_ = epos;
            }
            // otherwise the 'e' belongs to a following identifier; leave it
        }
        const std::string_view slice = text_.substr(start, pos_ - start);
        double value = 0.0;
        const auto res = std::from_chars(slice.data(), slice.data() + slice.size(), value);
        if (res.ec != std::errc{} || res.ptr != slice.data() + slice.size())
            throw ParseError("malformed number literal", start);
        cur_.kind = Tok::Number;
        cur_.number = value;
        cur_.end = pos_;
    }

    void lexIdent() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view word = text_.substr(start, pos_ - start);
        cur_.end = pos_;
        if (word == "harmonic" || word == "mean") {
            cur_.kind = Tok::Ident;
            cur_.ident = std::string(word);
            return;
        }
        if (word.size() >= 2 && word[0] == 'S') {
            bool digits = true;
            for (std::size_t i = 1; i < word.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(word[i]))) digits = false;
            if (digits) {
                int idx = 0;
                const auto res = std::from_chars(word.data() + 1, word.data() + word.size(), idx);
                if (res.ec != std::errc{})
                    throw ParseError("malformed symbol index", start + 1);
                if (idx > kMaxSymbolIndex)
                    throw ParseError("symbol index " + std::to_string(idx) + " exceeds cap " +
                                         std::to_string(kMaxSymbolIndex),
                                     start);
                cur_.kind = Tok::Symbol;
                cur_.symbol_index = idx;
                return;
            }
        }
        throw ParseError("unknown identifier '" + std::string(word) + "'", start);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token cur_;
};

// ------------------------------------------------------------------- parser

using NodePtr = std::unique_ptr<ExprNode>;

class Parser {
  public:
    explicit Parser(std::string_view text) : lex_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        if (lex_.current().kind != Tok::End)
            throw ParseError("unexpected trailing input", lex_.current().begin);
        return e;
    }

  private:
    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            const Tok k = lex_.current().kind;
            if (k != Tok::Plus && k != Tok::Minus) return lhs;
            lex_.advance();
            NodePtr rhs = term();
            lhs = binary(k == Tok::Plus ? NodeKind::Add : NodeKind::Sub, std::move(lhs), std::move(rhs));
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            const Tok k = lex_.current().kind;
            if (k != Tok::Star && k != Tok::Slash) return lhs;
            lex_.advance();
            NodePtr rhs = factor();
            if (k == Tok::Slash && rhs->kind == NodeKind::Number && rhs->number == 0.0)
                throw ParseError("division by zero literal", rhs->begin);
            lhs = binary(k == Tok::Star ? NodeKind::Mul : NodeKind::Div, std::move(lhs), std::move(rhs));
        }
    }

    NodePtr factor() {
        NodePtr base = atom();
        if (lex_.current().kind != Tok::Caret) return base;
        lex_.advance();
        // exponent: optionally signed integer literal
        int sign = 1;
        std::size_t expBegin = lex_.current().begin;
        if (lex_.current().kind == Tok::Minus || lex_.current().kind == Tok::Plus) {
            if (lex_.current().kind == Tok::Minus) sign = -1;
            lex_.advance();
        }
        if (lex_.current().kind != Tok::Number)
            throw ParseError("expected integer exponent after '^'", lex_.current().begin);
        const Token t = lex_.current();
        const double v = t.number;
        if (v != std::floor(v) || std::abs(v) > 1e9)
            throw ParseError("exponent must be an integer", t.begin);
        const int e = sign * static_cast<int>(v);
        if (std::abs(e) > kMaxPowExponent)
            throw ParseError("exponent magnitude exceeds " + std::to_string(kMaxPowExponent), expBegin);
        lex_.advance();
        auto node = std::make_unique<ExprNode>();
        node->kind = NodeKind::Pow;
        node->exponent = e;
        node->begin = base->begin;
        node->end = t.end;
        node->lhs = std::move(base);
        return node;
    }

    NodePtr atom() {
        const Token t = lex_.current();
        switch (t.kind) {
            case Tok::Number: {
                lex_.advance();
                auto node = std::make_unique<ExprNode>();
                node->kind = NodeKind::Number;
                node->number = t.number;
                node->begin = t.begin;
                node->end = t.end;
                return node;
            }
            case Tok::Symbol: {
                lex_.advance();
                auto node = std::make_unique<ExprNode>();
                node->kind = NodeKind::Symbol;
                node->symbol_index = t.symbol_index;
                node->begin = t.begin;
                node->end = t.end;
                return node;
            }
            case Tok::Ident: {
                lex_.advance();
                auto node = std::make_unique<ExprNode>();
                node->kind = NodeKind::Builtin;
                node->builtin = (t.ident == "harmonic") ? BuiltinFn::Harmonic : BuiltinFn::Mean;
                node->begin = t.begin;
                node->end = t.end;
                return node;
            }
            case Tok::LPar: {
                lex_.advance();
                NodePtr inner = expr();
                if (lex_.current().kind != Tok::RPar)
                    throw ParseError("expected ')'", lex_.current().begin);
                inner->begin = t.begin;
                inner->end = lex_.current().end;
                lex_.advance();
                return inner;  // parentheses are transparent in the AST
            }
            case Tok::Minus: {
                lex_.advance();
                NodePtr inner = atom();
                auto node = std::make_unique<ExprNode>();
                node->kind = NodeKind::Neg;
                node->begin = t.begin;
                node->end = inner->end;
                node->lhs = std::move(inner);
                return node;
            }
            default:
                throw ParseError("expected number, symbol, builtin, '(' or '-'", t.begin);
        }
    }

    static NodePtr binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
        auto node = std::make_unique<ExprNode>();
        node->kind = kind;
        node->begin = lhs->begin;
        node->end = rhs->end;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }

    Lexer lex_;
};

// ------------------------------------------------------------ pretty printer

// Precedence levels: additive 1, multiplicative 2, power/atom 3.
int node_prec(const ExprNode& n) {
    switch (n.kind) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        default: return 3;  // Pow, Neg, Number, Symbol, Builtin
    }
}

std::string shortest_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void print_node(const ExprNode& n, int min_prec, std::string& out);

void print_child(const ExprNode& child, int min_prec, std::string& out) {
    if (node_prec(child) < min_prec) {
        out += '(';
        print_node(child, 1, out);
        out += ')';
    } else {
        print_node(child, min_prec, out);
    }
}

void print_node(const ExprNode& n, int /*min_prec*/, std::string& out) {
    switch (n.kind) {
        case NodeKind::Number:
            out += shortest_double(n.number);
            return;
        case NodeKind::Symbol:
            out += 'S';
            out += std::to_string(n.symbol_index);
            return;
        case NodeKind::Builtin:
            out += (n.builtin == BuiltinFn::Harmonic) ? "harmonic" : "mean";
            return;
        case NodeKind::Add:
            print_child(*n.lhs, 1, out);
            out += " + ";
            print_child(*n.rhs, 2, out);
            return;
        case NodeKind::Sub:
            print_child(*n.lhs, 1, out);
            out += " - ";
            print_child(*n.rhs, 2, out);
            return;
        case NodeKind::Mul:
            print_child(*n.lhs, 2, out);
            out += '*';
            print_child(*n.rhs, 3, out);
            return;
        case NodeKind::Div:
            print_child(*n.lhs, 2, out);
            out += '/';
            print_child(*n.rhs, 3, out);
            return;
        case NodeKind::Pow: {
            // The base must print as a plain atom: anything that is not a
            // number/symbol/builtin/negated atom gets parentheses, and a
            // nested Pow needs them too ("(S1^2)^3").
            const ExprNode& base = *n.lhs;
            const bool atom_like = base.kind == NodeKind::Number || base.kind == NodeKind::Symbol ||
                                   base.kind == NodeKind::Builtin || base.kind == NodeKind::Neg;
            if (atom_like && base.kind == NodeKind::Neg) {
                // "-X^e" parses as Pow(Neg(X), e), so Neg bases print bare
                // only when their operand is itself atom-shaped without Pow.
                print_node(base, 3, out);
            } else if (atom_like) {
                print_node(base, 3, out);
            } else {
                out += '(';
                print_node(base, 1, out);
                out += ')';
            }
            out += '^';
            out += std::to_string(n.exponent);
            return;
        }
        case NodeKind::Neg: {
            out += '-';
            const ExprNode& child = *n.lhs;
            // atom := "-" atom, so the operand must be atom-shaped; a Pow or
            // binary child needs parentheses ("-(S1^2)"), because "-S1^2"
            // would reparse as Pow(Neg(S1),2).
            const bool atom_like = child.kind == NodeKind::Number || child.kind == NodeKind::Symbol ||
                                   child.kind == NodeKind::Builtin || child.kind == NodeKind::Neg;
            if (atom_like) {
                print_node(child, 3, out);
            } else {
                out += '(';
                print_node(child, 1, out);
                out += ')';
            }
            return;
        }
    }
}

// ----------------------------------------------------------------- evaluator

std::string node_text(const ExprNode& node, const std::string& source) {
    if (node.end > node.begin && node.end <= source.size())
        return source.substr(node.begin, node.end - node.begin);
    return "<synthesized>";
}

template <class T>
T ipow(T base, int e, const ExprNode& node, const std::string& source) {
    if (e == 0) return T(1.0);
    bool invert = e < 0;
    int k = invert ? -e : e;
    T acc(1.0);
    T b = base;
    while (k > 0) {
        if (k & 1) acc = acc * b;
        b = b * b;
        k >>= 1;
    }
    if (invert) {
        if (value_of(acc) == 0.0)
            throw EvalError("negative power of zero in subexpression '" + node_text(node, source) + "'");
        return T(1.0) / acc;
    }
    return acc;
}

template <class T>
T eval_node(const ExprNode& node, const std::vector<T>& s, const std::vector<T>& lambda,
            const std::string& source) {
    const int n = static_cast<int>(lambda.size());
    switch (node.kind) {
        case NodeKind::Number:
            return T(node.number);
        case NodeKind::Symbol:
            if (node.symbol_index > n)
                throw EvalError("symbol S" + std::to_string(node.symbol_index) +
                                " exceeds dimension n=" + std::to_string(n));
            return s[static_cast<std::size_t>(node.symbol_index)];
        case NodeKind::Builtin:
            if (node.builtin == BuiltinFn::Mean) return s[1] / T(static_cast<double>(n));
            // harmonic = Sn / S(n-1); requires every lambda_i nonzero
            for (const T& l : lambda)
                if (value_of(l) == 0.0)
                    throw EvalError("harmonic mean undefined: a principal curvature is zero");
            if (value_of(s[static_cast<std::size_t>(n - 1)]) == 0.0)
                throw EvalError("division by zero in subexpression 'harmonic'");
            return s[static_cast<std::size_t>(n)] / s[static_cast<std::size_t>(n - 1)];
        case NodeKind::Add:
            return eval_node(*node.lhs, s, lambda, source) + eval_node(*node.rhs, s, lambda, source);
        case NodeKind::Sub:
            return eval_node(*node.lhs, s, lambda, source) - eval_node(*node.rhs, s, lambda, source);
        case NodeKind::Mul:
            return eval_node(*node.lhs, s, lambda, source) * eval_node(*node.rhs, s, lambda, source);
        case NodeKind::Div: {
            const T a = eval_node(*node.lhs, s, lambda, source);
            const T b = eval_node(*node.rhs, s, lambda, source);
            if (value_of(b) == 0.0)
                throw EvalError("division by zero in subexpression '" + node_text(node, source) + "'");
            return a / b;
        }
        case NodeKind::Pow:
            return ipow(eval_node(*node.lhs, s, lambda, source), node.exponent, node, source);
        case NodeKind::Neg:
            return -eval_node(*node.lhs, s, lambda, source);
    }
    throw EvalError("corrupt expression node");
}

template <class T>
T eval_speed_t(const SpeedExpr& expr, const std::vector<T>& lambda) {
    if (!expr.root) throw EvalError("empty expression");
    if (lambda.empty()) throw EvalError("empty principal-curvature vector");
    const std::vector<T> s = eval_elementary_t<T>(lambda);
    return eval_node<T>(*expr.root, s, lambda, expr.source);
}

int max_symbol_rec(const ExprNode& n) {
    int m = -1;
    if (n.kind == NodeKind::Symbol) m = n.symbol_index;
    if (n.lhs) m = std::max(m, max_symbol_rec(*n.lhs));
    if (n.rhs) m = std::max(m, max_symbol_rec(*n.rhs));
    return m;
}

bool same_node(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number: return a.number == b.number;
        case NodeKind::Symbol: return a.symbol_index == b.symbol_index;
        case NodeKind::Builtin: return a.builtin == b.builtin;
        case NodeKind::Pow:
            return a.exponent == b.exponent && same_node(*a.lhs, *b.lhs);
        case NodeKind::Neg:
            return same_node(*a.lhs, *b.lhs);
        default:
            return same_node(*a.lhs, *b.lhs) && same_node(*a.rhs, *b.rhs);
    }
}

}  // namespace

int SpeedExpr::max_symbol_index() const { return root ? max_symbol_rec(*root) : -1; }

bool SpeedExpr::is_harmonic() const {
    return root && root->kind == NodeKind::Builtin && root->builtin == BuiltinFn::Harmonic;
}

SpeedExpr parse_speed(std::string_view text) {
    bool only_space = true;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) only_space = false;
    if (text.empty() || only_space) throw ParseError("empty expression", 0);
    Parser parser(text);
    SpeedExpr expr;
    expr.root = std::shared_ptr<const ExprNode>(parser.parse().release());
    expr.source = std::string(text);
    return expr;
}

std::string pretty_print(const SpeedExpr& expr) {
    if (!expr.root) return "";
    std::string out;
    print_node(*expr.root, 1, out);
    return out;
}

bool same_ast(const SpeedExpr& a, const SpeedExpr& b) {
    if (!a.root || !b.root) return a.root == b.root;
    return same_node(*a.root, *b.root);
}

std::vector<double> eval_elementary(const std::vector<double>& lambda) {
    if (lambda.empty()) throw EvalError("empty principal-curvature vector");
    return eval_elementary_t<double>(lambda);
}

double eval_speed(const SpeedExpr& expr, const std::vector<double>& lambda) {
    return eval_speed_t<double>(expr, lambda);
}

std::vector<double> grad_speed(const SpeedExpr& expr, const std::vector<double>& lambda) {
    const std::size_t n = lambda.size();
    std::vector<double> grad(n, 0.0);
    std::vector<Dual> dl(n);
    for (std::size_t i = 0; i < n; ++i) dl[i] = Dual(lambda[i], 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        dl[i].d = 1.0;
        grad[i] = eval_speed_t<Dual>(expr, dl).d;
        dl[i].d = 0.0;
    }
    return grad;
}

ParabolicityReport check_parabolic(const SpeedExpr& expr, int n, int samples, std::uint64_t seed) {
    if (n < 1) throw DomainError("check_parabolic requires n >= 1");
    if (samples < 1) throw DomainError("check_parabolic requires samples >= 1");
    std::mt19937_64 gen(seed);
    ParabolicityReport rep{};
    rep.samples_requested = samples;
    rep.seed = seed;
    rep.min_gradient = std::numeric_limits<double>::infinity();
    rep.max_gradient = -std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (int s = 0; s < samples; ++s) {
        for (auto& l : lambda) {
            const double u = detail::u01_from_bits(gen());
            l = kParabolicSampleLo + u * (kParabolicSampleHi - kParabolicSampleLo);
        }
        try {
            const std::vector<double> g = grad_speed(expr, lambda);
            for (double gi : g) {
                rep.min_gradient = std::min(rep.min_gradient, gi);
                rep.max_gradient = std::max(rep.max_gradient, gi);
                max_abs = std::max(max_abs, std::abs(gi));
            }
            ++rep.samples_evaluated;
        } catch (const Error&) {
            ++rep.samples_errored;
        }
    }
    if (rep.samples_evaluated == 0) {
        rep.verdict = Parabolicity::Indefinite;
    } else if (max_abs <= kFirstOrderTol) {
        rep.verdict = Parabolicity::FirstOrder;
    } else if (rep.min_gradient > 0.0) {
        rep.verdict = Parabolicity::Parabolic;
    } else if (rep.max_gradient < 0.0) {
        rep.verdict = Parabolicity::BackwardsParabolic;
    } else {
        rep.verdict = Parabolicity::Indefinite;
    }
    return rep;
}

}  // namespace geoflow
