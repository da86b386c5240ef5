#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace relaxopt::tools {

namespace {

struct Node {
    virtual ~Node() = default;
    virtual double eval(double x) const = 0;
};
using NodePtr = std::unique_ptr<Node>;

struct Const : Node {
    double v;
    explicit Const(double v_) : v(v_) {}
    double eval(double) const override { return v; }
};

struct Var : Node {
    double eval(double x) const override { return x; }
};

struct Binary : Node {
    char op;
    NodePtr lhs, rhs;
    Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
    double eval(double x) const override {
        double a = lhs->eval(x), b = rhs->eval(x);
        switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
        }
        return 0.0;
    }
};

struct Unary : Node {
    double (*fn)(double);
    NodePtr arg;
    Unary(double (*f)(double), NodePtr a) : fn(f), arg(std::move(a)) {}
    double eval(double x) const override { return fn(arg->eval(x)); }
};

double sign_fn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse() {
        auto node = expr();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("trailing input at '" + s_.substr(pos_) + "'");
        return node;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        auto node = term();
        for (;;) {
            if (consume('+'))
                node = std::make_unique<Binary>('+', std::move(node), term());
            else if (consume('-'))
                node = std::make_unique<Binary>('-', std::move(node), term());
            else
                return node;
        }
    }

    NodePtr term() {
        auto node = factor();
        for (;;) {
            if (consume('*'))
                node = std::make_unique<Binary>('*', std::move(node), factor());
            else if (consume('/'))
                node = std::make_unique<Binary>('/', std::move(node), factor());
            else
                return node;
        }
    }

    NodePtr factor() {
        if (consume('-')) return std::make_unique<Binary>('-', std::make_unique<Const>(0.0), factor());
        if (consume('+')) return factor();
        auto base = primary();
        if (consume('^')) return std::make_unique<Binary>('^', std::move(base), factor());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw parse_error("unexpected end of expression");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (consume('(')) {
            auto node = expr();
            if (!consume(')')) throw parse_error("missing ')'");
            return node;
        }
        throw parse_error(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        std::size_t end;
        double v = std::stod(s_.substr(pos_), &end);
        pos_ += end;
        return std::make_unique<Const>(v);
    }

    NodePtr identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name == "x") return std::make_unique<Var>();
        if (name == "pi") return std::make_unique<Const>(std::numbers::pi);
        if (name == "e") return std::make_unique<Const>(std::numbers::e);

        static const std::pair<const char*, double (*)(double)> fns[] = {
            {"sin", std::sin},   {"cos", std::cos},     {"tan", std::tan},
            {"exp", std::exp},   {"log", std::log},     {"log10", std::log10},
            {"sqrt", std::sqrt}, {"cbrt", std::cbrt},   {"abs", std::fabs},
            {"floor", std::floor}, {"ceil", std::ceil}, {"sign", sign_fn},
        };
        for (auto& [fname, fptr] : fns) {
            if (name == fname) {
                if (!consume('(')) throw parse_error(name + " needs parentheses");
                auto arg = expr();
                if (!consume(')')) throw parse_error("missing ')' after " + name);
                return std::make_unique<Unary>(fptr, std::move(arg));
            }
        }
        throw parse_error("unknown identifier: " + name);
    }
};

} // namespace

std::function<double(double)> parse_expression(const std::string& text) {
    Parser parser(text);
    std::shared_ptr<Node> root(parser.parse().release());
    return [root](double x) { return root->eval(x); };
}

ParsedObjective load_objective_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw parse_error("cannot open objective file: " + path);
    ParsedObjective out;
    bool have_min = false, have_max = false, have_f = false;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "xmin") {
            out.x_min = std::stod(value);
            have_min = true;
        } else if (key == "xmax") {
            out.x_max = std::stod(value);
            have_max = true;
        } else if (key == "f") {
            out.expression_text = value;
            out.f = parse_expression(value);
            have_f = true;
        } else {
            throw parse_error("unknown key in objective file: " + key);
        }
    }
    if (!have_min || !have_max || !have_f)
        throw parse_error("objective file needs xmin, xmax and f entries");
    return out;
}

} // namespace relaxopt::tools
