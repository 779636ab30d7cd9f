#include "cpxcp/presentation.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <map>
#include <sstream>

namespace cpxcp {

namespace {

std::uint64_t fingerprint(const GroupPresentation& g) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    };
    mix(g.p.str());
    for (const auto& f : g.center.factors()) {
        mix(f.name);
        mix(f.order.n.str());
    }
    for (const auto* v : {&g.s, &g.xp, &g.yp})
        for (const auto& e : v->c) mix(e.str());
    return h;
}

}  // namespace

std::optional<Int> GroupPresentation::group_size() const {
    auto z = center.size();
    if (!z) return std::nullopt;
    return p * p * *z;
}

GroupPresentation make_presentation(Int p, FgAbelian center, CentralVector s,
                                    CentralVector xp, CentralVector yp) {
    GroupPresentation g;
    g.p = std::move(p);
    g.center = std::move(center);
    g.s = g.center.reduced(std::move(s));
    g.xp = g.center.reduced(std::move(xp));
    g.yp = g.center.reduced(std::move(yp));
    g.id = fingerprint(g);
    return g;
}

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::NonPrimeP: return "NonPrimeP";
        case ViolationKind::TrivialCommutator: return "TrivialCommutator";
        case ViolationKind::CommutatorOrderNotP: return "CommutatorOrderNotP";
        case ViolationKind::UnreducedExponent: return "UnreducedExponent";
        case ViolationKind::UnknownFactorName: return "UnknownFactorName";
    }
    return "?";
}

ValidationError::ValidationError(std::vector<Violation> v)
    : std::runtime_error([&v] {
          std::string s = "invalid presentation:";
          for (const auto& x : v) s += " " + to_string(x.kind) + "(" + x.detail + ")";
          return s;
      }()),
      violations(std::move(v)) {}

std::vector<Violation> validate(const GroupPresentation& pres) {
    std::vector<Violation> out;
    if (!is_prime(pres.p))
        out.push_back({ViolationKind::NonPrimeP, pres.p.str()});
    const std::size_t k = pres.center.rank();
    for (const auto* v : {&pres.s, &pres.xp, &pres.yp}) {
        if (v->c.size() != k) {
            out.push_back({ViolationKind::UnknownFactorName, "word dimension mismatch"});
            return out;
        }
    }
    if (!pres.center.is_reduced(pres.s) || !pres.center.is_reduced(pres.xp) ||
        !pres.center.is_reduced(pres.yp))
        out.push_back({ViolationKind::UnreducedExponent, "exponent outside [0, order)"});
    if (pres.s.is_zero()) {
        out.push_back({ViolationKind::TrivialCommutator, "s = 1"});
    } else if (is_prime(pres.p)) {
        CyclicOrder o = central_order(pres.center, pres.center.reduced(pres.s));
        if (!o.is_finite() || o.n != pres.p)
            out.push_back({ViolationKind::CommutatorOrderNotP,
                           o.is_finite() ? "order " + o.n.str() : "infinite order"});
    }
    return out;
}

// ---------------------------------------------------------------------------
// DSL parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        skip_ws();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::End, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                s += src_[pos_];
                bump();
            }
            tok_ = {Token::Ident, s, tok_.line, tok_.col};
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   ((c == '-' || c == '+') && pos_ + 1 < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            std::string s;
            if (c == '-' || c == '+') {
                s += c;
                bump();
            }
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                s += src_[pos_];
                bump();
            }
            tok_ = {Token::Number, s, tok_.line, tok_.col};
        } else {
            tok_ = {Token::Punct, std::string(1, c), tok_.line, tok_.col};
            bump();
        }
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    GroupPresentation parse_group() {
        expect_ident("group");
        expect_punct("{");
        bool have_p = false, have_center = false, have_s = false, have_xp = false,
             have_yp = false;
        Int p;
        std::vector<Factor> factors;
        // Raw words by factor name; resolved once the center is known.
        std::map<std::string, Int> sw, xw, yw;

        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Punct && t.text == "}") {
                lex_.next();
                break;
            }
            Token stmt = lex_.next();
            if (stmt.kind != Token::Ident) fail(stmt, "statement keyword");
            if (stmt.text == "prime") {
                p = expect_number();
                have_p = true;
            } else if (stmt.text == "center") {
                do {
                    Token name = lex_.next();
                    if (name.kind != Token::Ident) fail(name, "factor name");
                    expect_punct(":");
                    Token o = lex_.next();
                    CyclicOrder ord;
                    if (o.kind == Token::Ident && o.text == "inf") {
                        ord = CyclicOrder::infinite();
                    } else if (o.kind == Token::Number) {
                        ord = CyclicOrder::finite(Int(o.text));
                        if (ord.n < 2) fail(o, "factor order >= 2");
                    } else {
                        fail(o, "factor order (integer or 'inf')");
                    }
                    factors.push_back({name.text, ord});
                } while (consume_punct(","));
                have_center = true;
            } else if (stmt.text == "comm" || stmt.text == "xp" || stmt.text == "yp") {
                auto& dst = stmt.text == "comm" ? sw : (stmt.text == "xp" ? xw : yw);
                (stmt.text == "comm" ? have_s : stmt.text == "xp" ? have_xp : have_yp) = true;
                parse_word(dst);
            } else {
                fail(stmt, "one of prime/center/comm/xp/yp");
            }
            if (!consume_punct(";")) {
                const Token& e = lex_.peek();
                if (!(e.kind == Token::Punct && e.text == "}")) fail(e, "';' or '}'");
            }
        }
        Token end = lex_.next();
        if (end.kind != Token::End) fail(end, "end of input");

        if (!have_p) throw ParseError(1, 1, "missing 'prime'");
        if (!have_center) throw ParseError(1, 1, "missing 'center'");
        if (!have_s) throw ParseError(1, 1, "missing 'comm'");
        if (!have_xp) throw ParseError(1, 1, "missing 'xp'");
        if (!have_yp) throw ParseError(1, 1, "missing 'yp'");

        FgAbelian center;
        try {
            center = FgAbelian(std::move(factors));
        } catch (const std::invalid_argument& e) {
            throw ParseError(1, 1, e.what());
        }
        auto resolve = [&center](const std::map<std::string, Int>& word) {
            CentralVector v = center.zero();
            for (const auto& [name, exp] : word) {
                int i = center.index_of(name);
                if (i < 0)
                    throw ValidationError({{ViolationKind::UnknownFactorName, name}});
                v.c[static_cast<std::size_t>(i)] += exp;
            }
            return center.reduced(std::move(v));
        };
        GroupPresentation pres = make_presentation(p, center, resolve(sw), resolve(xw),
                                                   resolve(yw));
        auto violations = validate(pres);
        if (!violations.empty()) throw ValidationError(std::move(violations));
        return pres;
    }

  private:
    // word := "1" | term (term)*; term := NAME ("^" SIGNED_INT)?
    void parse_word(std::map<std::string, Int>& dst) {
        const Token& first = lex_.peek();
        if (first.kind == Token::Number && first.text == "1") {
            lex_.next();
            return;
        }
        bool any = false;
        while (lex_.peek().kind == Token::Ident) {
            Token name = lex_.next();
            Int exp = 1;
            if (consume_punct("^")) exp = expect_number();
            dst[name.text] += exp;
            any = true;
        }
        if (!any) fail(lex_.peek(), "word ('1' or factor terms)");
    }

    void expect_ident(const std::string& kw) {
        Token t = lex_.next();
        if (t.kind != Token::Ident || t.text != kw) fail(t, "'" + kw + "'");
    }

    void expect_punct(const std::string& ch) {
        Token t = lex_.next();
        if (t.kind != Token::Punct || t.text != ch) fail(t, "'" + ch + "'");
    }

    bool consume_punct(const std::string& ch) {
        const Token& t = lex_.peek();
        if (t.kind == Token::Punct && t.text == ch) {
            lex_.next();
            return true;
        }
        return false;
    }

    Int expect_number() {
        Token t = lex_.next();
        if (t.kind != Token::Number) fail(t, "integer");
        return Int(t.text);
    }

    [[noreturn]] void fail(const Token& t, const std::string& expected) {
        throw ParseError(t.line, t.col,
                         "expected " + expected + ", got '" +
                             (t.kind == Token::End ? "<end>" : t.text) + "'");
    }

    Lexer lex_;
};

std::string word_to_dsl(const FgAbelian& center, const CentralVector& v) {
    std::string out;
    for (std::size_t i = 0; i < center.rank(); ++i) {
        if (v.c[i] == 0) continue;
        if (!out.empty()) out += " ";
        out += center.at(i).name;
        if (v.c[i] != 1) out += "^" + v.c[i].str();
    }
    return out.empty() ? "1" : out;
}

nlohmann::json word_to_json(const FgAbelian& center, const CentralVector& v) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < center.rank(); ++i)
        if (v.c[i] != 0) j[center.at(i).name] = to_i64(v.c[i]);
    return j;
}

}  // namespace

GroupPresentation parse(const std::string& text) { return Parser(text).parse_group(); }

std::string emit(const GroupPresentation& pres, EmitFormat format) {
    if (format == EmitFormat::Dsl) {
        std::ostringstream os;
        os << "group {\n  prime " << pres.p.str() << ";\n  center ";
        for (std::size_t i = 0; i < pres.center.rank(); ++i) {
            const auto& f = pres.center.at(i);
            if (i) os << ", ";
            os << f.name << ":" << (f.order.is_finite() ? f.order.n.str() : "inf");
        }
        os << ";\n  comm " << word_to_dsl(pres.center, pres.s) << ";\n  xp "
           << word_to_dsl(pres.center, pres.xp) << ";\n  yp "
           << word_to_dsl(pres.center, pres.yp) << "\n}\n";
        return os.str();
    }
    nlohmann::json j;
    j["p"] = to_i64(pres.p);
    j["center"] = nlohmann::json::array();
    for (const auto& f : pres.center.factors()) {
        nlohmann::json jf;
        jf["name"] = f.name;
        if (f.order.is_finite())
            jf["order"] = to_i64(f.order.n);
        else
            jf["order"] = "inf";
        j["center"].push_back(jf);
    }
    j["s"] = word_to_json(pres.center, pres.s);
    j["xp"] = word_to_json(pres.center, pres.xp);
    j["yp"] = word_to_json(pres.center, pres.yp);
    return j.dump();
}

}  // namespace cpxcp
