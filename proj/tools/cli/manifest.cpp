#include "manifest.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace msch::cli {

namespace {

struct Token {
    enum Kind { Ident, Int, Punct, End } kind = End;
    std::string text;
    std::size_t line = 1, column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/' || c == '\''; }

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        std::size_t j = i;
        if (ident_start(c)) {
            ++j;
            while (j < s.size() &&
                   (ident_char(s[j]) || (s[j] == '-' && j + 1 < s.size() && ident_start(s[j + 1]))))
                ++j;
            t.kind = Token::Ident;
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            ++j;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Token::Int;
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            j += 2;
            t.kind = Token::Punct;
        } else if (std::string("{}();:=,^").find(c) != std::string::npos) {
            ++j;
            t.kind = Token::Punct;
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        t.text = s.substr(i, j - i);
        advance(j - i);
        out.push_back(t);
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

enum class Arg { Scheme, Monoid, Bundle, Property, Degree };

struct Signature {
    std::vector<Arg> args;
    std::size_t optional = 0;  // trailing optional arguments
};

const std::map<std::string, Signature>& signatures() {
    static const std::map<std::string, Signature> s{
        {"spec", {{Arg::Scheme}}},        {"describe", {{Arg::Scheme}}},
        {"units", {{Arg::Scheme}}},       {"quotient", {{Arg::Scheme}}},
        {"pic", {{Arg::Scheme}}},         {"cohomology", {{Arg::Scheme, Arg::Degree}, 1}},
        {"class-group", {{Arg::Scheme}}}, {"cartier", {{Arg::Scheme}}},
        {"check", {{Arg::Property, Arg::Scheme}}}, {"vanishing", {{Arg::Scheme}}},
        {"export", {{Arg::Monoid}}},      {"decompose", {{Arg::Bundle}}},
    };
    return s;
}

const std::set<std::string>& properties() {
    static const std::set<std::string> p{"s-smooth",    "s-cancellative", "cancellative", "smooth",
                                         "torsion-free", "seminormal",     "separated",    "connected"};
    return p;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    Manifest run() {
        while (peek().kind != Token::End) {
            const Token& t = peek();
            if (is("monoid")) {
                define(t, parse_monoid());
            } else if (is("scheme")) {
                define(t, parse_scheme());
            } else if (is("bundle")) {
                define(t, parse_bundle());
            } else if (is("compute")) {
                m_.tasks.push_back(parse_task());
            } else {
                fail(t, "expected monoid, scheme, bundle or compute");
            }
        }
        return m_;
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Manifest m_;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool is(const std::string& text, std::size_t k = 0) const {
        return peek(k).kind != Token::End && peek(k).text == text;
    }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParseError(t.line, t.column, msg + (t.kind == Token::End ? " at end of input" : ", found '" + t.text + "'"));
    }
    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    void expect(const std::string& text) {
        if (!is(text)) fail(peek(), "expected '" + text + "'");
        ++pos_;
    }
    bool accept(const std::string& text) {
        if (!is(text)) return false;
        ++pos_;
        return true;
    }
    Token ident() {
        if (peek().kind != Token::Ident) fail(peek(), "expected a name");
        return next();
    }
    long long integer() {
        if (peek().kind != Token::Int) fail(peek(), "expected an integer");
        return std::stoll(next().text);
    }
    std::size_t natural() {
        Token t = peek();
        long long v = integer();
        if (v < 0) fail(t, "expected a non-negative integer");
        return static_cast<std::size_t>(v);
    }

    bool defined(const std::string& name) const {
        return m_.monoid(name) || m_.scheme(name) || m_.bundle(name);
    }
    void define(const Token& at, Definition d) {
        std::string name = std::visit([](const auto& x) { return x.name; }, d);
        if (defined(name)) throw ParseError(at.line, at.column, "'" + name + "' is already defined");
        m_.definitions.push_back(std::move(d));
    }
    void check_new(const Token& t) {
        if (defined(t.text)) fail(t, "name already defined");
    }

    // juxtaposed id(^int)? or "1", up to one of the stop tokens
    Word word(const std::set<std::string>& stops) {
        Word w;
        if (peek().kind == Token::Int && peek().text == "1") {
            ++pos_;
            return w;
        }
        while (peek().kind == Token::Ident && !stops.count(peek().text)) {
            std::string g = next().text;
            Exponent e = 1;
            if (accept("^")) e = integer();
            w.emplace_back(g, e);
        }
        if (w.empty()) fail(peek(), "expected a word");
        return w;
    }

    Exponents resolve(const Word& w, const MonoidPresentation& p, const Token& at) {
        Exponents e(p.size(), 0);
        for (const auto& [g, k] : w) {
            auto i = p.index_of(g);
            if (!i) fail(at, "unknown generator '" + g + "'");
            e[*i] += k;
        }
        if (!p.is_element(e)) fail(at, "negative exponent on a generator that is not inverted");
        return e;
    }

    MonoidDef parse_monoid() {
        expect("monoid");
        Token name = ident();
        check_new(name);
        expect("{");
        expect("gens");
        expect(":");
        std::vector<std::string> gens;
        while (peek().kind == Token::Ident) {
            Token g = next();
            for (const auto& h : gens)
                if (h == g.text) fail(g, "repeated generator");
            gens.push_back(g.text);
        }
        if (gens.empty()) fail(peek(), "expected generators");
        expect(";");
        MonoidPresentation p(gens);
        if (accept("inv")) {
            expect(":");
            while (peek().kind == Token::Ident) {
                Token g = next();
                auto i = p.index_of(g.text);
                if (!i) fail(g, "unknown generator");
                p.set_inverted(*i);
            }
            expect(";");
        }
        while (accept("rel")) {
            expect(":");
            Token at = peek();
            Exponents l = resolve(word({}), p, at);
            expect("=");
            at = peek();
            Exponents r = resolve(word({}), p, at);
            expect(";");
            p.add_relation(l, r);
        }
        expect("}");
        accept(";");
        return MonoidDef{name.text, p};
    }

    const MonoidDef& monoid_ref() {
        Token t = ident();
        const MonoidDef* m = m_.monoid(t.text);
        if (!m) fail(t, "unknown monoid");
        return *m;
    }

    MonoidHom map_list(const MonoidPresentation& from, const MonoidPresentation& to) {
        MonoidHom h{from.size(), to.size(), std::vector<Exponents>(from.size())};
        std::vector<bool> seen(from.size(), false);
        do {
            Token g = ident();
            auto i = from.index_of(g.text);
            if (!i) fail(g, "unknown generator");
            if (seen[*i]) fail(g, "generator mapped twice");
            seen[*i] = true;
            expect("->");
            Token at = peek();
            h.images[*i] = resolve(word({}), to, at);
        } while (peek(0).text == "," && !(peek(1).kind == Token::Ident && peek(2).text == ":") && accept(","));
        for (std::size_t i = 0; i < from.size(); ++i)
            if (!seen[i]) fail(peek(), "generator '" + from.name(i) + "' is not mapped");
        return h;
    }

    SchemeDef parse_scheme() {
        expect("scheme");
        Token name = ident();
        check_new(name);
        expect("=");
        SchemeDef d;
        d.name = name.text;
        Token kind = ident();
        if (kind.text == "spec") {
            d.kind = SchemeDef::Kind::Spec;
            expect("(");
            d.first = monoid_ref().name;
            expect(")");
        } else if (kind.text == "P") {
            d.kind = SchemeDef::Kind::Projective;
            expect("(");
            d.dimension = natural();
            expect(")");
        } else if (kind.text == "product") {
            d.kind = SchemeDef::Kind::Product;
            expect("(");
            for (std::string* s : {&d.first, &d.second}) {
                Token t = ident();
                if (!m_.scheme(t.text)) fail(t, "unknown scheme");
                *s = t.text;
                if (s == &d.first) expect(",");
            }
            expect(")");
        } else if (kind.text == "glue") {
            d.kind = SchemeDef::Kind::Glue;
            parse_glue(d);
        } else {
            fail(kind, "expected spec, P, product or glue");
        }
        accept(";");
        return d;
    }

    void parse_glue(SchemeDef& d) {
        expect("{");
        auto chart = [&](const Token& t) -> const ChartDef& {
            for (const auto& c : d.charts)
                if (c.name == t.text) return c;
            fail(t, "unknown chart");
        };
        while (!accept("}")) {
            if (accept("chart")) {
                Token c = ident();
                for (const auto& e : d.charts)
                    if (e.name == c.text) fail(c, "repeated chart");
                expect("=");
                expect("spec");
                expect("(");
                d.charts.push_back({c.text, monoid_ref().name});
                expect(")");
                expect(";");
            } else if (accept("overlap")) {
                OverlapDef o;
                Token a = ident(), b = ident();
                o.first = chart(a).name;
                o.second = chart(b).name;
                if (o.first == o.second) fail(b, "an overlap needs two different charts");
                expect("=");
                expect("spec");
                expect("(");
                const MonoidDef& w = monoid_ref();
                o.monoid = w.name;
                expect(")");
                expect("via");
                bool have_first = false, have_second = false;
                for (int k = 0; k < 2; ++k) {
                    if (k) expect(",");
                    Token c = ident();
                    expect(":");
                    const MonoidDef* cm = m_.monoid(chart(c).monoid);
                    if (c.text == o.first && !have_first) {
                        o.from_first = map_list(cm->presentation, w.presentation);
                        have_first = true;
                    } else if (c.text == o.second && !have_second) {
                        o.from_second = map_list(cm->presentation, w.presentation);
                        have_second = true;
                    } else {
                        fail(c, "expected the maps of " + o.first + " and " + o.second);
                    }
                }
                expect(";");
                d.overlaps.push_back(o);
            } else {
                fail(peek(), "expected chart, overlap or '}'");
            }
        }
        if (d.charts.empty()) fail(peek(), "glue needs at least one chart");
    }

    BundleDef parse_bundle() {
        expect("bundle");
        Token name = ident();
        check_new(name);
        BundleDef b;
        b.name = name.text;
        expect("on");
        Token x = ident();
        if (!m_.scheme(x.text)) fail(x, "unknown scheme");
        b.scheme = x.text;
        expect("rank");
        b.rank = natural();
        if (b.rank == 0) fail(peek(), "rank must be positive");
        expect("{");
        while (accept("transition")) {
            Token at = peek();
            std::size_t i = natural(), j = natural();
            if (b.transitions.count({i, j})) fail(at, "repeated transition");
            expect("=");
            TransitionDef t;
            expect("(");
            do t.units.push_back(word({}));
            while (accept(","));
            expect(")");
            expect("(");
            while (peek().kind == Token::Int) t.perm.push_back(natural());
            expect(")");
            expect(";");
            if (t.units.size() != b.rank || t.perm.size() != b.rank) fail(at, "transition does not match the rank");
            b.transitions[{i, j}] = t;
        }
        expect("}");
        accept(";");
        return b;
    }

    Task parse_task() {
        expect("compute");
        Token name = ident();
        auto sig = signatures().find(name.text);
        if (sig == signatures().end()) fail(name, "unknown task");
        Task t{name.text, {}};
        expect("(");
        std::vector<Token> args;
        if (!is(")")) do {
                if (peek().kind != Token::Ident && peek().kind != Token::Int) fail(peek(), "expected an argument");
                args.push_back(next());
            } while (accept(","));
        expect(")");
        accept(";");
        const auto& want = sig->second;
        if (args.size() > want.args.size() || args.size() + want.optional < want.args.size())
            fail(name, "wrong number of arguments for " + name.text);
        for (std::size_t k = 0; k < args.size(); ++k) {
            const Token& a = args[k];
            bool ok = false;
            switch (want.args[k]) {
            case Arg::Scheme: ok = m_.scheme(a.text) || m_.monoid(a.text); break;
            case Arg::Monoid: ok = m_.monoid(a.text) != nullptr; break;
            case Arg::Bundle: ok = m_.bundle(a.text) != nullptr; break;
            case Arg::Property: ok = properties().count(a.text) > 0; break;
            case Arg::Degree: ok = a.kind == Token::Int && a.text[0] != '-'; break;
            }
            if (!ok) fail(a, "bad argument for " + name.text);
            t.args.push_back(a.text);
        }
        return t;
    }
};

std::string render_word(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& [g, e] : w) {
        if (!out.empty()) out += " ";
        out += g;
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string render_map(const MonoidHom& h, const MonoidPresentation& from, const MonoidPresentation& to) {
    std::string out;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (i) out += ", ";
        out += from.name(i) + " -> " + msch::render_word(to, h.images[i]);
    }
    return out;
}

} // namespace

std::string Task::to_string() const {
    std::string out = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i];
    return out + ")";
}

const MonoidDef* Manifest::monoid(const std::string& name) const {
    for (const auto& d : definitions)
        if (auto m = std::get_if<MonoidDef>(&d); m && m->name == name) return m;
    return nullptr;
}

const SchemeDef* Manifest::scheme(const std::string& name) const {
    for (const auto& d : definitions)
        if (auto m = std::get_if<SchemeDef>(&d); m && m->name == name) return m;
    return nullptr;
}

const BundleDef* Manifest::bundle(const std::string& name) const {
    for (const auto& d : definitions)
        if (auto m = std::get_if<BundleDef>(&d); m && m->name == name) return m;
    return nullptr;
}

Manifest parse(const std::string& text) { return Parser(text).run(); }

std::string render(const Manifest& m) {
    std::ostringstream out;
    for (const auto& d : m.definitions) {
        if (const auto* md = std::get_if<MonoidDef>(&d)) {
            const auto& p = md->presentation;
            out << "monoid " << md->name << " { gens:";
            for (const auto& g : p.names()) out << " " << g;
            out << ";";
            std::string inv;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p.inverted(i)) inv += " " + p.name(i);
            if (!inv.empty()) out << " inv:" << inv << ";";
            for (const auto& r : p.relations())
                out << " rel: " << msch::render_word(p, r.lhs) << " = " << msch::render_word(p, r.rhs) << ";";
            out << " }\n";
        } else if (const auto* sd = std::get_if<SchemeDef>(&d)) {
            out << "scheme " << sd->name << " = ";
            switch (sd->kind) {
            case SchemeDef::Kind::Spec: out << "spec(" << sd->first << ");\n"; break;
            case SchemeDef::Kind::Projective: out << "P(" << sd->dimension << ");\n"; break;
            case SchemeDef::Kind::Product: out << "product(" << sd->first << ", " << sd->second << ");\n"; break;
            case SchemeDef::Kind::Glue:
                out << "glue {\n";
                for (const auto& c : sd->charts) out << "  chart " << c.name << " = spec(" << c.monoid << ");\n";
                for (const auto& o : sd->overlaps) {
                    auto chart_monoid = [&](const std::string& c) -> const MonoidPresentation& {
                        for (const auto& x : sd->charts)
                            if (x.name == c) return m.monoid(x.monoid)->presentation;
                        throw std::logic_error("chart");
                    };
                    const auto& w = m.monoid(o.monoid)->presentation;
                    out << "  overlap " << o.first << " " << o.second << " = spec(" << o.monoid << ") via " << o.first
                        << ": " << render_map(o.from_first, chart_monoid(o.first), w) << ", " << o.second << ": "
                        << render_map(o.from_second, chart_monoid(o.second), w) << ";\n";
                }
                out << "}\n";
                break;
            }
        } else {
            const auto& bd = std::get<BundleDef>(d);
            out << "bundle " << bd.name << " on " << bd.scheme << " rank " << bd.rank << " {\n";
            for (const auto& [ij, t] : bd.transitions) {
                out << "  transition " << ij.first << " " << ij.second << " = (";
                for (std::size_t k = 0; k < t.units.size(); ++k) out << (k ? ", " : "") << render_word(t.units[k]);
                out << ") (";
                for (std::size_t k = 0; k < t.perm.size(); ++k) out << (k ? " " : "") << t.perm[k];
                out << ");\n";
            }
            out << "}\n";
        }
    }
    for (const auto& t : m.tasks) out << "compute " << t.to_string() << ";\n";
    return out.str();
}

const std::vector<std::string>& task_signatures() {
    static const std::vector<std::string> s{
        "spec(X)",        "describe(X)", "units(X)",      "quotient(X)", "pic(X)",    "cohomology(X[, i])",
        "class-group(X)", "cartier(X)",  "check(P, X)",   "vanishing(X)", "export(M)", "decompose(B)",
    };
    return s;
}

} // namespace msch::cli
