#include "c2f/parser.hpp"

#include <cctype>
#include <sstream>

namespace c2f {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char peek2() {
        skip_ws();
        return pos + 1 < s.size() ? s[pos + 1] : '\0';
    }
    [[noreturn]] void err(const std::string& what, std::vector<std::string> expected = {}) {
        throw ParseError(what + " at offset " + std::to_string(pos), 1, static_cast<int>(pos) + 1,
                         std::move(expected));
    }
    bool try_char(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect_char(char c) {
        if (!try_char(c)) err(std::string("expected '") + c + "'", {std::string(1, c)});
    }
    bool try_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) == 0) {
            // words must not run into identifier characters
            size_t end = pos + w.size();
            if (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
                return false;
            pos = end;
            return true;
        }
        return false;
    }
    long long expect_int() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) err("expected integer", {"integer"});
        return std::stoll(s.substr(start, pos - start));
    }
    std::string expect_ident() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            ++pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
        }
        if (start == pos) err("expected identifier", {"identifier"});
        return s.substr(start, pos - start);
    }
    std::string expect_string() {
        skip_ws();
        if (pos >= s.size() || s[pos] != '"') err("expected quoted string", {"\""});
        ++pos;
        size_t start = pos;
        while (pos < s.size() && s[pos] != '"') ++pos;
        if (pos >= s.size()) err("unterminated string", {"\""});
        std::string out = s.substr(start, pos - start);
        ++pos;
        return out;
    }
};

// ---------------------------------------------------------------------------
// field grammar
// ---------------------------------------------------------------------------

FieldPtr field_from_lexer(Lexer& lx) {
    if (!lx.try_word("GF")) lx.err("expected GF", {"GF"});
    lx.expect_char('(');
    long long p = lx.expect_int();
    long long k = 1;
    if (lx.try_char('^')) k = lx.expect_int();
    lx.expect_char(')');
    FieldPtr f = Field::finite(static_cast<int>(p), static_cast<int>(k));
    while (lx.peek() == '(') {
        lx.expect_char('(');
        if (lx.try_char('(')) {
            std::string var = lx.expect_ident();
            lx.expect_char(')');
            lx.expect_char(')');
            f = Field::laurent(f, var);
        } else {
            std::string var = lx.expect_ident();
            lx.expect_char(')');
            f = Field::rational(f, var);
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// element grammar
// ---------------------------------------------------------------------------

struct ElemParser {
    Lexer& lx;
    const FieldPtr& F;

    Elem var_by_name(const std::string& name) {
        if (name == "g") {
            // finite-field generator of the bottom layer
            FieldPtr bot = F;
            while (bot->kind != FieldKind::Finite) bot = bot->base;
            return Elem::embed(F, Elem::generator(bot));
        }
        // find the layer with this variable
        std::vector<FieldPtr> chain;
        for (FieldPtr f = F; f; f = f->kind == FieldKind::Finite ? nullptr : f->base)
            chain.push_back(f);
        for (const auto& f : chain)
            if (f->kind != FieldKind::Finite && f->var == name)
                return Elem::embed(F, Elem::generator(f));
        lx.err("unknown variable '" + name + "'", {"variable"});
    }

    Elem parse_expr() {
        Elem acc = parse_term();
        for (;;) {
            if (lx.try_char('+')) acc = acc + parse_term();
            else if (lx.try_char('-')) acc = acc - parse_term();
            else return acc;
        }
    }
    Elem parse_term() {
        Elem acc = parse_factor();
        for (;;) {
            if (lx.try_char('*')) acc = acc * parse_factor();
            else if (lx.try_char('/')) acc = acc / parse_factor();
            else return acc;
        }
    }
    Elem parse_factor() {
        Elem base = parse_base();
        while (lx.try_char('^')) {
            long long e = lx.expect_int();
            base = base.pow(static_cast<std::uint64_t>(e));
        }
        return base;
    }
    Elem parse_base() {
        char c = lx.peek();
        if (c == '(') {
            lx.expect_char('(');
            Elem e = parse_expr();
            lx.expect_char(')');
            return e;
        }
        if (c == '-') {
            lx.expect_char('-');
            return -parse_factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long n = lx.expect_int();
            return Elem::from_int(F, n);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return var_by_name(lx.expect_ident());
        lx.err("expected element", {"integer", "variable", "(", "-"});
    }
};

// ---------------------------------------------------------------------------
// form grammar
// ---------------------------------------------------------------------------

struct FormParser {
    Lexer& lx;
    const FieldPtr& F;

    QuadraticForm parse_form() {
        QuadraticForm acc = parse_summand();
        while (lx.try_char('|')) acc = qf_sum(acc, parse_summand());
        return acc;
    }

    QuadraticForm parse_summand() {
        char c = lx.peek();
        if (c == '[') {
            lx.expect_char('[');
            ElemParser ep{lx, F};
            Elem a = ep.parse_expr();
            lx.expect_char(',');
            Elem b = ep.parse_expr();
            lx.expect_char(']');
            return qf_block(a, b);
        }
        if (c == '<') {
            lx.expect_char('<');
            ElemParser ep{lx, F};
            std::vector<Elem> entries;
            entries.push_back(ep.parse_expr());
            while (lx.try_char(',')) entries.push_back(ep.parse_expr());
            lx.expect_char('>');
            return qf_quasilinear(F, std::move(entries));
        }
        // pf<<...]] or a scaling element
        size_t save = lx.pos;
        if (lx.try_word("pf")) {
            if (lx.try_char('<')) {
                lx.expect_char('<');
                ElemParser ep{lx, F};
                std::vector<Elem> slots;
                slots.push_back(ep.parse_expr());
                while (lx.try_char(',')) slots.push_back(ep.parse_expr());
                lx.expect_char(';');
                Elem quad = ep.parse_expr();
                lx.expect_char(']');
                lx.expect_char(']');
                PfisterSlots s;
                s.bilinear = std::move(slots);
                s.quad = quad;
                return pfister_quad(F, s);
            }
            lx.pos = save;
        }
        ElemParser ep{lx, F};
        Elem scale = ep.parse_expr();
        lx.expect_char('*');
        QuadraticForm inner = parse_summand();
        return qf_scale(scale, inner);
    }
};

void expect_end(Lexer& lx) {
    if (!lx.eof()) lx.err("trailing input", {"end of input"});
}

}  // namespace

FieldPtr parse_field(const std::string& text) {
    Lexer lx(text);
    FieldPtr f = field_from_lexer(lx);
    expect_end(lx);
    return f;
}

Elem parse_elem(const std::string& text, const FieldPtr& F) {
    Lexer lx(text);
    ElemParser ep{lx, F};
    Elem e = ep.parse_expr();
    expect_end(lx);
    return e;
}

QuadraticForm parse_form(const std::string& text, const FieldPtr& F) {
    Lexer lx(text);
    FormParser fp{lx, F};
    QuadraticForm q = fp.parse_form();
    expect_end(lx);
    return q;
}

ASExt parse_asext(const std::string& text, const FieldPtr& F) {
    Lexer lx(text);
    lx.expect_char('(');
    ElemParser ep{lx, F};
    std::vector<Elem> coords;
    coords.push_back(ep.parse_expr());
    while (lx.try_char('|')) coords.push_back(ep.parse_expr());
    lx.expect_char(')');
    lx.expect_char('@');
    Elem a = ep.parse_expr();
    expect_end(lx);
    return asext_make(a, std::move(coords));
}

// ---------------------------------------------------------------------------
// command lines
// ---------------------------------------------------------------------------

namespace {

// scan the tail of the line for `@ "field"` so arguments can be parsed with
// the field in hand
std::optional<std::string> extract_field_clause(std::string& line) {
    // find the last unquoted '@'
    bool in_str = false;
    int at = -1;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        else if (line[i] == '@' && !in_str) at = static_cast<int>(i);
    }
    if (at < 0) return std::nullopt;
    std::string tail = line.substr(static_cast<size_t>(at) + 1);
    line = line.substr(0, static_cast<size_t>(at));
    Lexer lx(tail);
    std::string spec = lx.peek() == '"' ? lx.expect_string() : [&] {
        // unquoted field spec: take the rest of the tail
        std::string rest = tail;
        return rest;
    }();
    // keep any flags that followed the field clause
    if (lx.pos < tail.size()) line += tail.substr(lx.pos);
    return spec;
}

}  // namespace

Command parse_command(const std::string& input, const FieldPtr& default_field) {
    std::string line = input;
    Command cmd;
    auto spec = extract_field_clause(line);
    if (spec) {
        cmd.field_text = *spec;
        cmd.field = parse_field(*spec);
    } else if (default_field) {
        cmd.field = default_field;
        cmd.field_text = default_field->spec();
    }

    Lexer lx(line);
    std::string name = lx.expect_ident();
    auto need_field = [&]() {
        if (!cmd.field) lx.err("command needs a field (@ \"<spec>\" or --field)", {"@"});
    };
    auto read_form = [&]() {
        need_field();
        std::string text = lx.peek() == '"' ? lx.expect_string() : line.substr(lx.pos);
        if (lx.peek() != '"' && !text.empty()) lx.pos = line.size();
        cmd.form = parse_form(text, cmd.field);
    };
    auto read_elem = [&]() {
        need_field();
        if (lx.peek() == '"') return parse_elem(lx.expect_string(), cmd.field);
        ElemParser ep{lx, cmd.field};
        return ep.parse_expr();
    };

    if (name == "info") cmd.kind = Command::Kind::FieldInfo, need_field();
    else if (name == "arf") { cmd.kind = Command::Kind::Arf; read_form(); }
    else if (name == "witt") { cmd.kind = Command::Kind::Witt; read_form(); }
    else if (name == "isotropy") { cmd.kind = Command::Kind::Isotropy; read_form(); }
    else if (name == "pfisterhyp") { cmd.kind = Command::Kind::PfisterHyp; read_form(); }
    else if (name == "albert" || name == "linkage") {
        cmd.kind = name == "albert" ? Command::Kind::Albert : Command::Kind::Linkage;
        cmd.p = static_cast<int>(lx.expect_int());
        for (int i = 0; i < 4; ++i) cmd.elems.push_back(read_elem());
    } else if (name == "h4reduce") {
        cmd.kind = Command::Kind::H4Reduce;
        for (int i = 0; i < 4; ++i) cmd.elems.push_back(read_elem());
    } else if (name == "h3reduce") {
        cmd.kind = Command::Kind::H3Reduce;
        for (int i = 0; i < 3; ++i) cmd.elems.push_back(read_elem());
    } else if (name == "subalbert") {
        cmd.kind = Command::Kind::SubAlbert;
        for (int i = 0; i < 4; ++i) cmd.elems.push_back(read_elem());
    } else if (name == "u") {
        cmd.kind = Command::Kind::UInvariant;
        need_field();
    } else {
        lx.err("unknown command '" + name + "'",
               {"info", "arf", "witt", "isotropy", "albert", "linkage", "pfisterhyp", "h4reduce",
                "h3reduce", "subalbert", "u"});
    }

    while (!lx.eof()) {
        if (lx.try_word("--pure")) cmd.pure = true;
        else if (lx.try_word("--inseparable")) cmd.inseparable = true;
        else if (lx.try_word("--seed")) cmd.seed = static_cast<std::uint64_t>(lx.expect_int());
        else if (lx.try_word("--budget")) cmd.budget = lx.expect_int();
        else lx.err("unexpected trailing input", {"--pure", "--inseparable", "--seed", "--budget"});
    }
    if (cmd.kind == Command::Kind::Albert || cmd.kind == Command::Kind::Linkage) {
        if (cmd.p != cmd.field->p)
            throw ParseError("albert degree p must equal the field characteristic", 1, 1, {});
    }
    return cmd;
}

// ---------------------------------------------------------------------------
// derivation records
// ---------------------------------------------------------------------------

Derivation parse_derivation(const std::string& text, const FieldPtr& F) {
    std::istringstream is(text);
    std::string lineStr;
    Derivation d;
    bool begun = false, ended = false;
    int lineno = 0;
    bool claimed_zero = false;
    while (std::getline(is, lineStr)) {
        ++lineno;
        if (lineStr.empty()) continue;
        Lexer lx(lineStr);
        if (lx.try_word("BEGIN")) { begun = true; continue; }
        if (!begun) throw ParseError("expected BEGIN", lineno, 1, {"BEGIN"});
        if (lx.try_word("END")) { ended = true; break; }
        if (lx.try_word("ZERO")) { claimed_zero = true; continue; }
        if (lx.try_word("OPEN")) { claimed_zero = false; continue; }
        if (lx.try_word("SYM")) {
            if (!lx.try_word("coeff")) lx.err("expected coeff=", {"coeff"});
            lx.expect_char('=');
            // coefficient runs until the " slots=" marker
            size_t marker = lineStr.find(" slots=", lx.pos);
            if (marker == std::string::npos) lx.err("expected slots=", {"slots"});
            Elem coeff = parse_elem(lineStr.substr(lx.pos, marker - lx.pos), F);
            std::string slotsText = lineStr.substr(marker + 7);
            std::vector<Elem> slots;
            size_t start = 0;
            int depth = 0;
            for (size_t i = 0; i <= slotsText.size(); ++i) {
                if (i < slotsText.size() && slotsText[i] == '(') ++depth;
                if (i < slotsText.size() && slotsText[i] == ')') --depth;
                if (i == slotsText.size() || (slotsText[i] == ',' && depth == 0)) {
                    slots.push_back(parse_elem(slotsText.substr(start, i - start), F));
                    start = i + 1;
                }
            }
            d.start.push_back(make_symbol(coeff, std::move(slots)));
            continue;
        }
        if (lx.try_word("STEP")) {
            RewriteStep st;
            std::string rn = lx.expect_ident();
            auto tag = rule_from_name(rn);
            if (!tag) lx.err("unknown rule '" + rn + "'", {"rule name"});
            st.rule = *tag;
            // key=value pairs; element values run to the next " key=" or EOL
            while (!lx.eof()) {
                std::string key = lx.expect_ident();
                lx.expect_char('=');
                static const std::vector<std::string> keys = {"sym",    "sym2", "slot", "slot2",
                                                              "k",      "merge", "u",   "beta",
                                                              "lambda", "c",     "f1",  "f2"};
                size_t end = lineStr.size();
                for (const auto& k2 : keys) {
                    size_t f = lineStr.find(" " + k2 + "=", lx.pos);
                    if (f != std::string::npos) end = std::min(end, f);
                }
                std::string val = lineStr.substr(lx.pos, end - lx.pos);
                lx.pos = end;
                if (key == "sym") st.sym = std::stoi(val);
                else if (key == "sym2") st.sym2 = std::stoi(val);
                else if (key == "slot") st.slot = std::stoi(val);
                else if (key == "slot2") st.slot2 = std::stoi(val);
                else if (key == "k") st.multiplicity = std::stoi(val);
                else if (key == "merge") st.merge = val == "1";
                else if (key == "u") st.w.u = parse_asext(val, F);
                else if (key == "beta") st.w.beta = parse_elem(val, F);
                else if (key == "lambda") st.w.lambda = parse_elem(val, F);
                else if (key == "c") st.w.c = parse_elem(val, F);
                else if (key == "f1") st.w.f1 = parse_elem(val, F);
                else if (key == "f2") st.w.f2 = parse_elem(val, F);
                else throw ParseError("unknown STEP key '" + key + "'", lineno, 1, {});
            }
            d.steps.push_back(std::move(st));
            continue;
        }
        throw ParseError("unrecognized record", lineno, 1, {"SYM", "STEP", "ZERO", "END"});
    }
    if (!ended) throw ParseError("missing END", lineno, 1, {"END"});
    // replay to fill intermediates
    SymbolExpr cur = d.start;
    for (const auto& st : d.steps) {
        cur = apply_step(cur, st);
        d.intermediates.push_back(cur);
    }
    d.ends_zero = claimed_zero;
    return d;
}

}  // namespace c2f
