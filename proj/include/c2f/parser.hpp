#pragma once

#include "c2f/albert.hpp"
#include "c2f/quadform.hpp"
#include "c2f/symbols.hpp"

#include <optional>
#include <stdexcept>

// Text grammars:
//   field     GF(p) | GF(p^k), suffix (var) for a rational layer, ((var))
//             for a Laurent layer: GF(2)((a))((b))
//   element   + - * / ^, integers, layer variables, g for the finite
//             generator: (t^3+t)/(t+1)
//   form      block [e1,e2], quasilinear <e1,...,ek>, scaling e * form,
//             orthogonal sum form | form, Pfister pf<<e1,...,ek; e]]
//   command   one line: <name> [args] [@ "<field>"] [--flags]
// Errors carry offsets and the expected-token set.

namespace c2f {

struct ParseError : std::runtime_error {
    int line, col;
    std::vector<std::string> expected;
    ParseError(const std::string& msg, int line_, int col_, std::vector<std::string> exp = {})
        : std::runtime_error(msg), line(line_), col(col_), expected(std::move(exp)) {}
};

FieldPtr parse_field(const std::string& text);
Elem parse_elem(const std::string& text, const FieldPtr& F);
QuadraticForm parse_form(const std::string& text, const FieldPtr& F);
/// (c0|c1|...|c_{p-1})@a : coordinates in the basis 1, x, ..., x^{p-1}.
ASExt parse_asext(const std::string& text, const FieldPtr& F);

struct Command {
    enum class Kind {
        FieldInfo,
        Arf,
        Witt,
        Isotropy,
        Albert,
        Linkage,
        PfisterHyp,
        H4Reduce,
        H3Reduce,
        SubAlbert,
        UInvariant
    } kind = Kind::FieldInfo;
    FieldPtr field;
    std::string field_text;
    std::optional<QuadraticForm> form;
    std::vector<Elem> elems;
    int p = 0;
    bool pure = false;
    bool inseparable = false;
    std::optional<std::uint64_t> seed;
    std::optional<long long> budget;
};

/// Parse one command line; `default_field` supplies the field when the line
/// has no `@ "<spec>"` clause.
Command parse_command(const std::string& line, const FieldPtr& default_field = nullptr);

/// Inverse of serialize() in the symbols module; bit-exact round trip.
Derivation parse_derivation(const std::string& text, const FieldPtr& F);

}  // namespace c2f
