#include "c2f/symbols.hpp"

#include "c2f/wp.hpp"

#include <sstream>
#include <stdexcept>

namespace c2f {

bool DifferentialSymbol::operator==(const DifferentialSymbol& o) const {
    if (!(coeff == o.coeff) || slots.size() != o.slots.size()) return false;
    for (size_t i = 0; i < slots.size(); ++i)
        if (!(slots[i] == o.slots[i])) return false;
    return true;
}

std::string DifferentialSymbol::str() const {
    std::string s = "(" + coeff.str() + ")";
    for (const auto& a : slots) s += " dlog(" + a.str() + ")";
    return s;
}

DifferentialSymbol make_symbol(const Elem& coeff, std::vector<Elem> slots) {
    for (const auto& a : slots) {
        if (a.is_zero()) throw std::invalid_argument("symbol slots must be nonzero");
        if (!same_field(a.field(), coeff.field()))
            throw std::invalid_argument("symbol slots must share the coefficient's field");
    }
    return DifferentialSymbol{coeff, std::move(slots)};
}

std::string rule_name(RuleTag t) {
    switch (t) {
        case RuleTag::CoeffShift: return "CoeffShift";
        case RuleTag::SlotNormScale: return "SlotNormScale";
        case RuleTag::Combined: return "Combined";
        case RuleTag::CoeffWpKill: return "CoeffWpKill";
        case RuleTag::SlotPthPowerShift: return "SlotPthPowerShift";
        case RuleTag::SlotMultSplit: return "SlotMultSplit";
        case RuleTag::SlotRepeatKill: return "SlotRepeatKill";
        case RuleTag::SlotSwap: return "SlotSwap";
        case RuleTag::CoeffAdditiveSplit: return "CoeffAdditiveSplit";
    }
    return "?";
}

std::optional<RuleTag> rule_from_name(const std::string& s) {
    for (RuleTag t : {RuleTag::CoeffShift, RuleTag::SlotNormScale, RuleTag::Combined,
                      RuleTag::CoeffWpKill, RuleTag::SlotPthPowerShift, RuleTag::SlotMultSplit,
                      RuleTag::SlotRepeatKill, RuleTag::SlotSwap, RuleTag::CoeffAdditiveSplit})
        if (rule_name(t) == s) return t;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// step application
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void fail(const std::string& why) { throw std::invalid_argument(why); }

void check_slot(const DifferentialSymbol& s, int i) {
    if (i < 0 || i >= s.degree()) fail("slot index out of range");
}

}  // namespace

SymbolExpr apply_step(const SymbolExpr& e, const RewriteStep& st) {
    if (st.sym < 0 || st.sym >= static_cast<int>(e.size())) fail("symbol index out of range");
    const DifferentialSymbol& s = e[static_cast<size_t>(st.sym)];
    const FieldPtr& F = s.coeff.field();
    const int p = F->p;
    SymbolExpr out;
    auto copy_others = [&](std::optional<int> skip2 = std::nullopt) {
        for (int i = 0; i < static_cast<int>(e.size()); ++i) {
            if (i == st.sym) continue;
            if (skip2 && i == *skip2) continue;
            out.push_back(e[static_cast<size_t>(i)]);
        }
    };

    switch (st.rule) {
        case RuleTag::CoeffShift: {
            check_slot(s, st.slot);
            if (st.multiplicity < 1) fail("CoeffShift multiplicity must be >= 1");
            DifferentialSymbol r = s;
            Elem k = Elem::from_int(F, st.multiplicity);
            r.coeff = s.coeff + k * s.slots[static_cast<size_t>(st.slot)];
            out = e;
            out[static_cast<size_t>(st.sym)] = r;
            return out;
        }
        case RuleTag::SlotNormScale:
        case RuleTag::Combined: {
            check_slot(s, st.slot);
            if (!st.w.u) fail("norm witness u missing");
            if (!(st.w.u->a == s.coeff))
                fail("norm witness must live in the Artin-Schreier extension of the coefficient");
            Elem beta = as_norm(*st.w.u);
            if (beta.is_zero()) fail("norm witness has zero norm");
            if (st.w.beta && !(*st.w.beta == beta)) fail("claimed norm value does not match as_norm");
            DifferentialSymbol r = s;
            r.slots[static_cast<size_t>(st.slot)] = s.slots[static_cast<size_t>(st.slot)] * beta;
            if (st.rule == RuleTag::Combined)
                r.coeff = s.coeff + s.slots[static_cast<size_t>(st.slot)] * beta;
            out = e;
            out[static_cast<size_t>(st.sym)] = r;
            return out;
        }
        case RuleTag::CoeffWpKill: {
            if (!st.w.lambda) fail("wp witness lambda missing");
            Elem im = st.w.lambda->pow(static_cast<std::uint64_t>(p)) - *st.w.lambda;
            if (!(im == s.coeff)) fail("wp witness does not map to the coefficient");
            copy_others();
            return out;
        }
        case RuleTag::SlotPthPowerShift: {
            check_slot(s, st.slot);
            if (!st.w.c) fail("p-th power shift witness c missing");
            Elem shift = st.w.c->pow(static_cast<std::uint64_t>(p));
            Elem old_slot = s.slots[static_cast<size_t>(st.slot)];
            Elem new_slot = old_slot + shift;
            if (new_slot.is_zero()) fail("shifted slot vanishes");
            DifferentialSymbol r = s;
            r.slots[static_cast<size_t>(st.slot)] = new_slot;
            r.coeff = s.coeff * new_slot / old_slot;
            out = e;
            out[static_cast<size_t>(st.sym)] = r;
            return out;
        }
        case RuleTag::SlotMultSplit: {
            check_slot(s, st.slot);
            if (!st.w.f1 || !st.w.f2) fail("factor witnesses missing");
            if (st.w.f1->is_zero() || st.w.f2->is_zero()) fail("factors must be nonzero");
            if (!(*st.w.f1 * *st.w.f2 == s.slots[static_cast<size_t>(st.slot)]))
                fail("factors do not multiply to the slot");
            DifferentialSymbol r1 = s, r2 = s;
            r1.slots[static_cast<size_t>(st.slot)] = *st.w.f1;
            r2.slots[static_cast<size_t>(st.slot)] = *st.w.f2;
            out = e;
            out[static_cast<size_t>(st.sym)] = r1;
            out.insert(out.begin() + st.sym + 1, r2);
            return out;
        }
        case RuleTag::SlotRepeatKill: {
            check_slot(s, st.slot);
            check_slot(s, st.slot2);
            if (st.slot == st.slot2) fail("repeat kill needs two distinct slot positions");
            if (!(s.slots[static_cast<size_t>(st.slot)] == s.slots[static_cast<size_t>(st.slot2)]))
                fail("slots are not equal");
            copy_others();
            return out;
        }
        case RuleTag::SlotSwap: {
            check_slot(s, st.slot);
            check_slot(s, st.slot2);
            if (st.slot == st.slot2) fail("swap needs two distinct slot positions");
            DifferentialSymbol r = s;
            std::swap(r.slots[static_cast<size_t>(st.slot)], r.slots[static_cast<size_t>(st.slot2)]);
            r.coeff = -r.coeff;  // the wedge is anti-commutative; in char 2 this is the identity
            out = e;
            out[static_cast<size_t>(st.sym)] = r;
            return out;
        }
        case RuleTag::CoeffAdditiveSplit: {
            if (st.merge) {
                if (st.sym2 < 0 || st.sym2 >= static_cast<int>(e.size()) || st.sym2 == st.sym)
                    fail("merge needs a distinct second symbol");
                const DifferentialSymbol& s2 = e[static_cast<size_t>(st.sym2)];
                if (s.slots.size() != s2.slots.size()) fail("merge needs identical slot lists");
                for (size_t i = 0; i < s.slots.size(); ++i)
                    if (!(s.slots[i] == s2.slots[i])) fail("merge needs identical slot lists");
                DifferentialSymbol r = s;
                r.coeff = s.coeff + s2.coeff;
                copy_others(st.sym2);
                out.insert(out.begin() + std::min(st.sym, st.sym2), r);
                return out;
            }
            if (!st.w.f1 || !st.w.f2) fail("additive parts missing");
            if (!(*st.w.f1 + *st.w.f2 == s.coeff)) fail("parts do not sum to the coefficient");
            DifferentialSymbol r1 = s, r2 = s;
            r1.coeff = *st.w.f1;
            r2.coeff = *st.w.f2;
            out = e;
            out[static_cast<size_t>(st.sym)] = r1;
            out.insert(out.begin() + st.sym + 1, r2);
            return out;
        }
    }
    fail("unknown rule");
}

CheckReport check_derivation(const Derivation& d) {
    CheckReport rep;
    if (!d.start.empty()) {
        int deg = d.start.front().degree();
        for (const auto& s : d.start) {
            if (s.degree() != deg) {
                rep.reason = "start expression is not degree-homogeneous";
                return rep;
            }
            for (const auto& a : s.slots)
                if (a.is_zero()) {
                    rep.reason = "start expression has a zero slot";
                    return rep;
                }
        }
    }
    if (d.intermediates.size() != d.steps.size()) {
        rep.reason = "intermediate count does not match step count";
        return rep;
    }
    SymbolExpr cur = d.start;
    for (size_t i = 0; i < d.steps.size(); ++i) {
        SymbolExpr next;
        try {
            next = apply_step(cur, d.steps[i]);
        } catch (const std::exception& ex) {
            rep.failed_step = static_cast<int>(i);
            rep.reason = std::string(rule_name(d.steps[i].rule)) + ": " + ex.what();
            return rep;
        }
        const SymbolExpr& recorded = d.intermediates[i];
        bool same = next.size() == recorded.size();
        for (size_t j = 0; same && j < next.size(); ++j) same = next[j] == recorded[j];
        if (!same) {
            rep.failed_step = static_cast<int>(i);
            rep.reason = std::string(rule_name(d.steps[i].rule)) +
                         ": recorded intermediate differs from the rule output";
            return rep;
        }
        cur = std::move(next);
    }
    if (d.ends_zero != cur.empty()) {
        rep.reason = d.ends_zero ? "derivation claims ZERO but symbols remain"
                                 : "derivation reached ZERO without claiming it";
        return rep;
    }
    rep.ok = true;
    return rep;
}

// ---------------------------------------------------------------------------
// reductions
// ---------------------------------------------------------------------------

namespace {

struct Chain {
    Derivation d;
    SymbolExpr cur;
    void begin(SymbolExpr start) {
        d.start = start;
        cur = std::move(start);
    }
    void push(RewriteStep st) {
        cur = apply_step(cur, st);
        d.steps.push_back(std::move(st));
        d.intermediates.push_back(cur);
    }
    Derivation finish() {
        d.ends_zero = cur.empty();
        return d;
    }
    const DifferentialSymbol& sym0() const { return cur.front(); }
};

RewriteStep step_norm(RuleTag rule, int slot, const ASExt& u) {
    RewriteStep st;
    st.rule = rule;
    st.slot = slot;
    st.w.u = u;
    st.w.beta = as_norm(u);
    return st;
}

RewriteStep step_shift(int slot, int k) {
    RewriteStep st;
    st.rule = RuleTag::CoeffShift;
    st.slot = slot;
    st.multiplicity = k;
    return st;
}

RewriteStep step_kill(const Elem& lambda) {
    RewriteStep st;
    st.rule = RuleTag::CoeffWpKill;
    st.w.lambda = lambda;
    return st;
}

}  // namespace

Derivation reduce_h4(const Elem& alpha, const Elem& beta, const Elem& gamma, const Elem& delta,
                     const AlbertWitness& w) {
    const FieldPtr& F = alpha.field();
    const int p = F->p;
    if (beta.is_zero() || gamma.is_zero() || delta.is_zero())
        fail("slots beta, gamma, delta must be nonzero");
    Chain ch;
    ch.begin({make_symbol(alpha, {beta, gamma, delta})});

    // trivial coefficient
    WpResult wa = wp_solve(alpha);
    if (wa.kind == WpKind::ExactWitness) {
        ch.push(step_kill(*wa.witness));
        return ch.finish();
    }

    SplitWitness sp = lemma_new_split(alpha, beta);
    if (!w.nontrivial()) fail("albert witness is trivial");
    if (!(w.x.a == alpha) || !(w.y.a == sp.alpha1) || !(w.z.a == sp.alpha2))
        fail("albert witness lives over the wrong extensions");
    Elem nx = as_norm(w.x), ny = as_norm(w.y), nz = as_norm(w.z);
    if (!(nx + gamma * ny + delta * nz).is_zero())
        fail("albert witness is not a zero of the split Albert form");

    // trivial split classes kill the symbol after one move to that coefficient
    WpResult w1 = wp_solve(sp.alpha1);
    if (w1.kind == WpKind::ExactWitness) {
        if (sp.t.is_zero()) {
            // alpha1 = alpha, already handled unless wp(alpha) lacked an exact
            // witness; fall through to the alpha2 route in that case
        } else {
            ch.push(step_norm(RuleTag::Combined, 0, sp.t_scalar));  // -> (alpha1; beta t^p, ...)
            ch.push(step_kill(*w1.witness));
            return ch.finish();
        }
    }
    WpResult w2 = wp_solve(sp.alpha2);
    if (w2.kind == WpKind::ExactWitness) {
        ch.push(step_norm(RuleTag::Combined, 0, sp.u_elem));  // -> (alpha2; beta u, ...)
        ch.push(step_kill(*w2.witness));
        return ch.finish();
    }

    const bool tz = sp.t.is_zero();
    ASExt t_inv = tz ? sp.t_scalar : asext_scalar(alpha, sp.t.inverse());

    if (w.x.is_zero()) {
        // gamma N(y) = delta N(-z) != 0: scale the slots at the matching
        // coefficients, return to alpha, move to alpha2, kill on equal slots
        if (!tz) ch.push(step_norm(RuleTag::Combined, 0, sp.t_scalar));  // (alpha1; beta t^p,..)
        ch.push(step_norm(RuleTag::SlotNormScale, 1, w.y));              // gamma r
        if (!tz) {
            ch.push(step_shift(0, p - 1));                     // back to alpha
            ch.push(step_norm(RuleTag::SlotNormScale, 0, t_inv));  // slot beta
        }
        ch.push(step_norm(RuleTag::Combined, 0, sp.u_elem));   // (alpha2; beta u, ...)
        ch.push(step_norm(RuleTag::SlotNormScale, 2, asext_neg(w.z)));  // delta s
        RewriteStep st;
        st.rule = RuleTag::SlotRepeatKill;
        st.slot = 1;
        st.slot2 = 2;
        ch.push(st);
        return ch.finish();
    }

    // x != 0: normalize with q = N(eta x^{-1}), eta the Artin-Schreier
    // generator whose norm is alpha (verified, never assumed)
    ASExt eta = asext_gen(alpha);
    if (!(as_norm(eta) == alpha)) throw std::logic_error("norm of the AS generator is not alpha");
    if (nx.is_zero()) fail("x is nonzero but not invertible (alpha in wp(F)?)");
    ASExt qe = asext_mul(eta, asext_inverse(w.x));
    ch.push(step_norm(RuleTag::SlotNormScale, 1, qe));  // gamma' = gamma q
    ch.push(step_norm(RuleTag::SlotNormScale, 2, qe));  // delta' = delta q
    if (!tz) ch.push(step_norm(RuleTag::Combined, 0, sp.t_scalar));  // (alpha1; beta t^p, ...)
    if (!w.y.is_zero()) ch.push(step_norm(RuleTag::SlotNormScale, 1, w.y));  // gamma' r
    if (!tz) {
        ch.push(step_shift(0, p - 1));
        ch.push(step_norm(RuleTag::SlotNormScale, 0, t_inv));
    }
    ch.push(step_norm(RuleTag::Combined, 0, sp.u_elem));  // (alpha2; beta u, ...)
    if (!w.z.is_zero()) ch.push(step_norm(RuleTag::SlotNormScale, 2, w.z));  // delta' s
    ch.push(step_shift(0, p - 1));                        // back to alpha
    if (!w.y.is_zero()) ch.push(step_shift(1, 1));
    if (!w.z.is_zero()) ch.push(step_shift(2, 1));
    if (!ch.sym0().coeff.is_zero())
        throw std::logic_error("h4 reduction did not cancel the coefficient");
    ch.push(step_kill(Elem::zero(F)));
    return ch.finish();
}

Derivation reduce_h3_pure(const Elem& alpha, const Elem& gamma, const Elem& delta,
                          const PureWitness& w) {
    const FieldPtr& F = alpha.field();
    const int p = F->p;
    if (gamma.is_zero() || delta.is_zero()) fail("slots gamma, delta must be nonzero");
    Chain ch;
    ch.begin({make_symbol(alpha, {gamma, delta})});

    WpResult wa = wp_solve(alpha);
    if (wa.kind == WpKind::ExactWitness) {
        ch.push(step_kill(*wa.witness));
        return ch.finish();
    }
    if (!w.nontrivial()) fail("pure witness is trivial");
    if (!(w.y.a == alpha) || !(w.z.a == alpha)) fail("pure witness lives over the wrong extension");
    Elem val = w.x.pow(static_cast<std::uint64_t>(p)) + gamma * as_norm(w.y) + delta * as_norm(w.z);
    if (!val.is_zero()) fail("pure witness is not a zero of the pure part");
    if (w.y.is_zero() && w.z.is_zero()) fail("pure witness needs y or z nonzero");

    if (!w.y.is_zero()) ch.push(step_norm(RuleTag::SlotNormScale, 0, w.y));           // gamma r
    if (!w.z.is_zero()) ch.push(step_norm(RuleTag::SlotNormScale, 1, asext_neg(w.z)));  // delta s

    const Elem s1 = ch.sym0().slots[0];
    const Elem s2 = ch.sym0().slots[1];

    auto kill_pth_power_slot = [&](int slot, const Elem& root) {
        // slot value equals root^p; split dlog(root^p) into p equal symbols
        // and merge them: p * symbol = 0 in characteristic p
        for (int i = 0; i < p - 1; ++i) {
            // after i splits the residual power root^{p-i} sits at index i
            RewriteStep st;
            st.rule = RuleTag::SlotMultSplit;
            st.sym = i;
            st.slot = slot;
            st.w.f1 = root;
            st.w.f2 = root.pow(static_cast<std::uint64_t>(p - 1 - i));
            ch.push(st);
        }
        for (int i = 0; i < p - 1; ++i) {
            RewriteStep st;
            st.rule = RuleTag::CoeffAdditiveSplit;
            st.merge = true;
            st.sym = 0;
            st.sym2 = 1;
            ch.push(st);
        }
        ch.push(step_kill(Elem::zero(F)));
    };

    if (w.z.is_zero()) {
        // gamma r = (-x)^p exactly
        Elem root = -w.x;
        if (!(s1 == root.pow(static_cast<std::uint64_t>(p))))
            throw std::logic_error("h3: slot is not the expected p-th power");
        kill_pth_power_slot(0, root);
        return ch.finish();
    }
    if (w.y.is_zero()) {
        // delta s = delta N(-z) = (-x)^p ... at p = 2 this is x^2; in odd
        // characteristic N(-z) = -N(z) gives delta s = x^p
        Elem root = w.x;
        if (!(s2 == root.pow(static_cast<std::uint64_t>(p))))
            throw std::logic_error("h3: slot is not the expected p-th power");
        kill_pth_power_slot(1, root);
        return ch.finish();
    }
    // both nonzero: the slots differ by x^p
    if (!(s1 == s2)) {
        RewriteStep st;
        st.rule = RuleTag::SlotPthPowerShift;
        st.slot = 1;
        st.w.c = -w.x;
        ch.push(st);
        if (!(ch.sym0().slots[1] == ch.sym0().slots[0]))
            throw std::logic_error("h3: shifted slots disagree");
    }
    RewriteStep st;
    st.rule = RuleTag::SlotRepeatKill;
    st.slot = 0;
    st.slot2 = 1;
    ch.push(st);
    return ch.finish();
}

PfisterSlots kato_pfister(const DifferentialSymbol& s) {
    if (s.coeff.field()->p != 2) fail("Kato correspondence implemented for characteristic 2");
    return PfisterSlots{s.slots, s.coeff};
}

DifferentialSymbol brauer_symbol(const CyclicAlgebraSymbol& alg) {
    return make_symbol(alg.alpha, {alg.beta});
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

std::string serialize(const Derivation& d) {
    std::ostringstream os;
    os << "BEGIN\n";
    for (const auto& s : d.start) {
        os << "SYM coeff=" << s.coeff.str() << " slots=";
        for (size_t i = 0; i < s.slots.size(); ++i) {
            if (i) os << ",";
            os << s.slots[i].str();
        }
        os << "\n";
    }
    for (const auto& st : d.steps) {
        os << "STEP " << rule_name(st.rule) << " sym=" << st.sym;
        if (st.sym2 >= 0) os << " sym2=" << st.sym2;
        if (st.slot >= 0) os << " slot=" << st.slot;
        if (st.slot2 >= 0) os << " slot2=" << st.slot2;
        if (st.rule == RuleTag::CoeffShift && st.multiplicity != 1) os << " k=" << st.multiplicity;
        if (st.merge) os << " merge=1";
        if (st.w.u) os << " u=" << st.w.u->str() << "@" << st.w.u->a.str();
        if (st.w.beta) os << " beta=" << st.w.beta->str();
        if (st.w.lambda) os << " lambda=" << st.w.lambda->str();
        if (st.w.c) os << " c=" << st.w.c->str();
        if (st.w.f1) os << " f1=" << st.w.f1->str();
        if (st.w.f2) os << " f2=" << st.w.f2->str();
        os << "\n";
    }
    os << (d.ends_zero ? "ZERO\n" : "OPEN\n");
    os << "END\n";
    return os.str();
}

}  // namespace c2f
