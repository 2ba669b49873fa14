#include "c2f/search.hpp"

#include "c2f/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace c2f {

namespace {

// ---------------------------------------------------------------------------
// candidate palette: 0 plus c * v1^e1 * ... * vL^eL ordered by total degree
// ---------------------------------------------------------------------------

struct Palette {
    std::vector<Elem> vals;                 // vals[0] is zero
    std::vector<std::pair<int, int>> exps;  // aligned exponents (fast path; coeff 1 only)
    bool monomial_only = true;              // true when every entry has coefficient 1
};

std::vector<std::string> layer_vars(const FieldPtr& f) {
    std::vector<std::string> vars;
    const Field* cur = f.get();
    while (cur->kind != FieldKind::Finite) {
        vars.push_back(cur->var);
        cur = cur->base.get();
    }
    std::reverse(vars.begin(), vars.end());  // bottom-most first
    return vars;
}

Elem var_elem(const FieldPtr& f, int layer_from_bottom) {
    // element representing the variable of the given layer inside f
    std::vector<const Field*> chain;
    const Field* cur = f.get();
    while (cur->kind != FieldKind::Finite) {
        chain.push_back(cur);
        cur = cur->base.get();
    }
    std::reverse(chain.begin(), chain.end());
    const Field* layer = chain[static_cast<size_t>(layer_from_bottom)];
    // build generator of that layer, then embed upward
    // find shared_ptr chain by rebuilding from f downward
    std::vector<FieldPtr> ptrs;
    FieldPtr p = f;
    while (p->kind != FieldKind::Finite) {
        ptrs.push_back(p);
        p = p->base;
    }
    std::reverse(ptrs.begin(), ptrs.end());
    Elem g = Elem::generator(ptrs[static_cast<size_t>(layer_from_bottom)]);
    (void)layer;
    return Elem::embed(f, g);
}

Palette build_palette(const FieldPtr& f, int deg) {
    Palette P;
    P.vals.push_back(Elem::zero(f));
    P.exps.emplace_back(-1, -1);
    if (f->kind == FieldKind::Finite) {
        // all field elements, 0 first
        std::uint64_t q = f->order();
        for (std::uint64_t idx = 1; idx < q; ++idx) {
            std::vector<std::uint8_t> c(static_cast<size_t>(f->k));
            std::uint64_t v = idx;
            for (int i = 0; i < f->k; ++i) {
                c[static_cast<size_t>(i)] = static_cast<std::uint8_t>(v % f->p);
                v /= static_cast<std::uint64_t>(f->p);
            }
            P.vals.push_back(Elem::finite_from_coords(f, std::move(c)));
            P.exps.emplace_back(-1, -1);
        }
        P.monomial_only = false;
        return P;
    }
    auto vars = layer_vars(f);
    const int L = static_cast<int>(vars.size());
    std::vector<Elem> gens;
    for (int i = 0; i < L; ++i) gens.push_back(var_elem(f, i));
    const Field* bot = f.get();
    while (bot->kind != FieldKind::Finite) bot = bot->base.get();
    const bool gf2_bottom = (bot->p == 2 && bot->k == 1);
    // exponent tuples by (total degree, lex)
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur(static_cast<size_t>(L), 0);
    // enumerate all tuples with entries <= deg, then sort graded-lex
    long long total = 1;
    for (int i = 0; i < L; ++i) total *= (deg + 1);
    for (long long t = 0; t < total; ++t) {
        long long v = t;
        for (int i = 0; i < L; ++i) {
            cur[static_cast<size_t>(i)] = static_cast<int>(v % (deg + 1));
            v /= (deg + 1);
        }
        tuples.push_back(cur);
    }
    std::sort(tuples.begin(), tuples.end(), [](const auto& x, const auto& y) {
        int sx = 0, sy = 0;
        for (int v : x) sx += v;
        for (int v : y) sy += v;
        if (sx != sy) return sx < sy;
        return x < y;
    });
    for (const auto& t : tuples) {
        Elem m = Elem::one(f);
        for (int i = 0; i < L; ++i)
            for (int e = 0; e < t[static_cast<size_t>(i)]; ++e) m = m * gens[static_cast<size_t>(i)];
        if (gf2_bottom) {
            P.vals.push_back(m);
            int e1 = t[0];
            int e2 = L >= 2 ? t[1] : 0;
            P.exps.emplace_back(e1, e2);
        } else {
            // include nonzero bottom coefficients when the bottom is small
            FieldPtr botp = f;
            while (botp->kind != FieldKind::Finite) botp = botp->base;
            std::uint64_t q = botp->order();
            if (q > 16) q = 2;  // coefficient 1 only
            for (std::uint64_t ci = 1; ci < q; ++ci) {
                std::vector<std::uint8_t> cc(static_cast<size_t>(botp->k));
                std::uint64_t v = ci;
                for (int i = 0; i < botp->k; ++i) {
                    cc[static_cast<size_t>(i)] = static_cast<std::uint8_t>(v % botp->p);
                    v /= static_cast<std::uint64_t>(botp->p);
                }
                Elem coeff = Elem::embed(f, Elem::finite_from_coords(botp, std::move(cc)));
                P.vals.push_back(coeff * m);
                P.exps.emplace_back(-1, -1);
                P.monomial_only = false;
            }
        }
    }
    return P;
}

// ---------------------------------------------------------------------------
// fast bivariate GF(2) evaluation
// ---------------------------------------------------------------------------

struct BP2 {
    std::vector<std::uint64_t> rows;  // rows[i] = mask of top-var exponents at bottom-var^i
    bool zero() const {
        for (auto r : rows)
            if (r) return false;
        return true;
    }
    int max_bit() const {
        int mb = 0;
        for (auto r : rows)
            if (r) mb = std::max(mb, 63 - __builtin_clzll(r));
        return mb;
    }
};

// nested polynomial element -> BP2; requires denominator 1 at every layer
bool elem_to_bp2(const Elem& e, int depth, BP2& out) {
    out.rows.clear();
    if (e.is_zero()) return true;
    if (depth == 1) {
        // single var: bits index its exponent, one row
        if (poly_deg(e.den()) != 0 || !e.den()[0].is_one()) return false;
        std::uint64_t mask = 0;
        const Poly& n = e.num();
        if (poly_deg(n) > 62) return false;
        for (int j = 0; j <= poly_deg(n); ++j) {
            const Elem& c = n[static_cast<size_t>(j)];
            if (c.is_zero()) continue;
            if (!c.is_one()) return false;  // GF(2) bottom only
            mask |= 1ULL << j;
        }
        out.rows.push_back(mask);
        return true;
    }
    // depth 2: top var = bits, bottom var = rows
    if (poly_deg(e.den()) != 0 || !e.den()[0].is_one()) return false;
    const Poly& n = e.num();
    if (poly_deg(n) > 62) return false;
    for (int j = 0; j <= poly_deg(n); ++j) {
        const Elem& c = n[static_cast<size_t>(j)];
        if (c.is_zero()) continue;
        if (poly_deg(c.den()) != 0 || !c.den()[0].is_one()) return false;
        const Poly& cn = c.num();
        for (int i = 0; i <= poly_deg(cn); ++i) {
            const Elem& b = cn[static_cast<size_t>(i)];
            if (b.is_zero()) continue;
            if (!b.is_one()) return false;
            if (static_cast<size_t>(i) >= out.rows.size()) out.rows.resize(static_cast<size_t>(i) + 1, 0);
            out.rows[static_cast<size_t>(i)] |= 1ULL << j;
        }
    }
    return true;
}

struct FastCtx {
    bool ok = false;
    int depth = 0;
    // per block: A = D*a, X = D, B = D*b; per quasilinear entry: C = D*c
    std::vector<std::array<BP2, 3>> blocks;
    std::vector<BP2> qls;
    int max_rows = 0, max_bits = 0;
};

// xor src shifted by (dr rows, db bits) into acc
inline void bp2_accum(std::vector<std::uint64_t>& acc, const BP2& src, int dr, int db) {
    for (size_t i = 0; i < src.rows.size(); ++i) {
        if (!src.rows[i]) continue;
        acc[i + static_cast<size_t>(dr)] ^= src.rows[i] << db;
    }
}

FastCtx build_fast_ctx(const QuadraticForm& q, int deg) {
    FastCtx ctx;
    const FieldPtr& F = q.owner;
    if (F->kind == FieldKind::Finite) return ctx;
    const Field* bot = F.get();
    int depth = 0;
    while (bot->kind != FieldKind::Finite) {
        bot = bot->base.get();
        ++depth;
    }
    if (!(bot->p == 2 && bot->k == 1) || depth > 2) return ctx;
    ctx.depth = depth;
    // clear denominators at every layer: scaling the whole form by D keeps
    // the zero set
    Elem D = Elem::one(F);
    auto fold = [&](const Elem& e) { D = D * full_denominator(e * D); };
    for (const auto& [a, b] : q.blocks) { fold(a); fold(b); }
    for (const auto& c : q.quasilinear) fold(c);
    int maxrow = 0, maxbit = 0;
    auto conv = [&](const Elem& e, BP2& out) {
        if (!elem_to_bp2(e * D, depth, out)) return false;
        maxrow = std::max(maxrow, static_cast<int>(out.rows.size()));
        maxbit = std::max(maxbit, out.max_bit());
        return true;
    };
    for (const auto& [a, b] : q.blocks) {
        std::array<BP2, 3> trio;
        if (!conv(a, trio[0]) || !conv(Elem::one(F), trio[1]) || !conv(b, trio[2])) return ctx;
        ctx.blocks.push_back(std::move(trio));
    }
    for (const auto& c : q.quasilinear) {
        BP2 bp;
        if (!conv(c, bp)) return ctx;
        ctx.qls.push_back(std::move(bp));
    }
    // capacity: candidate monomials contribute up to 2*deg per variable
    int extra = 2 * deg;
    // rows = bottom var for depth 2, the only var for depth 1 lives in bits
    if (depth == 2 && maxrow - 1 + extra > 120) return ctx;
    if (maxbit + extra > 62) return ctx;
    ctx.max_rows = (depth == 2 ? maxrow + extra + 1 : 1);
    ctx.max_bits = maxbit + extra;
    ctx.ok = true;
    return ctx;
}

// evaluate D*q at the candidate given by palette exponent pairs; true if zero
inline bool fast_is_zero(const FastCtx& ctx, const std::vector<std::pair<int, int>>& cand,
                         std::vector<std::uint64_t>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    size_t idx = 0;
    for (const auto& trio : ctx.blocks) {
        auto [xa, xb] = cand[idx];
        auto [ya, yb] = cand[idx + 1];
        idx += 2;
        // rows = bottom exponent; for depth 1 the single var lives in bits
        if (ctx.depth == 1) {
            if (xa >= 0) bp2_accum(scratch, trio[0], 0, 2 * xa);
            if (xa >= 0 && ya >= 0) bp2_accum(scratch, trio[1], 0, xa + ya);
            if (ya >= 0) bp2_accum(scratch, trio[2], 0, 2 * ya);
        } else {
            if (xa >= 0) bp2_accum(scratch, trio[0], 2 * xa, 2 * xb);
            if (xa >= 0 && ya >= 0) bp2_accum(scratch, trio[1], xa + ya, xb + yb);
            if (ya >= 0) bp2_accum(scratch, trio[2], 2 * ya, 2 * yb);
        }
    }
    for (const auto& bp : ctx.qls) {
        auto [za, zb] = cand[idx++];
        if (za < 0) continue;
        if (ctx.depth == 1)
            bp2_accum(scratch, bp, 0, 2 * za);
        else
            bp2_accum(scratch, bp, 2 * za, 2 * zb);
    }
    for (auto r : scratch)
        if (r) return false;
    return true;
}

// decode candidate index into palette indices (little-endian, radix R)
inline void decode(long long I, long long R, int dim, std::vector<int>& out) {
    for (int i = 0; i < dim; ++i) {
        out[static_cast<size_t>(i)] = static_cast<int>(I % R);
        I /= R;
    }
}

std::optional<std::vector<Elem>> verify_and_pack(const QuadraticForm& q,
                                                 const std::vector<Elem>& v) {
    bool nonzero = false;
    for (const auto& x : v)
        if (!x.is_zero()) nonzero = true;
    if (!nonzero) return std::nullopt;
    if (!evaluate(q, v).is_zero()) return std::nullopt;
    return v;
}

// candidate index -> Elem vector via palette
std::vector<Elem> decode_to_elems(const QuadraticForm& q, const Palette& P, long long I) {
    const long long R = static_cast<long long>(P.vals.size());
    const int dim = q.dim();
    std::vector<int> digits(static_cast<size_t>(dim));
    decode(I, R, dim, digits);
    std::vector<Elem> v;
    v.reserve(static_cast<size_t>(dim));
    for (int d : digits) v.push_back(P.vals[static_cast<size_t>(d)]);
    return v;
}

// ---------------------------------------------------------------------------
// brute kernels
// ---------------------------------------------------------------------------

struct BruteSpace {
    Palette palette;
    long long radix = 0;
    long long total = 0;  // min(R^dim, cap); candidate 0 excluded by callers
};

BruteSpace make_space(const QuadraticForm& q, int deg, long long cap) {
    BruteSpace s;
    s.palette = build_palette(q.owner, deg);
    s.radix = static_cast<long long>(s.palette.vals.size());
    long long total = 1;
    for (int i = 0; i < q.dim(); ++i) {
        if (total > cap / s.radix + 1) { total = cap + 1; break; }
        total *= s.radix;
    }
    s.total = std::min(total, cap + 1);
    return s;
}

std::optional<std::vector<Elem>> brute_core(const QuadraticForm& q, int deg, long long cap,
                                            bool parallel) {
    if (q.dim() == 0) return std::nullopt;
    BruteSpace S = make_space(q, deg, cap);
    FastCtx fast = build_fast_ctx(q, deg);
    const int dim = q.dim();
    const long long R = S.radix;

    long long hit = -1;
    if (fast.ok && S.palette.monomial_only) {
        std::atomic<long long> best(S.total);
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#else
        (void)parallel;
#endif
        {
            std::vector<std::uint64_t> scratch(static_cast<size_t>(fast.max_rows) + 1, 0);
            std::vector<int> digits(static_cast<size_t>(dim));
            std::vector<std::pair<int, int>> cand(static_cast<size_t>(dim));
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8192)
#endif
            for (long long I = 1; I < S.total; ++I) {
                if (I >= best.load(std::memory_order_relaxed)) continue;
                decode(I, R, dim, digits);
                for (int i = 0; i < dim; ++i) cand[static_cast<size_t>(i)] = S.palette.exps[static_cast<size_t>(digits[static_cast<size_t>(i)])];
                if (fast_is_zero(fast, cand, scratch)) {
                    long long cur = best.load(std::memory_order_relaxed);
                    while (I < cur && !best.compare_exchange_weak(cur, I)) {}
                }
            }
        }
        if (best.load() < S.total) hit = best.load();
    } else {
        // generic exact path (no parallelism: Elem arithmetic dominates anyway)
        for (long long I = 1; I < S.total; ++I) {
            std::vector<Elem> v = decode_to_elems(q, S.palette, I);
            if (evaluate(q, v).is_zero()) { hit = I; break; }
        }
    }
    if (hit < 0) return std::nullopt;
    auto v = decode_to_elems(q, S.palette, hit);
    auto res = verify_and_pack(q, v);
    if (!res) throw std::logic_error("brute kernel produced a non-witness");
    return res;
}

}  // namespace

std::optional<std::vector<Elem>> brute_witness_serial(const QuadraticForm& q, int deg,
                                                      long long cap) {
    return brute_core(q, deg, cap, false);
}

std::optional<std::vector<Elem>> brute_witness_parallel(const QuadraticForm& q, int deg,
                                                        long long cap) {
    return brute_core(q, deg, cap, true);
}

long long brute_candidate_count(const QuadraticForm& q, int deg) {
    BruteSpace S = make_space(q, deg, (1LL << 62));
    return S.total;
}

// ---------------------------------------------------------------------------
// finite exhaustive kernels
// ---------------------------------------------------------------------------

namespace {

struct FiniteTables {
    int q = 0;
    std::vector<Elem> elems;
    std::vector<int> mul, add;  // q*q tables
    std::vector<int> block_a, block_b, ql;  // entry indices
    bool ok = false;
};

FiniteTables build_tables(const QuadraticForm& qf) {
    FiniteTables T;
    const FieldPtr& F = qf.owner;
    if (F->kind != FieldKind::Finite || F->order() > 128) return T;
    const int q = static_cast<int>(F->order());
    T.q = q;
    for (int i = 0; i < q; ++i) {
        std::vector<std::uint8_t> c(static_cast<size_t>(F->k));
        int v = i;
        for (int d = 0; d < F->k; ++d) {
            c[static_cast<size_t>(d)] = static_cast<std::uint8_t>(v % F->p);
            v /= F->p;
        }
        T.elems.push_back(Elem::finite_from_coords(F, std::move(c)));
    }
    auto index_of = [&](const Elem& e) {
        int v = 0, m = 1;
        for (int d = 0; d < F->k; ++d) {
            v += m * e.coords()[static_cast<size_t>(d)];
            m *= F->p;
        }
        return v;
    };
    T.mul.resize(static_cast<size_t>(q) * q);
    T.add.resize(static_cast<size_t>(q) * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            T.mul[static_cast<size_t>(i) * q + j] = index_of(T.elems[static_cast<size_t>(i)] * T.elems[static_cast<size_t>(j)]);
            T.add[static_cast<size_t>(i) * q + j] = index_of(T.elems[static_cast<size_t>(i)] + T.elems[static_cast<size_t>(j)]);
        }
    for (const auto& [a, b] : qf.blocks) {
        T.block_a.push_back(index_of(a));
        T.block_b.push_back(index_of(b));
    }
    for (const auto& c : qf.quasilinear) T.ql.push_back(index_of(c));
    T.ok = true;
    return T;
}

std::optional<std::vector<Elem>> finite_core(const QuadraticForm& qf, std::uint64_t cap,
                                             bool parallel) {
    const FieldPtr& F = qf.owner;
    if (F->kind != FieldKind::Finite) throw std::invalid_argument("finite kernel on infinite field");
    if (qf.dim() == 0) return std::nullopt;
    FiniteTables T = build_tables(qf);
    std::uint64_t total = 1;
    const std::uint64_t q = F->order();
    for (int i = 0; i < qf.dim(); ++i) {
        if (total > cap / q + 1) { total = cap + 1; break; }
        total *= q;
    }
    total = std::min(total, cap + 1);
    const int dim = qf.dim();
    const int nb = static_cast<int>(qf.blocks.size());

    auto eval_idx = [&](std::uint64_t I, std::vector<int>& digs) -> bool {
        for (int i = 0; i < dim; ++i) {
            digs[static_cast<size_t>(i)] = static_cast<int>(I % q);
            I /= q;
        }
        int acc = 0;
        const int Q = T.q;
        for (int b = 0; b < nb; ++b) {
            int x = digs[static_cast<size_t>(2 * b)], y = digs[static_cast<size_t>(2 * b + 1)];
            int t1 = T.mul[static_cast<size_t>(T.block_a[static_cast<size_t>(b)]) * Q + T.mul[static_cast<size_t>(x) * Q + x]];
            int t2 = T.mul[static_cast<size_t>(x) * Q + y];
            int t3 = T.mul[static_cast<size_t>(T.block_b[static_cast<size_t>(b)]) * Q + T.mul[static_cast<size_t>(y) * Q + y]];
            acc = T.add[static_cast<size_t>(acc) * Q + t1];
            acc = T.add[static_cast<size_t>(acc) * Q + t2];
            acc = T.add[static_cast<size_t>(acc) * Q + t3];
        }
        for (size_t j = 0; j < T.ql.size(); ++j) {
            int z = digs[static_cast<size_t>(2 * nb) + j];
            acc = T.add[static_cast<size_t>(acc) * Q + T.mul[static_cast<size_t>(T.ql[j]) * Q + T.mul[static_cast<size_t>(z) * Q + z]]];
        }
        return acc == 0;
    };

    long long hit = -1;
    if (T.ok) {
        std::atomic<std::uint64_t> best(total);
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
        {
            std::vector<int> digs(static_cast<size_t>(dim));
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16384)
#endif
            for (long long I = 1; I < static_cast<long long>(total); ++I) {
                if (static_cast<std::uint64_t>(I) >= best.load(std::memory_order_relaxed)) continue;
                if (eval_idx(static_cast<std::uint64_t>(I), digs)) {
                    std::uint64_t cur = best.load(std::memory_order_relaxed);
                    while (static_cast<std::uint64_t>(I) < cur &&
                           !best.compare_exchange_weak(cur, static_cast<std::uint64_t>(I))) {}
                }
            }
        }
        if (best.load() < total) hit = static_cast<long long>(best.load());
    } else {
        (void)parallel;
        std::vector<int> digs(static_cast<size_t>(dim));
        std::vector<Elem> all;
        for (std::uint64_t i = 0; i < q; ++i) {
            std::vector<std::uint8_t> c(static_cast<size_t>(F->k));
            std::uint64_t v = i;
            for (int d = 0; d < F->k; ++d) {
                c[static_cast<size_t>(d)] = static_cast<std::uint8_t>(v % F->p);
                v /= F->p;
            }
            all.push_back(Elem::finite_from_coords(F, std::move(c)));
        }
        for (std::uint64_t I = 1; I < total; ++I) {
            std::uint64_t v = I;
            std::vector<Elem> vec;
            for (int i = 0; i < dim; ++i) {
                vec.push_back(all[static_cast<size_t>(v % q)]);
                v /= q;
            }
            if (evaluate(qf, vec).is_zero()) { hit = static_cast<long long>(I); break; }
        }
    }
    if (hit < 0) return std::nullopt;
    std::uint64_t v = static_cast<std::uint64_t>(hit);
    std::vector<Elem> vec;
    for (int i = 0; i < dim; ++i) {
        std::uint64_t d = v % q;
        v /= q;
        std::vector<std::uint8_t> c(static_cast<size_t>(F->k));
        for (int dd = 0; dd < F->k; ++dd) {
            c[static_cast<size_t>(dd)] = static_cast<std::uint8_t>(d % F->p);
            d /= static_cast<std::uint64_t>(F->p);
        }
        vec.push_back(Elem::finite_from_coords(F, std::move(c)));
    }
    auto res = verify_and_pack(qf, vec);
    if (!res) throw std::logic_error("finite kernel produced a non-witness");
    return res;
}

}  // namespace

std::optional<std::vector<Elem>> finite_witness_serial(const QuadraticForm& q, std::uint64_t cap) {
    return finite_core(q, cap, false);
}

std::optional<std::vector<Elem>> finite_witness_parallel(const QuadraticForm& q, std::uint64_t cap) {
    return finite_core(q, cap, true);
}

// ---------------------------------------------------------------------------
// directed pass
// ---------------------------------------------------------------------------

namespace {

struct Directed {
    const QuadraticForm& q;
    const FieldPtr& F;
    std::vector<Elem> pool;  // small values, zero first

    std::optional<std::vector<Elem>> run();

private:
    std::vector<Elem> fresh() const {
        return std::vector<Elem>(static_cast<size_t>(q.dim()), Elem::zero(F));
    }
    int ql_offset() const { return 2 * static_cast<int>(q.blocks.size()); }

    // value of block b at (s,t)
    Elem block_val(size_t b, const Elem& s, const Elem& t) const {
        const auto& [A, B] = q.blocks[b];
        return A * s * s + s * t + B * t * t;
    }
    // close block j so its value equals mu; coordinates written into v
    bool close_block(size_t j, const Elem& mu, std::vector<Elem>& v) const {
        const auto& [A, B] = q.blocks[j];
        // (x, 0): A x^2 = mu
        if (!A.is_zero()) {
            auto r = pth_root(mu / A);
            if (r) {
                v[2 * j] = *r;
                v[2 * j + 1] = Elem::zero(F);
                return true;
            }
            // (x, 1): A x^2 + x + (B + mu) = 0  <=>  X^2 + X = A(B + mu), X = A x
            WpResult w = wp_solve(A * (B + mu));
            if (w.kind == WpKind::ExactWitness) {
                v[2 * j] = *w.witness / A;
                v[2 * j + 1] = Elem::one(F);
                return true;
            }
        }
        if (!B.is_zero()) {
            auto r = pth_root(mu / B);
            if (r) {
                v[2 * j] = Elem::zero(F);
                v[2 * j + 1] = *r;
                return true;
            }
            WpResult w = wp_solve(B * (A + mu));
            if (w.kind == WpKind::ExactWitness) {
                v[2 * j] = Elem::one(F);
                v[2 * j + 1] = *w.witness / B;
                return true;
            }
        }
        return false;
    }
    bool close_ql(size_t j, const Elem& mu, std::vector<Elem>& v) const {
        auto r = pth_root(mu / q.quasilinear[j]);
        if (!r) return false;
        v[static_cast<size_t>(ql_offset()) + j] = *r;
        return true;
    }
    std::optional<std::vector<Elem>> close_anywhere(const Elem& mu, std::vector<Elem> v,
                                                    const std::vector<bool>& used) const {
        if (mu.is_zero()) {
            bool nz = false;
            for (const auto& x : v)
                if (!x.is_zero()) nz = true;
            if (nz && evaluate(q, v).is_zero()) return v;
            return std::nullopt;
        }
        for (size_t j = 0; j < q.blocks.size(); ++j) {
            if (used[j]) continue;
            std::vector<Elem> w = v;
            if (close_block(j, mu, w) && evaluate(q, w).is_zero()) return w;
        }
        for (size_t j = 0; j < q.quasilinear.size(); ++j) {
            if (used[q.blocks.size() + j]) continue;
            std::vector<Elem> w = v;
            if (close_ql(j, mu, w) && evaluate(q, w).is_zero()) return w;
        }
        return std::nullopt;
    }
};

std::optional<std::vector<Elem>> Directed::run() {
    const size_t nb = q.blocks.size();
    const size_t nq = q.quasilinear.size();
    // degenerate blocks give witnesses outright
    for (size_t b = 0; b < nb; ++b) {
        const auto& [A, B] = q.blocks[b];
        if (A.is_zero() || B.is_zero()) {
            auto v = fresh();
            if (A.is_zero()) v[2 * b] = Elem::one(F);
            else v[2 * b + 1] = Elem::one(F);
            return v;
        }
    }
    // identical block pairs: the diagonal vector is isotropic in char 2
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = i + 1; j < nb; ++j)
            if (q.blocks[i].first == q.blocks[j].first && q.blocks[i].second == q.blocks[j].second) {
                auto v = fresh();
                v[2 * i] = v[2 * j] = Elem::one(F);
                return v;
            }
    // single block with split Arf class
    for (size_t b = 0; b < nb; ++b) {
        const auto& [A, B] = q.blocks[b];
        WpResult w = wp_solve(A * B);
        if (w.kind == WpKind::ExactWitness) {
            auto v = fresh();
            v[2 * b] = *w.witness / A;
            v[2 * b + 1] = Elem::one(F);
            if (evaluate(q, v).is_zero()) return v;
        }
    }
    // one source assignment + one closing slot
    std::vector<bool> used(nb + nq, false);
    for (size_t i = 0; i < nb; ++i) {
        used.assign(nb + nq, false);
        used[i] = true;
        for (const auto& s : pool)
            for (const auto& t : pool) {
                if (s.is_zero() && t.is_zero()) continue;
                auto v = fresh();
                v[2 * i] = s;
                v[2 * i + 1] = t;
                Elem mu = block_val(i, s, t);
                if (auto r = close_anywhere(mu, v, used)) return r;
            }
    }
    for (size_t i = 0; i < nq; ++i) {
        used.assign(nb + nq, false);
        used[nb + i] = true;
        for (const auto& s : pool) {
            if (s.is_zero()) continue;
            auto v = fresh();
            v[static_cast<size_t>(ql_offset()) + i] = s;
            Elem mu = q.quasilinear[i] * s * s;
            if (auto r = close_anywhere(mu, v, used)) return r;
        }
    }
    // two sources + one closing slot (small pool prefix)
    const size_t prefix = std::min<size_t>(pool.size(), 8);
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = i + 1; j < nb; ++j) {
            used.assign(nb + nq, false);
            used[i] = used[j] = true;
            for (size_t s1 = 0; s1 < prefix; ++s1)
                for (size_t t1 = 0; t1 < prefix; ++t1)
                    for (size_t s2 = 0; s2 < prefix; ++s2)
                        for (size_t t2 = 0; t2 < prefix; ++t2) {
                            if (pool[s1].is_zero() && pool[t1].is_zero()) continue;
                            auto v = fresh();
                            v[2 * i] = pool[s1];
                            v[2 * i + 1] = pool[t1];
                            v[2 * j] = pool[s2];
                            v[2 * j + 1] = pool[t2];
                            Elem mu = block_val(i, pool[s1], pool[t1]) + block_val(j, pool[s2], pool[t2]);
                            if (auto r = close_anywhere(mu, v, used)) return r;
                        }
        }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<Elem>> find_isotropy_witness(const QuadraticForm& q,
                                                       const SearchConfig& cfg) {
    if (q.dim() == 0) return std::nullopt;
    if (q.owner->p != 2) throw std::invalid_argument("witness search handles characteristic 2 forms");
    if (q.owner->kind == FieldKind::Finite) {
        std::uint64_t need = 1;
        bool overflow = false;
        for (int i = 0; i < q.dim(); ++i) {
            if (need > cfg.finite_cap / q.owner->order()) { overflow = true; break; }
            need *= q.owner->order();
        }
        if (!overflow && need <= cfg.finite_cap)
            return cfg.parallel ? finite_witness_parallel(q, cfg.finite_cap)
                                : finite_witness_serial(q, cfg.finite_cap);
    }
    if (cfg.use_directed) {
        Palette P = build_palette(q.owner, std::min(cfg.monomial_deg, 2));
        Directed d{q, q.owner, {}};
        size_t pool_n = std::min<size_t>(P.vals.size(), 16);
        d.pool.assign(P.vals.begin(), P.vals.begin() + static_cast<long>(pool_n));
        if (auto r = d.run()) {
            auto checked = verify_and_pack(q, *r);
            if (!checked) throw std::logic_error("directed search produced a non-witness");
            return checked;
        }
    }
    if (cfg.use_brute && q.owner->kind != FieldKind::Finite) {
        auto r = cfg.parallel ? brute_witness_parallel(q, cfg.monomial_deg, cfg.max_candidates)
                              : brute_witness_serial(q, cfg.monomial_deg, cfg.max_candidates);
        if (r) return r;
    }
    return std::nullopt;
}

}  // namespace c2f
