#include "c2f/wp.hpp"

#include <algorithm>
#include <cassert>

namespace c2f {

namespace {

// ---------------------------------------------------------------------------
// flattened polynomials: up to two layer variables over the finite bottom
// ---------------------------------------------------------------------------

FieldPtr bottom_ptr(const FieldPtr& f) {
    FieldPtr b = f;
    while (b->kind != FieldKind::Finite) b = b->base;
    return b;
}

struct FlatPoly {
    FieldPtr bot;
    int n1 = 1, n2 = 1;    // allocated extents (degree+1); 1 when the var is unused
    std::vector<Elem> c;   // bottom elements, index i + j*n1

    Elem at(int i, int j) const {
        if (i >= n1 || j >= n2) return Elem::zero(bot);
        return c[static_cast<size_t>(i + j * n1)];
    }
    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    int deg1() const {
        int d = -1;
        for (int j = 0; j < n2; ++j)
            for (int i = 0; i < n1; ++i)
                if (!at(i, j).is_zero()) d = std::max(d, i);
        return d;
    }
    int deg2() const {
        int d = -1;
        for (int j = 0; j < n2; ++j)
            for (int i = 0; i < n1; ++i)
                if (!at(i, j).is_zero()) d = std::max(d, j);
        return d;
    }
};

FlatPoly flat_make(const FieldPtr& bot, int n1, int n2) {
    FlatPoly f;
    f.bot = bot;
    f.n1 = n1;
    f.n2 = n2;
    f.c.assign(static_cast<size_t>(n1) * static_cast<size_t>(n2), Elem::zero(bot));
    return f;
}

FlatPoly flat_mul(const FlatPoly& a, const FlatPoly& b) {
    FlatPoly r = flat_make(a.bot, a.n1 + b.n1 - 1, a.n2 + b.n2 - 1);
    for (int j1 = 0; j1 < a.n2; ++j1)
        for (int i1 = 0; i1 < a.n1; ++i1) {
            Elem x = a.at(i1, j1);
            if (x.is_zero()) continue;
            for (int j2 = 0; j2 < b.n2; ++j2)
                for (int i2 = 0; i2 < b.n1; ++i2) {
                    Elem y = b.at(i2, j2);
                    if (y.is_zero()) continue;
                    size_t idx = static_cast<size_t>((i1 + i2) + (j1 + j2) * r.n1);
                    r.c[idx] = r.c[idx] + x * y;
                }
        }
    return r;
}

// univariate view: column polynomials in var1 for fixed var2 power
Poly flat_col(const FlatPoly& f, int j) {
    Poly p;
    for (int i = 0; i < f.n1; ++i) p.push_back(f.at(i, j));
    poly_trim(p);
    return p;
}

// content with respect to var1: gcd of all var1-columns... i.e. gcd of the
// univariate polynomials obtained by fixing var2 powers
Poly flat_content1(const FlatPoly& f) {
    Poly g;
    for (int j = 0; j < f.n2; ++j) {
        Poly col = flat_col(f, j);
        if (poly_is_zero(col)) continue;
        g = poly_is_zero(g) ? poly_monic(f.bot, col) : poly_gcd(f.bot, g, col);
        if (poly_deg(g) == 0) break;
    }
    return g;
}

FlatPoly flat_divide_content1(const FlatPoly& f, const Poly& g) {
    if (poly_deg(g) <= 0) return f;
    FlatPoly r = flat_make(f.bot, f.n1, f.n2);
    for (int j = 0; j < f.n2; ++j) {
        Poly col = flat_col(f, j);
        if (poly_is_zero(col)) continue;
        auto [q, rem] = poly_divrem(f.bot, col, g);
        if (!poly_is_zero(rem)) throw std::logic_error("content division not exact");
        for (size_t i = 0; i < q.size(); ++i) r.c[i + static_cast<size_t>(j) * r.n1] = q[i];
    }
    return r;
}

std::optional<FlatPoly> flat_pth_root(const FlatPoly& f) {
    int p = f.bot->p;
    int d1 = f.deg1(), d2 = f.deg2();
    if (d1 < 0) return flat_make(f.bot, 1, 1);
    FlatPoly r = flat_make(f.bot, d1 / p + 1, d2 / p + 1);
    for (int j = 0; j <= d2; ++j)
        for (int i = 0; i <= d1; ++i) {
            Elem x = f.at(i, j);
            if (x.is_zero()) continue;
            if (i % p || j % p) return std::nullopt;
            // finite bottoms are perfect: root = x^(q/p)
            Elem root = x.pow(f.bot->order() / static_cast<std::uint64_t>(p));
            r.c[static_cast<size_t>(i / p + (j / p) * r.n1)] = root;
        }
    return r;
}

// layer variables from the bottom upward
std::vector<const Field*> layer_chain(const FieldPtr& f) {
    std::vector<const Field*> chain;
    const Field* cur = f.get();
    while (cur->kind != FieldKind::Finite) {
        chain.push_back(cur);
        cur = cur->base.get();
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

// exact bivariate (or simpler) fraction with a reduced content; depth <= 2
struct FlatFrac {
    FlatPoly num, den;
};

std::optional<FlatFrac> flatten_elem(const Elem& e) {
    const FieldPtr& f = e.field();
    FieldPtr bot = bottom_ptr(f);
    auto chain = layer_chain(f);
    if (chain.size() > 2) return std::nullopt;
    if (chain.empty()) {
        FlatFrac r{flat_make(bot, 1, 1), flat_make(bot, 1, 1)};
        r.num.c[0] = e;
        r.den.c[0] = Elem::one(bot);
        return r;
    }
    if (chain.size() == 1) {
        const Poly& n = e.is_zero() ? Poly{} : e.num();
        const Poly& d = e.is_zero() ? Poly{Elem::one(bot)} : e.den();
        FlatFrac r{flat_make(bot, std::max(1, poly_deg(n) + 1), 1),
                   flat_make(bot, std::max(1, poly_deg(d) + 1), 1)};
        for (size_t i = 0; i < n.size(); ++i) r.num.c[i] = n[i];
        for (size_t i = 0; i < d.size(); ++i) r.den.c[i] = d[i];
        return r;
    }
    // depth 2: coefficients are univariate fractions over the bottom
    const FieldPtr& K = f->base;
    Poly n = e.is_zero() ? Poly{} : e.num();
    Poly d = e.is_zero() ? Poly{Elem::one(K)} : e.den();
    // common denominator (univariate lcm over the bottom)
    Poly L{Elem::one(bot)};
    auto fold_den = [&](const Poly& coeffs) {
        for (const auto& cf : coeffs) {
            if (cf.is_zero()) continue;
            const Poly& cd = cf.den();
            Poly g = poly_gcd(bot, L, cd);
            L = poly_mul(bot, L, poly_divrem(bot, cd, g).first);
        }
    };
    fold_den(n);
    fold_den(d);
    auto clear = [&](const Poly& coeffs) {
        int dd2 = std::max(0, poly_deg(coeffs));
        int dd1 = 0;
        std::vector<Poly> cols(coeffs.size());
        for (size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j].is_zero()) continue;
            Poly scale = poly_divrem(bot, L, coeffs[j].den()).first;
            cols[j] = poly_mul(bot, coeffs[j].num(), scale);
            dd1 = std::max(dd1, poly_deg(cols[j]));
        }
        FlatPoly r = flat_make(bot, dd1 + 1, dd2 + 1);
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < cols[j].size(); ++i)
                r.c[i + j * static_cast<size_t>(r.n1)] = cols[j][i];
        return r;
    };
    FlatFrac r{clear(n), clear(d)};
    // coefficients were coprime in the top variable, so the only common factor
    // of the cleared pair is shared var1-content
    Poly cn = flat_content1(r.num);
    Poly cd = flat_content1(r.den);
    if (!poly_is_zero(cn) && !poly_is_zero(cd)) {
        Poly g = poly_gcd(bot, cn, cd);
        if (poly_deg(g) > 0) {
            r.num = flat_divide_content1(r.num, g);
            r.den = flat_divide_content1(r.den, g);
        }
    }
    return r;
}

Elem unflatten(const FlatPoly& fp, const FieldPtr& f) {
    auto chain = layer_chain(f);
    if (chain.empty()) {
        if (fp.deg1() > 0 || fp.deg2() > 0) throw std::logic_error("unflatten into finite field");
        return fp.at(0, 0);
    }
    if (chain.size() == 1) {
        Poly n;
        for (int i = 0; i < fp.n1; ++i) n.push_back(fp.at(i, 0));
        poly_trim(n);
        return Elem::from_poly(f, std::move(n));
    }
    const FieldPtr& K = f->base;
    Poly top;
    for (int j = 0; j < fp.n2; ++j) {
        Poly col = flat_col(fp, j);
        top.push_back(Elem::from_poly(K, std::move(col)));
    }
    poly_trim(top);
    return Elem::from_poly(f, std::move(top));
}

// ---------------------------------------------------------------------------
// dense linear solve mod p
// ---------------------------------------------------------------------------

std::optional<std::vector<int>> solve_modp(int p, int rows, int cols,
                                           std::vector<int>& M, std::vector<int>& rhs) {
    auto at = [&](int r, int c) -> int& { return M[static_cast<size_t>(r) * cols + c]; };
    std::vector<int> where(static_cast<size_t>(cols), -1);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (at(r, col)) { piv = r; break; }
        if (piv < 0) continue;
        for (int c = 0; c < cols; ++c) std::swap(at(piv, c), at(row, c));
        std::swap(rhs[static_cast<size_t>(piv)], rhs[static_cast<size_t>(row)]);
        int inv = 1;
        for (int t = 1; t < p; ++t)
            if (t * at(row, col) % p == 1) { inv = t; break; }
        for (int c = 0; c < cols; ++c) at(row, c) = at(row, c) * inv % p;
        rhs[static_cast<size_t>(row)] = rhs[static_cast<size_t>(row)] * inv % p;
        for (int r = 0; r < rows; ++r) {
            if (r == row || !at(r, col)) continue;
            int factor = at(r, col);
            for (int c = 0; c < cols; ++c)
                at(r, c) = ((at(r, c) - factor * at(row, c)) % p + p * p) % p;
            rhs[static_cast<size_t>(r)] =
                ((rhs[static_cast<size_t>(r)] - factor * rhs[static_cast<size_t>(row)]) % p + p * p) % p;
        }
        where[static_cast<size_t>(col)] = row;
        ++row;
    }
    // consistency
    for (int r = 0; r < rows; ++r) {
        bool all0 = true;
        for (int c = 0; c < cols; ++c)
            if (at(r, c)) { all0 = false; break; }
        if (all0 && rhs[static_cast<size_t>(r)] % p) return std::nullopt;
    }
    std::vector<int> x(static_cast<size_t>(cols), 0);
    for (int c = 0; c < cols; ++c)
        if (where[static_cast<size_t>(c)] >= 0)
            x[static_cast<size_t>(c)] = rhs[static_cast<size_t>(where[static_cast<size_t>(c)])];
    return x;
}

// ---------------------------------------------------------------------------
// semilinear solve  U^p - U*W = N  over the monomial basis g^l a^i b^j
// ---------------------------------------------------------------------------

enum class SemiResult { Solved, NoSolution, TooBig };

SemiResult solve_semilinear(const FieldPtr& bot, const FlatPoly& N, const FlatPoly& W,
                            int du1, int du2, int budget, FlatPoly& out) {
    const int p = bot->p;
    const int k = bot->k;
    const int t1 = std::max({p * du1 + 1, du1 + std::max(0, W.deg1()) + 1, N.deg1() + 1});
    const int t2 = std::max({p * du2 + 1, du2 + std::max(0, W.deg2()) + 1, N.deg2() + 1});
    const long long cols = static_cast<long long>(k) * (du1 + 1) * (du2 + 1);
    const long long rows = static_cast<long long>(k) * t1 * t2;
    if (cols > 4000 || rows > 40000 || cols * rows > static_cast<long long>(budget) * 2000LL)
        return SemiResult::TooBig;

    std::vector<int> M(static_cast<size_t>(rows * cols), 0);
    std::vector<int> rhs(static_cast<size_t>(rows), 0);
    auto row_of = [&](int l, int i, int j) { return l + k * (i + t1 * j); };
    auto col_of = [&](int l, int i, int j) { return l + k * (i + (du1 + 1) * j); };

    Elem g = (k >= 2) ? Elem::generator(bot) : Elem::one(bot);
    for (int j = 0; j <= du2; ++j)
        for (int i = 0; i <= du1; ++i)
            for (int l = 0; l < k; ++l) {
                int col = col_of(l, i, j);
                Elem gl = g.pow(static_cast<std::uint64_t>(l));
                // U^p contribution
                Elem glp = gl.pow(static_cast<std::uint64_t>(p));
                const auto& pc = glp.coords();
                for (int l2 = 0; l2 < k; ++l2)
                    if (pc[static_cast<size_t>(l2)])
                        M[static_cast<size_t>(row_of(l2, p * i, p * j)) * cols + col] =
                            (M[static_cast<size_t>(row_of(l2, p * i, p * j)) * cols + col] +
                             pc[static_cast<size_t>(l2)]) % p;
                // -U*W contribution
                for (int j2 = 0; j2 < W.n2; ++j2)
                    for (int i2 = 0; i2 < W.n1; ++i2) {
                        Elem w = W.at(i2, j2);
                        if (w.is_zero()) continue;
                        Elem prod = gl * w;
                        const auto& qc = prod.coords();
                        for (int l2 = 0; l2 < k; ++l2)
                            if (qc[static_cast<size_t>(l2)]) {
                                size_t idx = static_cast<size_t>(row_of(l2, i + i2, j + j2)) * cols + col;
                                M[idx] = ((M[idx] - qc[static_cast<size_t>(l2)]) % p + p) % p;
                            }
                    }
            }
    for (int j = 0; j < N.n2; ++j)
        for (int i = 0; i < N.n1; ++i) {
            Elem x = N.at(i, j);
            if (x.is_zero()) continue;
            const auto& xc = x.coords();
            for (int l = 0; l < k; ++l)
                rhs[static_cast<size_t>(row_of(l, i, j))] = xc[static_cast<size_t>(l)];
        }

    auto sol = solve_modp(p, static_cast<int>(rows), static_cast<int>(cols), M, rhs);
    if (!sol) return SemiResult::NoSolution;
    out = flat_make(bot, du1 + 1, du2 + 1);
    for (int j = 0; j <= du2; ++j)
        for (int i = 0; i <= du1; ++i) {
            std::vector<std::uint8_t> coord(static_cast<size_t>(k));
            for (int l = 0; l < k; ++l)
                coord[static_cast<size_t>(l)] =
                    static_cast<std::uint8_t>((*sol)[static_cast<size_t>(col_of(l, i, j))]);
            out.c[static_cast<size_t>(i + j * (du1 + 1))] = Elem::finite_from_coords(bot, coord);
        }
    return SemiResult::Solved;
}

// exact rational witness over a function layer; tri-state
enum class RatState { Found, NoWitness, Unknown };

RatState wp_rational_witness(const Elem& a, int budget, Elem& out) {
    auto flat = flatten_elem(a);
    if (!flat) return RatState::Unknown;
    const FieldPtr bot = bottom_ptr(a.field());
    const int p = bot->p;
    auto V = flat_pth_root(flat->den);
    if (!V) return RatState::NoWitness;  // denominator of wp(P/Q) is exactly Q^p
    // W = V^{p-1}
    FlatPoly W = flat_make(bot, 1, 1);
    W.c[0] = Elem::one(bot);
    for (int t = 0; t < p - 1; ++t) W = flat_mul(W, *V);
    int du1 = std::max({V->deg1(), (flat->num.deg1() + p - 1) / p, 0});
    int du2 = std::max({V->deg2(), (flat->num.deg2() + p - 1) / p, 0});
    FlatPoly U;
    switch (solve_semilinear(bot, flat->num, W, du1, du2, budget, U)) {
        case SemiResult::TooBig: return RatState::Unknown;
        case SemiResult::NoSolution: return RatState::NoWitness;
        case SemiResult::Solved: break;
    }
    Elem lambda = unflatten(U, a.field()) / unflatten(*V, a.field());
    if (!(lambda.pow(static_cast<std::uint64_t>(p)) - lambda == a))
        throw std::logic_error("wp witness verification failed");
    out = lambda;
    return RatState::Found;
}

}  // namespace

// ---------------------------------------------------------------------------
// p-th roots
// ---------------------------------------------------------------------------

namespace {
std::optional<Poly> poly_pth_root(const FieldPtr& K, const Poly& a, int p) {
    if (a.empty()) return Poly{};
    Poly r(static_cast<size_t>(poly_deg(a) / p) + 1, Elem::zero(K));
    for (int i = 0; i <= poly_deg(a); ++i) {
        const Elem& c = a[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        if (i % p) return std::nullopt;
        auto rc = pth_root(c);
        if (!rc) return std::nullopt;
        r[static_cast<size_t>(i / p)] = *rc;
    }
    poly_trim(r);
    return r;
}
}  // namespace

std::optional<Elem> pth_root(const Elem& e) {
    const FieldPtr& f = e.field();
    const int p = f->p;
    if (f->kind == FieldKind::Finite) return e.pow(f->order() / static_cast<std::uint64_t>(p));
    if (e.is_zero()) return Elem::zero(f);
    auto rn = poly_pth_root(f->base, e.num(), p);
    if (!rn) return std::nullopt;
    auto rd = poly_pth_root(f->base, e.den(), p);
    if (!rd) return std::nullopt;
    return Elem::from_fraction(f, std::move(*rn), std::move(*rd));
}

bool is_pth_power(const Elem& e) { return pth_root(e).has_value(); }

// ---------------------------------------------------------------------------
// 2-basis components
// ---------------------------------------------------------------------------

std::vector<Elem> frobenius_components(const Elem& e) {
    const FieldPtr& f = e.field();
    if (f->p != 2) throw std::domain_error("2-basis components need characteristic 2");
    if (f->kind == FieldKind::Finite) return {*pth_root(e)};
    const FieldPtr& K = f->base;
    size_t sub = static_cast<size_t>(1) << (f->depth - 1);
    std::vector<Elem> out(sub * 2, Elem::zero(f));
    if (e.is_zero()) return out;
    // e = (num*den)/den^2; split num*den by top-variable exponent parity
    Poly P = poly_mul(K, e.num(), e.den());
    std::vector<std::vector<Poly>> acc(sub * 2);  // mask -> coefficient polys (little endian)
    for (int j = 0; j <= poly_deg(P); ++j) {
        const Elem& cj = P[static_cast<size_t>(j)];
        if (cj.is_zero()) continue;
        std::vector<Elem> comp = frobenius_components(cj);
        for (size_t m = 0; m < comp.size(); ++m) {
            if (comp[m].is_zero()) continue;
            size_t mask = m + (j % 2 ? sub : 0);
            auto& polyAcc = acc[mask];
            size_t pos = static_cast<size_t>(j / 2);
            if (polyAcc.empty()) polyAcc.resize(1);
            if (polyAcc[0].size() <= pos) polyAcc[0].resize(pos + 1, Elem::zero(K));
            polyAcc[0][pos] = comp[m];
        }
    }
    for (size_t mask = 0; mask < out.size(); ++mask) {
        if (acc[mask].empty()) continue;
        Poly q = acc[mask][0];
        poly_trim(q);
        if (poly_is_zero(q)) continue;
        out[mask] = Elem::from_fraction(f, std::move(q), e.den());
    }
    return out;
}

// ---------------------------------------------------------------------------
// liftability
// ---------------------------------------------------------------------------

bool topologically_small(const Elem& e) {
    const FieldPtr& f = e.field();
    if (e.is_zero()) return true;
    if (f->kind == FieldKind::Finite) return false;
    if (f->kind == FieldKind::RationalFunc) return false;  // no topology to lean on
    if (top_valuation(e) < 0) return false;
    return topologically_small(series_coeff(e, 0));
}

// ---------------------------------------------------------------------------
// wp_solve
// ---------------------------------------------------------------------------

namespace {

WpResult wp_finite(const Elem& a) {
    const FieldPtr& f = a.field();
    const int p = f->p, k = f->k;
    // wp is linear over the prime field; solve in coordinates
    std::vector<int> M(static_cast<size_t>(k) * k, 0);
    Elem g = (k >= 2) ? Elem::generator(f) : Elem::one(f);
    for (int i = 0; i < k; ++i) {
        Elem gi = g.pow(static_cast<std::uint64_t>(i));
        Elem im = gi.pow(static_cast<std::uint64_t>(p)) - gi;
        const auto& c = im.coords();
        for (int r = 0; r < k; ++r) M[static_cast<size_t>(r) * k + i] = c[static_cast<size_t>(r)];
    }
    std::vector<int> rhs(static_cast<size_t>(k));
    for (int r = 0; r < k; ++r) rhs[static_cast<size_t>(r)] = a.coords()[static_cast<size_t>(r)];
    auto sol = solve_modp(p, k, k, M, rhs);
    WpResult res;
    if (!sol) {
        res.kind = WpKind::NotInImage;
        res.proof = "finite-field image: linear system over GF(" + std::to_string(p) + ") inconsistent";
        return res;
    }
    Elem lambda = Elem::zero(f);
    for (int i = 0; i < k; ++i)
        lambda = lambda + Elem::from_int(f, (*sol)[static_cast<size_t>(i)]) * g.pow(static_cast<std::uint64_t>(i));
    if (!(lambda.pow(static_cast<std::uint64_t>(p)) - lambda == a))
        throw std::logic_error("finite wp witness verification failed");
    res.kind = WpKind::ExactWitness;
    res.witness = lambda;
    res.proof = "finite-field linear algebra";
    return res;
}

WpResult wp_laurent_complete(const Elem& a, int budget) {
    const FieldPtr& f = a.field();
    const int p = f->p;
    WpResult res;
    Elem work = a;
    Elem lambda = Elem::zero(f);
    while (!work.is_zero()) {
        int v = top_valuation(work);
        if (v >= 0) break;
        if (((v % p) + p) % p != 0) {
            res.kind = WpKind::NotInImage;
            res.proof = "valuation obstruction: v(" + f->var + ") = " + std::to_string(v) +
                        " not divisible by p";
            return res;
        }
        Elem lead = top_leading(work);
        auto root = pth_root(lead);
        if (!root) {
            res.kind = WpKind::NotInImage;
            res.proof = "leading coefficient at " + f->var + "^" + std::to_string(v) +
                        " is not a p-th power";
            return res;
        }
        Elem m = shift_by_var(Elem::embed(f, *root), v / p);
        lambda = lambda + m;
        work = work - (m.pow(static_cast<std::uint64_t>(p)) - m);
        if (!work.is_zero() && top_valuation(work) <= v)
            throw std::logic_error("peel did not raise valuation");
    }
    Elem c0 = work.is_zero() ? Elem::zero(f->base) : series_coeff(work, 0);
    WpResult rec = wp_solve(c0, budget);
    if (rec.kind == WpKind::NotInImage) {
        res.kind = WpKind::NotInImage;
        res.proof = "residue descent: " + rec.proof;
        return res;
    }
    if (rec.kind == WpKind::Unknown) return rec;
    lambda = lambda + Elem::embed(f, *rec.witness);
    Elem residual = a - (lambda.pow(static_cast<std::uint64_t>(p)) - lambda);
    if (residual.is_zero()) {
        res.kind = WpKind::ExactWitness;
        res.witness = lambda;
        res.proof = "valuation peel";
        return res;
    }
    if (!topologically_small(residual))
        throw std::logic_error("truncated wp witness failed the liftability check");
    res.kind = WpKind::InImage;
    res.witness = lambda;  // truncated: residual error is topologically small
    res.proof = "complete-field membership (peel + residue); witness truncated";
    return res;
}

}  // namespace

WpResult wp_solve(const Elem& a, int budget) {
    const FieldPtr& f = a.field();
    if (a.is_zero()) {
        WpResult r;
        r.kind = WpKind::ExactWitness;
        r.witness = Elem::zero(f);
        r.proof = "zero";
        return r;
    }
    if (f->kind == FieldKind::Finite) return wp_finite(a);

    Elem lambda;
    RatState rs = wp_rational_witness(a, budget, lambda);
    if (rs == RatState::Found) {
        WpResult r;
        r.kind = WpKind::ExactWitness;
        r.witness = lambda;
        r.proof = "rational witness (denominator p-th root + semilinear solve)";
        return r;
    }
    if (f->kind == FieldKind::RationalFunc) {
        WpResult r;
        if (rs == RatState::NoWitness) {
            r.kind = WpKind::NotInImage;
            r.proof = "no rational witness: denominator/degree analysis is exhaustive";
        } else {
            r.kind = WpKind::Unknown;
            r.proof = "budget exhausted before the rational analysis completed";
        }
        return r;
    }
    return wp_laurent_complete(a, budget);
}

}  // namespace c2f
