#include "c2f/asext.hpp"

#include <stdexcept>

namespace c2f {

namespace {
int char_p(const ASExt& u) { return u.field()->p; }

void check_compatible(const ASExt& u, const ASExt& v) {
    if (!same_field(u.field(), v.field()) || !(u.a == v.a))
        throw std::invalid_argument("Artin-Schreier elements over different extensions");
}
}  // namespace

bool ASExt::operator==(const ASExt& o) const {
    if (!same_field(field(), o.field()) || !(a == o.a)) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (!(c[i] == o.c[i])) return false;
    return true;
}

std::string ASExt::str() const {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += "|";
        s += c[i].str();
    }
    return s + ")";
}

ASExt asext_zero(const Elem& a) {
    ASExt u;
    u.a = a;
    u.c.assign(static_cast<size_t>(a.field()->p), Elem::zero(a.field()));
    return u;
}

ASExt asext_scalar(const Elem& a, const Elem& s) {
    ASExt u = asext_zero(a);
    u.c[0] = s;
    return u;
}

ASExt asext_gen(const Elem& a) {
    ASExt u = asext_zero(a);
    u.c[1] = Elem::one(a.field());
    return u;
}

ASExt asext_make(const Elem& a, std::vector<Elem> coords) {
    if (coords.size() != static_cast<size_t>(a.field()->p))
        throw std::invalid_argument("Artin-Schreier element needs p coordinates");
    ASExt u;
    u.a = a;
    u.c = std::move(coords);
    return u;
}

ASExt asext_add(const ASExt& u, const ASExt& v) {
    check_compatible(u, v);
    ASExt r = u;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + v.c[i];
    return r;
}

ASExt asext_neg(const ASExt& u) {
    ASExt r = u;
    for (auto& x : r.c) x = -x;
    return r;
}

ASExt asext_sub(const ASExt& u, const ASExt& v) { return asext_add(u, asext_neg(v)); }

ASExt asext_scale(const ASExt& u, const Elem& s) {
    ASExt r = u;
    for (auto& x : r.c) x = x * s;
    return r;
}

ASExt asext_mul(const ASExt& u, const ASExt& v) {
    check_compatible(u, v);
    const int p = char_p(u);
    const FieldPtr& F = u.field();
    std::vector<Elem> prod(static_cast<size_t>(2 * p - 1), Elem::zero(F));
    for (int i = 0; i < p; ++i) {
        if (u.c[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < p; ++j)
            prod[static_cast<size_t>(i + j)] =
                prod[static_cast<size_t>(i + j)] + u.c[static_cast<size_t>(i)] * v.c[static_cast<size_t>(j)];
    }
    // reduce with x^p = x + a, top degree first
    for (int d = 2 * p - 2; d >= p; --d) {
        Elem cd = prod[static_cast<size_t>(d)];
        if (cd.is_zero()) continue;
        prod[static_cast<size_t>(d)] = Elem::zero(F);
        prod[static_cast<size_t>(d - p + 1)] = prod[static_cast<size_t>(d - p + 1)] + cd;
        prod[static_cast<size_t>(d - p)] = prod[static_cast<size_t>(d - p)] + cd * u.a;
    }
    ASExt r;
    r.a = u.a;
    r.c.assign(prod.begin(), prod.begin() + p);
    return r;
}

Elem as_norm(const ASExt& u) {
    const int p = char_p(u);
    const FieldPtr& F = u.field();
    // columns: coordinates of u * x^j
    std::vector<std::vector<Elem>> M(static_cast<size_t>(p),
                                     std::vector<Elem>(static_cast<size_t>(p), Elem::zero(F)));
    ASExt pow = u;
    ASExt gen = asext_gen(u.a);
    for (int j = 0; j < p; ++j) {
        for (int i = 0; i < p; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = pow.c[static_cast<size_t>(i)];
        if (j + 1 < p) pow = asext_mul(pow, gen);
    }
    // fraction-free enough: Gaussian elimination over the field with pivoting
    Elem det = Elem::one(F);
    bool negate = false;
    for (int col = 0; col < p; ++col) {
        int piv = -1;
        for (int r = col; r < p; ++r)
            if (!M[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) { piv = r; break; }
        if (piv < 0) return Elem::zero(F);
        if (piv != col) {
            std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(col)]);
            negate = !negate;
        }
        Elem d = M[static_cast<size_t>(col)][static_cast<size_t>(col)];
        det = det * d;
        for (int r = col + 1; r < p; ++r) {
            Elem f = M[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            Elem ratio = f / d;
            for (int cidx = col; cidx < p; ++cidx)
                M[static_cast<size_t>(r)][static_cast<size_t>(cidx)] =
                    M[static_cast<size_t>(r)][static_cast<size_t>(cidx)] -
                    ratio * M[static_cast<size_t>(col)][static_cast<size_t>(cidx)];
        }
    }
    return negate ? -det : det;
}

ASExt asext_inverse(const ASExt& u) {
    const int p = char_p(u);
    const FieldPtr& F = u.field();
    // solve u*v = 1 as a p x p linear system over F
    std::vector<std::vector<Elem>> M(static_cast<size_t>(p),
                                     std::vector<Elem>(static_cast<size_t>(p + 1), Elem::zero(F)));
    ASExt pow = u;
    ASExt gen = asext_gen(u.a);
    for (int j = 0; j < p; ++j) {
        for (int i = 0; i < p; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = pow.c[static_cast<size_t>(i)];
        if (j + 1 < p) pow = asext_mul(pow, gen);
    }
    M[0][static_cast<size_t>(p)] = Elem::one(F);
    // Gauss-Jordan
    for (int col = 0; col < p; ++col) {
        int piv = -1;
        for (int r = col; r < p; ++r)
            if (!M[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) { piv = r; break; }
        if (piv < 0) throw std::domain_error("element is not invertible (norm is zero)");
        std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(col)]);
        Elem d = M[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int cidx = col; cidx <= p; ++cidx)
            M[static_cast<size_t>(col)][static_cast<size_t>(cidx)] =
                M[static_cast<size_t>(col)][static_cast<size_t>(cidx)] / d;
        for (int r = 0; r < p; ++r) {
            if (r == col) continue;
            Elem f = M[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int cidx = col; cidx <= p; ++cidx)
                M[static_cast<size_t>(r)][static_cast<size_t>(cidx)] =
                    M[static_cast<size_t>(r)][static_cast<size_t>(cidx)] -
                    f * M[static_cast<size_t>(col)][static_cast<size_t>(cidx)];
        }
    }
    ASExt v = asext_zero(u.a);
    for (int i = 0; i < p; ++i) v.c[static_cast<size_t>(i)] = M[static_cast<size_t>(i)][static_cast<size_t>(p)];
    return v;
}

ASExt random_asext(const Elem& a, Rng& rng, int deg, bool nonzero) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        ASExt u = asext_zero(a);
        for (auto& x : u.c) x = random_elem(a.field(), rng, deg, false);
        if (!nonzero || !u.is_zero()) return u;
    }
    return asext_scalar(a, Elem::one(a.field()));
}

}  // namespace c2f
