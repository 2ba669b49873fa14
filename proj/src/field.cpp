#include "c2f/field.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

namespace c2f {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Fixed moduli for small extensions (Conway polynomials), little-endian,
// monic. Shipping a fixed table keeps element printing and cross-run
// equality reproducible.
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{7, 2}, {3, 6, 1}},
        {{13, 2}, {2, 12, 1}},
    };
    return table;
}

int mod_inv(int a, int p) {
    // extended Euclid on ints
    int t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    if (r != 1) throw std::domain_error("not invertible mod p");
    return ((t % p) + p) % p;
}

using FF = std::vector<std::uint8_t>;

void ff_trim_size(FF& a, int k) { a.resize(static_cast<size_t>(k), 0); }

FF ff_add(const FF& a, const FF& b, int p) {
    FF r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint8_t>((a[i] + b[i]) % p);
    return r;
}

FF ff_neg(const FF& a, int p) {
    FF r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint8_t>((p - a[i]) % p);
    return r;
}

bool ff_is_zero(const FF& a) {
    for (auto c : a)
        if (c) return false;
    return true;
}

// multiplication in GF(p^k) modulo the table polynomial
FF ff_mul(const FF& a, const FF& b, const Field& f) {
    const int p = f.p, k = f.k;
    std::vector<int> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    // reduce by modulus: x^k = -(c_0 + c_1 x + ... + c_{k-1} x^{k-1})
    for (int d = 2 * k - 2; d >= k; --d) {
        int c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (int j = 0; j < k; ++j)
            prod[d - k + j] = ((prod[d - k + j] - c * f.modulus[j]) % p + p * 13) % p;
    }
    FF r(k);
    for (int i = 0; i < k; ++i) r[i] = static_cast<std::uint8_t>(prod[i]);
    return r;
}

FF ff_pow(FF a, std::uint64_t e, const Field& f) {
    FF r(f.k, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = ff_mul(r, a, f);
        a = ff_mul(a, a, f);
        e >>= 1;
    }
    return r;
}

FF ff_inv(const FF& a, const Field& f) {
    if (ff_is_zero(a)) throw std::domain_error("division by zero");
    if (f.k == 1) {
        FF r(1);
        r[0] = static_cast<std::uint8_t>(mod_inv(a[0], f.p));
        return r;
    }
    return ff_pow(a, f.order() - 2, f);
}

}  // namespace

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

FieldPtr Field::finite(int p, int k) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    auto f = std::make_shared<Field>();
    f->kind = FieldKind::Finite;
    f->p = p;
    f->k = k;
    if (k >= 2) {
        auto it = conway_table().find({p, k});
        if (it == conway_table().end())
            throw std::invalid_argument("no modulus table entry for GF(" + std::to_string(p) +
                                        "^" + std::to_string(k) + ")");
        f->modulus = it->second;
    }
    return f;
}

static FieldPtr make_layer(FieldKind kind, FieldPtr base, const std::string& var) {
    if (!base) throw std::invalid_argument("null base field");
    if (var.empty()) throw std::invalid_argument("empty variable name");
    if (base->has_var(var)) throw std::invalid_argument("duplicate variable name: " + var);
    auto f = std::make_shared<Field>();
    f->kind = kind;
    f->base = std::move(base);
    f->var = var;
    f->p = f->base->p;
    f->depth = f->base->depth + 1;
    return f;
}

FieldPtr Field::rational(FieldPtr base, const std::string& var) {
    return make_layer(FieldKind::RationalFunc, std::move(base), var);
}

FieldPtr Field::laurent(FieldPtr base, const std::string& var) {
    return make_layer(FieldKind::LaurentLocal, std::move(base), var);
}

int Field::characteristic() const { return p; }

bool Field::has_var(const std::string& v) const {
    const Field* f = this;
    while (f->kind != FieldKind::Finite) {
        if (f->var == v) return true;
        f = f->base.get();
    }
    return false;
}

std::uint64_t Field::order() const {
    if (kind != FieldKind::Finite) throw std::domain_error("infinite field");
    std::uint64_t n = 1;
    for (int i = 0; i < k; ++i) n *= static_cast<std::uint64_t>(p);
    return n;
}

std::string Field::spec() const {
    if (kind == FieldKind::Finite) {
        if (k == 1) return "GF(" + std::to_string(p) + ")";
        return "GF(" + std::to_string(p) + "^" + std::to_string(k) + ")";
    }
    std::string b = base->spec();
    if (kind == FieldKind::RationalFunc) return b + "(" + var + ")";
    return b + "((" + var + "))";
}

bool Field::has_laurent_layer() const {
    const Field* f = this;
    while (f->kind != FieldKind::Finite) {
        if (f->kind == FieldKind::LaurentLocal) return true;
        f = f->base.get();
    }
    return false;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (a->kind == FieldKind::Finite) return a->p == b->p && a->k == b->k;
    return a->var == b->var && same_field(a->base, b->base);
}

// ---------------------------------------------------------------------------
// polynomial helpers
// ---------------------------------------------------------------------------

void poly_trim(Poly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

bool poly_is_zero(const Poly& a) { return a.empty(); }

int poly_deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly poly_add(const FieldPtr& K, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Elem::zero(K));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    poly_trim(r);
    return r;
}

Poly poly_neg(const FieldPtr& K, const Poly& a) {
    (void)K;
    Poly r(a);
    for (auto& c : r) c = -c;
    return r;
}

Poly poly_sub(const FieldPtr& K, const Poly& a, const Poly& b) {
    return poly_add(K, a, poly_neg(K, b));
}

Poly poly_mul(const FieldPtr& K, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Elem::zero(K));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    poly_trim(r);
    return r;
}

Poly poly_scale(const FieldPtr& K, const Poly& a, const Elem& c) {
    if (c.is_zero()) return {};
    (void)K;
    Poly r(a);
    for (auto& x : r) x = x * c;
    return r;
}

std::pair<Poly, Poly> poly_divrem(const FieldPtr& K, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Poly q, r = a;
    int db = poly_deg(b);
    Elem lead_inv = b.back().inverse();
    if (poly_deg(r) >= db) q.assign(static_cast<size_t>(poly_deg(r) - db + 1), Elem::zero(K));
    while (poly_deg(r) >= db) {
        int shift = poly_deg(r) - db;
        Elem c = r.back() * lead_inv;
        q[static_cast<size_t>(shift)] = c;
        for (int i = 0; i <= db; ++i)
            r[static_cast<size_t>(i + shift)] = r[static_cast<size_t>(i + shift)] - c * b[static_cast<size_t>(i)];
        poly_trim(r);
    }
    poly_trim(q);
    return {q, r};
}

Poly poly_monic(const FieldPtr& K, const Poly& a) {
    (void)K;
    if (a.empty() || a.back().is_one()) return a;
    return poly_scale(nullptr, a, a.back().inverse());
}

Poly poly_gcd(const FieldPtr& K, Poly a, Poly b) {
    while (!b.empty()) {
        auto [q, r] = poly_divrem(K, a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(K, a);
}

int poly_ord(const Poly& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) return static_cast<int>(i);
    return -1;
}

Poly poly_shift(const Poly& a, int m) {
    if (a.empty()) return {};
    Poly r(a.size() + static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) r[static_cast<size_t>(i)] = Elem::zero(a[0].field());
    for (size_t i = 0; i < a.size(); ++i) r[i + static_cast<size_t>(m)] = a[i];
    return r;
}

// ---------------------------------------------------------------------------
// Elem
// ---------------------------------------------------------------------------

Elem make_canonical_fraction(const FieldPtr& f, Poly num, Poly den) {
    const FieldPtr& K = f->base;
    poly_trim(num);
    poly_trim(den);
    if (den.empty()) throw std::domain_error("division by zero");
    if (num.empty()) {
        den.clear();
        den.push_back(Elem::one(K));
    } else {
        Poly g = poly_gcd(K, num, den);
        if (poly_deg(g) > 0) {
            num = poly_divrem(K, num, g).first;
            den = poly_divrem(K, den, g).first;
        }
        if (!den.back().is_one()) {
            Elem inv = den.back().inverse();
            num = poly_scale(K, num, inv);
            den = poly_scale(K, den, inv);
        }
    }
    Elem e;
    e.f_ = f;
    auto pay = std::make_shared<FracPayload>();
    pay->num = std::move(num);
    pay->den = std::move(den);
    e.fr_ = std::move(pay);
    return e;
}

bool Elem::is_zero() const {
    if (!f_) throw std::logic_error("uninitialized element");
    if (f_->kind == FieldKind::Finite) return ff_is_zero(fin_);
    return fr_->num.empty();
}

bool Elem::is_one() const {
    if (f_->kind == FieldKind::Finite) {
        if (fin_.empty() || fin_[0] != 1) return false;
        for (size_t i = 1; i < fin_.size(); ++i)
            if (fin_[i]) return false;
        return true;
    }
    return fr_->num.size() == 1 && fr_->num[0].is_one() && fr_->den.size() == 1 &&
           fr_->den[0].is_one();
}

static void check_same_owner(const Elem& a, const Elem& b) {
    if (!same_field(a.field(), b.field()))
        throw std::invalid_argument("elements of different fields");
}

Elem Elem::operator+(const Elem& o) const {
    check_same_owner(*this, o);
    if (f_->kind == FieldKind::Finite) return finite_from_coords(f_, ff_add(fin_, o.fin_, f_->p));
    const FieldPtr& K = f_->base;
    Poly n = poly_add(K, poly_mul(K, fr_->num, o.fr_->den), poly_mul(K, o.fr_->num, fr_->den));
    Poly d = poly_mul(K, fr_->den, o.fr_->den);
    return make_canonical_fraction(f_, std::move(n), std::move(d));
}

Elem Elem::operator-() const {
    if (f_->kind == FieldKind::Finite) return finite_from_coords(f_, ff_neg(fin_, f_->p));
    return make_canonical_fraction(f_, poly_neg(f_->base, fr_->num), fr_->den);
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem Elem::operator*(const Elem& o) const {
    check_same_owner(*this, o);
    if (f_->kind == FieldKind::Finite) return finite_from_coords(f_, ff_mul(fin_, o.fin_, *f_));
    const FieldPtr& K = f_->base;
    return make_canonical_fraction(f_, poly_mul(K, fr_->num, o.fr_->num),
                                   poly_mul(K, fr_->den, o.fr_->den));
}

Elem Elem::operator/(const Elem& o) const {
    check_same_owner(*this, o);
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (f_->kind == FieldKind::Finite) return finite_from_coords(f_, ff_mul(fin_, ff_inv(o.fin_, *f_), *f_));
    const FieldPtr& K = f_->base;
    return make_canonical_fraction(f_, poly_mul(K, fr_->num, o.fr_->den),
                                   poly_mul(K, fr_->den, o.fr_->num));
}

bool Elem::operator==(const Elem& o) const {
    if (!same_field(f_, o.f_)) return false;
    if (f_->kind == FieldKind::Finite) return fin_ == o.fin_;
    if (fr_->num.size() != o.fr_->num.size() || fr_->den.size() != o.fr_->den.size()) return false;
    for (size_t i = 0; i < fr_->num.size(); ++i)
        if (!(fr_->num[i] == o.fr_->num[i])) return false;
    for (size_t i = 0; i < fr_->den.size(); ++i)
        if (!(fr_->den[i] == o.fr_->den[i])) return false;
    return true;
}

Elem Elem::pow(std::uint64_t e) const {
    Elem r = Elem::one(f_);
    Elem b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Elem Elem::inverse() const { return Elem::one(f_) / *this; }

Elem Elem::frobenius() const { return pow(static_cast<std::uint64_t>(f_->p)); }

const std::vector<std::uint8_t>& Elem::coords() const {
    if (f_->kind != FieldKind::Finite) throw std::logic_error("not a finite-field element");
    return fin_;
}

const Poly& Elem::num() const {
    if (f_->kind == FieldKind::Finite) throw std::logic_error("not a layer element");
    return fr_->num;
}

const Poly& Elem::den() const {
    if (f_->kind == FieldKind::Finite) throw std::logic_error("not a layer element");
    return fr_->den;
}

Elem Elem::zero(const FieldPtr& f) {
    if (f->kind == FieldKind::Finite) return finite_from_coords(f, FF(static_cast<size_t>(f->k), 0));
    Poly den{Elem::one(f->base)};
    Elem e;
    e.f_ = f;
    auto pay = std::make_shared<FracPayload>();
    pay->den = std::move(den);
    e.fr_ = std::move(pay);
    return e;
}

Elem Elem::one(const FieldPtr& f) { return from_int(f, 1); }

Elem Elem::from_int(const FieldPtr& f, long long n) {
    if (f->kind == FieldKind::Finite) {
        FF c(static_cast<size_t>(f->k), 0);
        long long m = n % f->p;
        if (m < 0) m += f->p;
        c[0] = static_cast<std::uint8_t>(m);
        return finite_from_coords(f, std::move(c));
    }
    Elem b = from_int(f->base, n);
    return embed(f, b);
}

Elem Elem::generator(const FieldPtr& f) {
    if (f->kind == FieldKind::Finite) {
        if (f->k < 2) throw std::domain_error("prime field has no generator symbol g");
        FF c(static_cast<size_t>(f->k), 0);
        c[1] = 1;
        return finite_from_coords(f, std::move(c));
    }
    Poly num{Elem::zero(f->base), Elem::one(f->base)};
    return from_poly(f, std::move(num));
}

Elem Elem::embed(const FieldPtr& f, const Elem& base_elem) {
    if (f->kind == FieldKind::Finite) {
        if (!same_field(f, base_elem.field())) throw std::invalid_argument("bad embed");
        return base_elem;
    }
    if (same_field(f, base_elem.field())) return base_elem;
    Elem in_base = same_field(f->base, base_elem.field()) ? base_elem : embed(f->base, base_elem);
    Poly num;
    if (!in_base.is_zero()) num.push_back(in_base);
    Poly den{Elem::one(f->base)};
    Elem e;
    e.f_ = f;
    auto pay = std::make_shared<FracPayload>();
    pay->num = std::move(num);
    pay->den = std::move(den);
    e.fr_ = std::move(pay);
    return e;
}

Elem Elem::from_fraction(const FieldPtr& f, Poly num, Poly den) {
    if (f->kind == FieldKind::Finite) throw std::logic_error("fractions need a layer field");
    return make_canonical_fraction(f, std::move(num), std::move(den));
}

Elem Elem::from_poly(const FieldPtr& f, Poly num) {
    Poly den{Elem::one(f->base)};
    return from_fraction(f, std::move(num), std::move(den));
}

Elem Elem::finite_from_coords(const FieldPtr& f, std::vector<std::uint8_t> c) {
    if (f->kind != FieldKind::Finite) throw std::logic_error("finite payload on layer field");
    ff_trim_size(c, f->k);
    for (auto& x : c) x = static_cast<std::uint8_t>(x % f->p);
    Elem e;
    e.f_ = f;
    e.fin_ = std::move(c);
    return e;
}

// ---------------------------------------------------------------------------
// printing (the element grammar consumed by the parser: + - * / ^, integers,
// layer variables, g)
// ---------------------------------------------------------------------------

namespace {

std::string poly_str(const FieldPtr& K, const Poly& a, const std::string& var);

std::string elem_str_impl(const Elem& e) {
    const FieldPtr& f = e.field();
    if (f->kind == FieldKind::Finite) {
        const auto& c = e.coords();
        std::string s;
        for (int i = f->k - 1; i >= 0; --i) {
            if (!c[static_cast<size_t>(i)]) continue;
            if (!s.empty()) s += "+";
            int v = c[static_cast<size_t>(i)];
            if (i == 0) {
                s += std::to_string(v);
            } else {
                if (v != 1) s += std::to_string(v) + "*";
                s += (i == 1) ? "g" : "g^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }
    const auto& num = e.num();
    const auto& den = e.den();
    if (num.empty()) return "0";
    std::string ns = poly_str(f->base, num, f->var);
    bool den_one = den.size() == 1 && den[0].is_one();
    if (den_one) return ns;
    std::string ds = poly_str(f->base, den, f->var);
    return "(" + ns + ")/(" + ds + ")";
}

bool is_atomic(const std::string& s) {
    if (s.empty()) return true;
    if (s.front() == '(' ) {
        int d = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++d;
            if (s[i] == ')') --d;
            if (d == 0) return i + 1 == s.size();
        }
    }
    for (char ch : s)
        if (ch == '+' || ch == '-' || ch == '*' || ch == '/') return false;
    return true;
}

std::string poly_str(const FieldPtr& K, const Poly& a, const std::string& var) {
    (void)K;
    std::string s;
    for (int i = poly_deg(a); i >= 0; --i) {
        const Elem& c = a[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        if (!s.empty()) s += "+";
        std::string cs = elem_str_impl(c);
        if (i == 0) {
            s += cs;
            continue;
        }
        std::string pw = (i == 1) ? var : var + "^" + std::to_string(i);
        if (cs == "1") {
            s += pw;
        } else {
            if (!is_atomic(cs)) cs = "(" + cs + ")";
            s += cs + "*" + pw;
        }
    }
    return s.empty() ? "0" : s;
}

}  // namespace

std::string Elem::str() const { return elem_str_impl(*this); }

std::uint64_t Elem::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    if (f_->kind == FieldKind::Finite) {
        for (auto c : fin_) mix(c + 1);
        return h;
    }
    mix(0x51);
    for (const auto& c : fr_->num) mix(c.hash());
    mix(0x52);
    for (const auto& c : fr_->den) mix(c.hash());
    return h;
}

// ---------------------------------------------------------------------------
// layer views
// ---------------------------------------------------------------------------

int top_valuation(const Elem& e) {
    if (e.field()->kind == FieldKind::Finite) throw std::logic_error("finite field has no valuation");
    if (e.is_zero()) throw std::domain_error("valuation of zero");
    return poly_ord(e.num()) - poly_ord(e.den());
}

Elem top_leading(const Elem& e) {
    int on = poly_ord(e.num());
    int od = poly_ord(e.den());
    return e.num()[static_cast<size_t>(on)] / e.den()[static_cast<size_t>(od)];
}

Elem eval_at_zero(const Elem& e) {
    const FieldPtr& K = e.field()->base;
    if (e.is_zero()) return Elem::zero(K);
    int v = top_valuation(e);
    if (v > 0) return Elem::zero(K);
    if (v < 0) throw std::domain_error("pole at 0");
    return top_leading(e);
}

Elem shift_by_var(const Elem& e, int m) {
    if (m == 0 || e.is_zero()) return e;
    const FieldPtr& f = e.field();
    if (m > 0) return Elem::from_fraction(f, poly_shift(e.num(), m), e.den());
    return Elem::from_fraction(f, e.num(), poly_shift(e.den(), -m));
}

Elem series_coeff(const Elem& e, int j) {
    const FieldPtr& K = e.field()->base;
    if (e.is_zero()) return Elem::zero(K);
    int v = top_valuation(e);
    if (j < v) return Elem::zero(K);
    // normalize to valuation 0 and run exact series division up to order j - v
    Elem u = shift_by_var(e, -v);
    Poly num = u.num(), den = u.den();
    int want = j - v;
    // num/den = sum c_i t^i: c_i = (num_i - sum_{l<i} c_l den_{i-l}) / den_0
    Elem d0 = den[0];
    std::vector<Elem> c(static_cast<size_t>(want) + 1, Elem::zero(K));
    for (int i = 0; i <= want; ++i) {
        Elem acc = i < static_cast<int>(num.size()) ? num[static_cast<size_t>(i)] : Elem::zero(K);
        for (int l = 0; l < i; ++l) {
            int idx = i - l;
            if (idx < static_cast<int>(den.size()))
                acc = acc - c[static_cast<size_t>(l)] * den[static_cast<size_t>(idx)];
        }
        c[static_cast<size_t>(i)] = acc / d0;
    }
    return c[static_cast<size_t>(want)];
}

ValuationResult valuation_residue(const Elem& e, const std::string& layer) {
    const FieldPtr& f = e.field();
    if (f->kind == FieldKind::Finite) throw std::invalid_argument("no such layer: " + layer);
    if (f->var == layer) {
        if (f->kind != FieldKind::LaurentLocal)
            throw std::invalid_argument("layer " + layer + " is not LaurentLocal");
        ValuationResult r;
        if (e.is_zero()) {
            r.infinite = true;
            return r;
        }
        r.v = top_valuation(e);
        r.leading = top_leading(e);
        return r;
    }
    // descend: the element must be constant in this layer
    if (!e.is_zero()) {
        if (poly_deg(e.num()) > 0 || poly_deg(e.den()) > 0)
            throw std::invalid_argument("element is not constant above layer " + layer);
        return valuation_residue(e.num()[0] / e.den()[0], layer);
    }
    return valuation_residue(Elem::zero(f->base), layer);
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

bool is_polynomial_tower(const Elem& e) {
    if (e.field()->kind == FieldKind::Finite) return true;
    if (e.is_zero()) return true;
    if (poly_deg(e.den()) != 0 || !e.den()[0].is_one()) return false;
    for (const auto& c : e.num())
        if (!is_polynomial_tower(c)) return false;
    return true;
}

namespace {
Elem clearing_step(const Elem& e) {
    const FieldPtr& f = e.field();
    if (f->kind == FieldKind::Finite || e.is_zero()) return Elem::one(f);
    if (poly_deg(e.den()) != 0 || !e.den()[0].is_one()) return Elem::from_poly(f, e.den());
    for (const auto& c : e.num()) {
        Elem g = clearing_step(c);
        if (!g.is_one()) return Elem::embed(f, g);
    }
    return Elem::one(f);
}
}  // namespace

Elem full_denominator(const Elem& e) {
    Elem d = Elem::one(e.field());
    Elem x = e;
    for (int guard = 0; guard < 256 && !is_polynomial_tower(x); ++guard) {
        Elem g = clearing_step(x);
        d = d * g;
        x = x * g;
    }
    if (!is_polynomial_tower(x)) throw std::logic_error("denominator clearing did not terminate");
    return d;
}

Elem random_elem(const FieldPtr& f, Rng& rng, int deg, bool nonzero) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Elem e = Elem::zero(f);
        if (f->kind == FieldKind::Finite) {
            FF c(static_cast<size_t>(f->k));
            for (auto& x : c) x = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(f->p)));
            e = Elem::finite_from_coords(f, std::move(c));
        } else {
            Poly num;
            for (int i = 0; i <= deg; ++i) num.push_back(random_elem(f->base, rng, deg, false));
            poly_trim(num);
            e = Elem::from_poly(f, std::move(num));
        }
        if (!nonzero || !e.is_zero()) return e;
    }
    return Elem::one(f);  // unreachable in practice
}

}  // namespace c2f
