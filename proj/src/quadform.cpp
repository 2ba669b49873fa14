#include "c2f/quadform.hpp"

#include <stdexcept>

namespace c2f {

namespace {
void require_char2(const FieldPtr& F) {
    if (F->p != 2) throw std::invalid_argument("quadratic block forms require characteristic 2");
}
}  // namespace

std::string QuadraticForm::str() const {
    std::string s;
    for (const auto& [a, b] : blocks) {
        if (!s.empty()) s += " | ";
        s += "[" + a.str() + "," + b.str() + "]";
    }
    if (!quasilinear.empty()) {
        if (!s.empty()) s += " | ";
        s += "<";
        for (size_t i = 0; i < quasilinear.size(); ++i) {
            if (i) s += ",";
            s += quasilinear[i].str();
        }
        s += ">";
    }
    return s.empty() ? "0" : s;
}

QuadraticForm qf_empty(const FieldPtr& F) {
    require_char2(F);
    return QuadraticForm{F, {}, {}};
}

QuadraticForm qf_block(const Elem& a, const Elem& b) {
    if (!same_field(a.field(), b.field())) throw std::invalid_argument("mixed owners in block");
    require_char2(a.field());
    return QuadraticForm{a.field(), {{a, b}}, {}};
}

QuadraticForm hyperbolic_plane(const FieldPtr& F) {
    return qf_block(Elem::zero(F), Elem::zero(F));
}

QuadraticForm qf_quasilinear(const FieldPtr& F, std::vector<Elem> entries) {
    require_char2(F);
    for (const auto& c : entries) {
        if (!same_field(c.field(), F)) throw std::invalid_argument("mixed owners in quasilinear part");
        if (c.is_zero()) throw std::invalid_argument("quasilinear entries must be nonzero");
    }
    return QuadraticForm{F, {}, std::move(entries)};
}

QuadraticForm qf_sum(const QuadraticForm& a, const QuadraticForm& b) {
    if (!same_field(a.owner, b.owner)) throw std::invalid_argument("mixed owners in orthogonal sum");
    QuadraticForm r = a;
    r.blocks.insert(r.blocks.end(), b.blocks.begin(), b.blocks.end());
    r.quasilinear.insert(r.quasilinear.end(), b.quasilinear.begin(), b.quasilinear.end());
    return r;
}

QuadraticForm qf_scale(const Elem& c, const QuadraticForm& q) {
    if (!same_field(c.field(), q.owner)) throw std::invalid_argument("scalar from a different field");
    if (c.is_zero()) throw std::invalid_argument("scaling factor must be nonzero");
    QuadraticForm r = qf_empty(q.owner);
    for (const auto& [a, b] : q.blocks) r.blocks.emplace_back(c * a, b / c);
    for (const auto& d : q.quasilinear) r.quasilinear.push_back(c * d);
    return r;
}

DiagonalBilinear bilinear_diag(const FieldPtr& F, std::vector<Elem> entries) {
    require_char2(F);
    for (const auto& d : entries)
        if (d.is_zero() || !same_field(d.field(), F))
            throw std::invalid_argument("diagonal bilinear entries must be nonzero elements of the owner");
    return DiagonalBilinear{F, std::move(entries)};
}

QuadraticForm tensor(const DiagonalBilinear& B, const QuadraticForm& q) {
    if (!same_field(B.owner, q.owner)) throw std::invalid_argument("mixed owners in tensor");
    if (!q.nonsingular())
        throw std::invalid_argument("tensor with a singular form is not supported");
    QuadraticForm r = qf_empty(q.owner);
    for (const auto& d : B.entries) r = qf_sum(r, qf_scale(d, q));
    return r;
}

QuadraticForm pfister_quad(const FieldPtr& F, const PfisterSlots& s) {
    require_char2(F);
    for (const auto& a : s.bilinear)
        if (a.is_zero()) throw std::invalid_argument("bilinear Pfister slots must be nonzero");
    QuadraticForm q = qf_block(Elem::one(F), s.quad);
    for (const auto& a : s.bilinear) q = qf_sum(q, qf_scale(a, q));
    return q;
}

Elem evaluate(const QuadraticForm& q, const std::vector<Elem>& v) {
    if (static_cast<int>(v.size()) != q.dim()) throw std::invalid_argument("vector length != dim");
    Elem acc = Elem::zero(q.owner);
    size_t idx = 0;
    for (const auto& [a, b] : q.blocks) {
        const Elem& x = v[idx];
        const Elem& y = v[idx + 1];
        acc = acc + a * x * x + x * y + b * y * y;
        idx += 2;
    }
    for (const auto& c : q.quasilinear) {
        const Elem& z = v[idx++];
        acc = acc + c * z * z;
    }
    return acc;
}

Elem polar(const QuadraticForm& q, const std::vector<Elem>& u, const std::vector<Elem>& v) {
    if (static_cast<int>(u.size()) != q.dim() || static_cast<int>(v.size()) != q.dim())
        throw std::invalid_argument("vector length != dim");
    // B(u,v) = sum over blocks of x_u y_v + x_v y_u; the quasilinear part is
    // in the radical of the polar form
    Elem acc = Elem::zero(q.owner);
    size_t idx = 0;
    for (size_t b = 0; b < q.blocks.size(); ++b, idx += 2)
        acc = acc + u[idx] * v[idx + 1] + v[idx] * u[idx + 1];
    return acc;
}

ArfResult arf(const QuadraticForm& q, int budget) {
    if (!q.nonsingular()) throw std::invalid_argument("nonsingular form required");
    Elem rep = Elem::zero(q.owner);
    for (const auto& [a, b] : q.blocks) rep = rep + a * b;
    ArfResult r;
    r.representative = rep;
    r.detail = wp_solve(rep, budget);
    switch (r.detail.kind) {
        case WpKind::ExactWitness:
        case WpKind::InImage: r.cls = ArfClass::Trivial; break;
        case WpKind::NotInImage: r.cls = ArfClass::NonTrivial; break;
        case WpKind::Unknown: r.cls = ArfClass::Unknown; break;
    }
    return r;
}

}  // namespace c2f
