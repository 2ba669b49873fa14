#include "c2f/isotropy.hpp"

#include "c2f/linalg.hpp"

#include <stdexcept>

namespace c2f {

namespace {

// ---------------------------------------------------------------------------
// finite-field rules
// ---------------------------------------------------------------------------

// Nonsingular forms over a finite field are hyperbolic iff the Arf class is
// trivial, and the anisotropic kernel has dimension 2 otherwise.
int finite_adim_nonsingular(const QuadraticForm& q) {
    if (q.blocks.empty()) return 0;
    ArfResult a = arf(q);
    if (a.cls == ArfClass::Unknown) throw std::logic_error("finite Arf must be decisive");
    return a.cls == ArfClass::Trivial ? 0 : 2;
}

Tri finite_aniso(const QuadraticForm& q) {
    if (q.dim() == 0) return Tri::Yes;
    for (const auto& [a, b] : q.blocks)
        if (a.is_zero() || b.is_zero()) return Tri::No;
    const bool has_blocks = !q.blocks.empty();
    const size_t nq = q.quasilinear.size();
    if (has_blocks && nq > 0) return Tri::No;   // dim>=2 nonsingular part is universal
    if (nq >= 2) return Tri::No;                // perfect field: entries are square-dependent
    if (!has_blocks) return Tri::Yes;           // single quasilinear entry
    return finite_adim_nonsingular(q) == q.dim() ? Tri::Yes : Tri::No;
}

// ---------------------------------------------------------------------------
// residue descent over a Laurent layer
// ---------------------------------------------------------------------------

struct ResidueSplit {
    bool ok = false;            // false: degenerate block or ramified reduction
    bool trivially_isotropic = false;
    QuadraticForm level0, level1;
};

// block [a,b] ~ a[1, c] with c = ab; peel v(c) < 0 by exact wp-shifts
// (isometries b -> b + s + a s^2 change c by wp(as)); then the block is
// t^e u [1, c] with u a unit and c integral, contributing the residue block
// ubar [1, cbar] at level e = v(a) mod 2.
ResidueSplit residue_split(const QuadraticForm& q) {
    const FieldPtr& F = q.owner;
    const FieldPtr& K = F->base;
    ResidueSplit out;
    out.level0 = QuadraticForm{K, {}, {}};
    out.level1 = QuadraticForm{K, {}, {}};
    for (const auto& [a, b] : q.blocks) {
        if (a.is_zero() || b.is_zero()) {
            out.trivially_isotropic = true;
            return out;
        }
        Elem c = a * b;
        while (!c.is_zero() && top_valuation(c) < 0) {
            int v = top_valuation(c);
            if (v % 2 != 0) return out;  // ramified: not handled by this engine
            auto r = pth_root(top_leading(c));
            if (!r) return out;
            Elem m = shift_by_var(Elem::embed(F, *r), v / 2);
            c = c + m * m + m;
            if (!c.is_zero() && top_valuation(c) <= v)
                throw std::logic_error("peel failed to raise the Arf valuation");
        }
        int e = ((top_valuation(a) % 2) + 2) % 2;
        Elem ubar = top_leading(a);
        Elem cbar = c.is_zero() ? Elem::zero(K) : series_coeff(c, 0);
        QuadraticForm& lvl = (e == 0) ? out.level0 : out.level1;
        lvl.blocks.emplace_back(ubar, cbar / ubar);
    }
    for (const auto& cj : q.quasilinear) {
        int f = ((top_valuation(cj) % 2) + 2) % 2;
        Elem wbar = top_leading(cj);
        QuadraticForm& lvl = (f == 0) ? out.level0 : out.level1;
        lvl.quasilinear.push_back(wbar);
    }
    out.ok = true;
    return out;
}

Tri laurent_aniso(const QuadraticForm& q);

Tri aniso_dispatch(const QuadraticForm& q) {
    switch (q.owner->kind) {
        case FieldKind::Finite: return finite_aniso(q);
        case FieldKind::LaurentLocal: return laurent_aniso(q);
        case FieldKind::RationalFunc: return Tri::DontKnow;
    }
    return Tri::DontKnow;
}

Tri laurent_aniso(const QuadraticForm& q) {
    if (q.dim() == 0) return Tri::Yes;
    // quasilinear part alone has an exact decision at every layer
    if (!q.quasilinear.empty()) {
        auto w = quasilinear_kernel_witness(q.owner, q.quasilinear);
        if (w) return Tri::No;
    }
    ResidueSplit rs = residue_split(q);
    if (rs.trivially_isotropic) return Tri::No;
    if (!rs.ok) return Tri::DontKnow;
    Tri a0 = aniso_dispatch(rs.level0);
    Tri a1 = aniso_dispatch(rs.level1);
    if (a0 == Tri::Yes && a1 == Tri::Yes) return Tri::Yes;
    if (q.nonsingular() && (a0 == Tri::No || a1 == Tri::No))
        return Tri::No;  // nonsingular residue isotropy lifts to the complete field
    return Tri::DontKnow;
}

std::optional<int> adim_dispatch(const QuadraticForm& q) {
    if (!q.nonsingular()) return std::nullopt;
    switch (q.owner->kind) {
        case FieldKind::Finite: return finite_adim_nonsingular(q);
        case FieldKind::RationalFunc: return std::nullopt;
        case FieldKind::LaurentLocal: {
            ResidueSplit rs = residue_split(q);
            if (rs.trivially_isotropic) {
                // split off the hyperbolic block and recurse on the rest
                QuadraticForm rest{q.owner, {}, {}};
                bool dropped = false;
                for (const auto& [a, b] : q.blocks) {
                    if (!dropped && (a.is_zero() || b.is_zero())) {
                        dropped = true;
                        continue;
                    }
                    rest.blocks.emplace_back(a, b);
                }
                return adim_dispatch(rest);
            }
            if (!rs.ok) return std::nullopt;
            auto d0 = adim_dispatch(rs.level0);
            auto d1 = adim_dispatch(rs.level1);
            if (!d0 || !d1) return std::nullopt;
            return *d0 + *d1;
        }
    }
    return std::nullopt;
}

}  // namespace

Tri certify_anisotropic(const QuadraticForm& q) { return aniso_dispatch(q); }

std::optional<int> anisotropic_dim(const QuadraticForm& q) { return adim_dispatch(q); }

std::optional<int> witt_index_of(const QuadraticForm& q) {
    auto ad = anisotropic_dim(q);
    if (!ad) return std::nullopt;
    return (q.dim() - *ad) / 2;
}

// ---------------------------------------------------------------------------
// quasilinear kernel via 2-basis components
// ---------------------------------------------------------------------------

std::optional<std::vector<Elem>> quasilinear_kernel_witness(const FieldPtr& F,
                                                            const std::vector<Elem>& entries) {
    if (entries.empty()) return std::nullopt;
    if (F->p != 2) throw std::invalid_argument("quasilinear kernel needs characteristic 2");
    // sum c_j x_j^2 = 0 <=> the component vectors of the c_j are linearly
    // dependent over F (squares are the F^2-span; components are exact)
    const size_t k = entries.size();
    std::vector<std::vector<Elem>> comp;
    comp.reserve(k);
    size_t ncomp = 0;
    for (const auto& c : entries) {
        comp.push_back(frobenius_components(c));
        ncomp = comp.back().size();
    }
    Mat M(ncomp, std::vector<Elem>(k, Elem::zero(F)));
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < ncomp; ++i) M[i][j] = comp[j][i];
    auto ker = nullspace_vector(F, std::move(M));
    if (!ker) return std::nullopt;
    // Sum c_j sigma_j^2 with sigma = kernel vector gives 0 exactly
    Elem check = Elem::zero(F);
    for (size_t j = 0; j < k; ++j) check = check + entries[j] * (*ker)[j] * (*ker)[j];
    if (!check.is_zero()) throw std::logic_error("quasilinear kernel verification failed");
    return ker;
}

// ---------------------------------------------------------------------------
// isotropy_decide
// ---------------------------------------------------------------------------

IsotropyVerdict isotropy_decide(const QuadraticForm& q, const SearchConfig& cfg) {
    IsotropyVerdict v;
    if (q.dim() == 0) {
        v.kind = IsotropyVerdict::Kind::Anisotropic;
        v.proof = AnisoProof::Exhaustive;
        v.note = "empty form";
        return v;
    }
    const FieldKind kind = q.owner->kind;
    if (kind == FieldKind::Finite) {
        std::uint64_t need = 1;
        bool exhaustive = true;
        for (int i = 0; i < q.dim(); ++i) {
            if (need > cfg.finite_cap / q.owner->order()) { exhaustive = false; break; }
            need *= q.owner->order();
        }
        if (exhaustive) {
            auto w = cfg.parallel ? finite_witness_parallel(q, cfg.finite_cap)
                                  : finite_witness_serial(q, cfg.finite_cap);
            if (w) {
                v.kind = IsotropyVerdict::Kind::Isotropic;
                v.witness = *w;
            } else {
                v.kind = IsotropyVerdict::Kind::Anisotropic;
                v.proof = AnisoProof::Exhaustive;
            }
            return v;
        }
        Tri t = finite_aniso(q);
        if (t == Tri::Yes) {
            v.kind = IsotropyVerdict::Kind::Anisotropic;
            v.proof = AnisoProof::Exhaustive;
            v.note = "rank/Arf rule";
            return v;
        }
        auto w = find_isotropy_witness(q, cfg);
        if (w) {
            v.kind = IsotropyVerdict::Kind::Isotropic;
            v.witness = *w;
            return v;
        }
        v.kind = IsotropyVerdict::Kind::Unknown;
        v.note = "isotropic by the Arf rule but no witness within budget";
        return v;
    }
    if (kind == FieldKind::LaurentLocal) {
        if (!q.quasilinear.empty()) {
            auto ker = quasilinear_kernel_witness(q.owner, q.quasilinear);
            if (ker) {
                v.kind = IsotropyVerdict::Kind::Isotropic;
                v.witness.assign(static_cast<size_t>(q.dim()), Elem::zero(q.owner));
                for (size_t j = 0; j < ker->size(); ++j)
                    v.witness[2 * q.blocks.size() + j] = (*ker)[j];
                return v;
            }
        }
        Tri t = certify_anisotropic(q);
        if (t == Tri::Yes) {
            v.kind = IsotropyVerdict::Kind::Anisotropic;
            v.proof = AnisoProof::ResidueDescent;
            return v;
        }
    }
    auto w = find_isotropy_witness(q, cfg);
    v.budget_spent = cfg.max_candidates;
    if (w) {
        v.kind = IsotropyVerdict::Kind::Isotropic;
        v.witness = *w;
        return v;
    }
    v.kind = IsotropyVerdict::Kind::Unknown;
    return v;
}

// ---------------------------------------------------------------------------
// Witt decomposition
// ---------------------------------------------------------------------------

namespace {

std::vector<Elem> mat_apply(const FieldPtr& F, const std::vector<std::vector<Elem>>& rows,
                            const std::vector<Elem>& v) {
    // v is in current coordinates; rows[i] is current basis vector i in
    // original coordinates
    std::vector<Elem> out(rows.empty() ? 0 : rows[0].size(), Elem::zero(F));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (size_t j = 0; j < out.size(); ++j) out[j] = out[j] + v[i] * rows[i][j];
    }
    return out;
}

std::vector<Elem> basis_vec(const FieldPtr& F, size_t n, size_t i) {
    std::vector<Elem> e(n, Elem::zero(F));
    e[i] = Elem::one(F);
    return e;
}

}  // namespace

WittDecomposition witt_decompose(const QuadraticForm& q, const SearchConfig& cfg) {
    if (!q.nonsingular()) throw std::invalid_argument("nonsingular form required");
    const FieldPtr& F = q.owner;
    WittDecomposition out;
    auto idx = witt_index_of(q);
    out.index_certified = idx.has_value();

    QuadraticForm cur = q;
    // rows of the embedding: current basis vectors in original coordinates
    std::vector<std::vector<Elem>> emb;
    for (int i = 0; i < q.dim(); ++i) emb.push_back(basis_vec(F, static_cast<size_t>(q.dim()), static_cast<size_t>(i)));

    while (cur.dim() >= 2) {
        if (idx && static_cast<int>(out.hyperbolic_pairs.size()) == *idx) break;
        std::optional<std::vector<Elem>> w;
        if (F->kind == FieldKind::Finite) {
            w = cfg.parallel ? finite_witness_parallel(cur, cfg.finite_cap)
                             : finite_witness_serial(cur, cfg.finite_cap);
        } else {
            if (certify_anisotropic(cur) == Tri::Yes) break;
            w = find_isotropy_witness(cur, cfg);
        }
        if (!w) break;
        // complete to a hyperbolic pair: find u with polar(w, e_j) != 0
        const size_t n = static_cast<size_t>(cur.dim());
        int j = -1;
        Elem mu;
        for (size_t cidx = 0; cidx < n; ++cidx) {
            Elem val = polar(cur, *w, basis_vec(F, n, cidx));
            if (!val.is_zero()) {
                j = static_cast<int>(cidx);
                mu = val;
                break;
            }
        }
        if (j < 0) throw std::logic_error("isotropic vector in the radical of a nonsingular form");
        std::vector<Elem> u = basis_vec(F, n, static_cast<size_t>(j));
        for (auto& x : u) x = x / mu;                     // polar(w, u) = 1
        Elem qu = evaluate(cur, u);
        for (size_t cidx = 0; cidx < n; ++cidx) u[cidx] = u[cidx] + qu * (*w)[cidx];  // q(u) = 0
        out.hyperbolic_pairs.emplace_back(mat_apply(F, emb, *w), mat_apply(F, emb, u));

        // complement of span(w, u) w.r.t. the polar form
        Mat sys(2, std::vector<Elem>(n, Elem::zero(F)));
        for (size_t cidx = 0; cidx < n; ++cidx) {
            sys[0][cidx] = polar(cur, *w, basis_vec(F, n, cidx));
            sys[1][cidx] = polar(cur, u, basis_vec(F, n, cidx));
        }
        // kernel basis of the 2 x n system
        std::vector<std::vector<Elem>> comp;
        {
            Mat M = sys;
            // column-reduce by hand: find pivot columns of the row space
            // then parameterize the kernel
            // simple approach: for each standard vector, subtract pivot parts
            // using Gaussian elimination on the 2 x n matrix
            // reduce M
            std::vector<int> pivots;
            int row = 0;
            for (size_t col = 0; col < n && row < 2; ++col) {
                int piv = -1;
                for (int r = row; r < 2; ++r)
                    if (!M[static_cast<size_t>(r)][col].is_zero()) { piv = r; break; }
                if (piv < 0) continue;
                std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(row)]);
                Elem d = M[static_cast<size_t>(row)][col].inverse();
                for (size_t c2 = 0; c2 < n; ++c2) M[static_cast<size_t>(row)][c2] = M[static_cast<size_t>(row)][c2] * d;
                for (int r = 0; r < 2; ++r) {
                    if (r == row) continue;
                    Elem f = M[static_cast<size_t>(r)][col];
                    if (f.is_zero()) continue;
                    for (size_t c2 = 0; c2 < n; ++c2)
                        M[static_cast<size_t>(r)][c2] = M[static_cast<size_t>(r)][c2] - f * M[static_cast<size_t>(row)][c2];
                }
                pivots.push_back(static_cast<int>(col));
                ++row;
            }
            for (size_t col = 0; col < n; ++col) {
                bool is_piv = false;
                for (int pcol : pivots)
                    if (pcol == static_cast<int>(col)) is_piv = true;
                if (is_piv) continue;
                std::vector<Elem> k(n, Elem::zero(F));
                k[col] = Elem::one(F);
                for (size_t pi = 0; pi < pivots.size(); ++pi)
                    k[static_cast<size_t>(pivots[pi])] = -M[pi][col];
                comp.push_back(std::move(k));
            }
        }
        // symplectic re-blocking of the restriction to the complement
        std::vector<std::vector<Elem>> W = comp;
        std::vector<std::vector<Elem>> new_basis_cur;
        std::vector<std::pair<Elem, Elem>> new_blocks;
        while (!W.empty()) {
            std::vector<Elem> e = W.front();
            W.erase(W.begin());
            int fi = -1;
            Elem m2;
            for (size_t r = 0; r < W.size(); ++r) {
                Elem val = polar(cur, e, W[r]);
                if (!val.is_zero()) {
                    fi = static_cast<int>(r);
                    m2 = val;
                    break;
                }
            }
            if (fi < 0) throw std::logic_error("degenerate restriction in Witt split");
            std::vector<Elem> f = W[static_cast<size_t>(fi)];
            W.erase(W.begin() + fi);
            for (auto& x : f) x = x / m2;  // polar(e, f) = 1
            for (auto& g : W) {
                Elem be = polar(cur, e, g);
                Elem bf = polar(cur, f, g);
                for (size_t cidx = 0; cidx < n; ++cidx)
                    g[cidx] = g[cidx] + be * f[cidx] + bf * e[cidx];
            }
            new_blocks.emplace_back(evaluate(cur, e), evaluate(cur, f));
            new_basis_cur.push_back(e);
            new_basis_cur.push_back(f);
        }
        std::vector<std::vector<Elem>> new_emb;
        for (const auto& bvec : new_basis_cur) new_emb.push_back(mat_apply(F, emb, bvec));
        emb = std::move(new_emb);
        cur = QuadraticForm{F, std::move(new_blocks), {}};
    }

    out.kernel = cur;
    if (idx) {
        out.witt_index = *idx;
        out.pairs_complete = static_cast<int>(out.hyperbolic_pairs.size()) == *idx;
    } else {
        out.witt_index = static_cast<int>(out.hyperbolic_pairs.size());
        // without a decisive index the decomposition is complete only when
        // nothing is left to split
        out.pairs_complete = (cur.dim() == 0);
        out.index_certified = (cur.dim() == 0);
    }
    return out;
}

bool witt_equivalent(const QuadraticForm& a, const QuadraticForm& b, const SearchConfig& cfg) {
    if (!same_field(a.owner, b.owner)) throw std::invalid_argument("mixed owners");
    if (!a.nonsingular() || !b.nonsingular()) throw std::invalid_argument("nonsingular forms required");
    QuadraticForm s = qf_sum(a, b);
    auto ad = anisotropic_dim(s);
    if (ad) return *ad == 0;
    WittDecomposition d = witt_decompose(s, cfg);
    if (d.pairs_complete) return d.kernel.dim() == 0;
    throw std::domain_error("no decisive Witt engine for this field");
}

bool isometric(const QuadraticForm& a, const QuadraticForm& b, const SearchConfig& cfg) {
    // Witt cancellation: same dimension + Witt equivalent
    return a.dim() == b.dim() && witt_equivalent(a, b, cfg);
}

bool subform_test(const QuadraticForm& psi, const QuadraticForm& phi, const SearchConfig& cfg) {
    if (!psi.nonsingular() || !phi.nonsingular()) throw std::invalid_argument("nonsingular forms required");
    if (psi.dim() > phi.dim()) return false;
    QuadraticForm s = qf_sum(phi, psi);
    auto idx = witt_index_of(s);
    if (idx) return *idx >= psi.dim();
    WittDecomposition d = witt_decompose(s, cfg);
    if (static_cast<int>(d.hyperbolic_pairs.size()) >= psi.dim()) return true;
    if (d.pairs_complete || d.index_certified) return d.witt_index >= psi.dim();
    throw std::domain_error("no decisive Witt engine for this field");
}

}  // namespace c2f
