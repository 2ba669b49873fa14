#include "c2f/albert.hpp"

#include <stdexcept>

namespace c2f {

CyclicAlgebraSymbol cyclic_symbol(int p, const Elem& alpha, const Elem& beta) {
    if (alpha.field()->p != p) throw std::invalid_argument("symbol degree must match the characteristic");
    if (beta.is_zero()) throw std::invalid_argument("radical slot must be nonzero");
    return CyclicAlgebraSymbol{p, alpha, beta};
}

AlbertPForm albert_form(int p, const Elem& alpha, const Elem& beta, const Elem& gamma,
                        const Elem& delta) {
    if (alpha.field()->p != p) throw std::invalid_argument("form degree must match the characteristic");
    if (gamma.is_zero() || delta.is_zero())
        throw std::invalid_argument("gamma and delta must be nonzero");
    return AlbertPForm{p, alpha, beta, gamma, delta};
}

Elem evaluate_albert(const AlbertPForm& A, const ASExt& x, const ASExt& y, const ASExt& z) {
    if (!(x.a == A.alpha + A.beta)) throw std::invalid_argument("x must live in F_{alpha+beta}");
    if (!(y.a == A.alpha)) throw std::invalid_argument("y must live in F_alpha");
    if (!(z.a == A.beta)) throw std::invalid_argument("z must live in F_beta");
    return as_norm(x) + A.gamma * as_norm(y) + A.delta * as_norm(z);
}

Elem evaluate_pure(const AlbertPForm& A, const Elem& x, const ASExt& y, const ASExt& z) {
    if (!(y.a == A.alpha)) throw std::invalid_argument("y must live in F_alpha");
    if (!(z.a == A.beta)) throw std::invalid_argument("z must live in F_beta");
    return x.pow(static_cast<std::uint64_t>(A.p)) + A.gamma * as_norm(y) + A.delta * as_norm(z);
}

QuadraticForm albert_to_quadratic(const AlbertPForm& A) {
    if (A.p != 2) throw std::domain_error("quadratic model exists for p = 2 only");
    const FieldPtr& F = A.field();
    QuadraticForm q = qf_block(Elem::one(F), A.alpha + A.beta);
    q = qf_sum(q, qf_scale(A.gamma, qf_block(Elem::one(F), A.alpha)));
    q = qf_sum(q, qf_scale(A.delta, qf_block(Elem::one(F), A.beta)));
    return q;
}

QuadraticForm pure_part_quadratic(const AlbertPForm& A) {
    if (A.p != 2) throw std::domain_error("quadratic model exists for p = 2 only");
    const FieldPtr& F = A.field();
    QuadraticForm q = qf_scale(A.gamma, qf_block(Elem::one(F), A.alpha));
    q = qf_sum(q, qf_scale(A.delta, qf_block(Elem::one(F), A.beta)));
    q = qf_sum(q, qf_quasilinear(F, {Elem::one(F)}));
    return q;
}

// ---------------------------------------------------------------------------
// linkage
// ---------------------------------------------------------------------------

namespace {

AlbertWitness vector_to_albert_witness(const AlbertPForm& A, const std::vector<Elem>& v) {
    // coordinates: [1,a+b] block, gamma block, delta block
    return AlbertWitness{asext_make(A.alpha + A.beta, {v[0], v[1]}),
                         asext_make(A.alpha, {v[2], v[3]}),
                         asext_make(A.beta, {v[4], v[5]})};
}

PureWitness vector_to_pure_witness(const AlbertPForm& A, const std::vector<Elem>& v) {
    // coordinates: gamma block, delta block, quasilinear <1>
    return PureWitness{v[4], asext_make(A.alpha, {v[0], v[1]}), asext_make(A.beta, {v[2], v[3]})};
}

// bounded search for zeros of Albert p-forms at p > 2: scan small coordinate
// pools; exhaustive over finite fields within the cap
std::optional<AlbertWitness> albert_witness_search_oddp(const AlbertPForm& A,
                                                        const SearchConfig& cfg) {
    const FieldPtr& F = A.field();
    const int p = A.p;
    Elem ab = A.alpha + A.beta;
    if (F->kind == FieldKind::Finite) {
        std::uint64_t q = F->order();
        std::uint64_t total = 1;
        bool cap = false;
        for (int i = 0; i < 3 * p; ++i) {
            if (total > cfg.finite_cap / q) { cap = true; break; }
            total *= q;
        }
        if (!cap) {
            std::vector<Elem> all;
            for (std::uint64_t i = 0; i < q; ++i) {
                std::vector<std::uint8_t> c(static_cast<size_t>(F->k));
                std::uint64_t v = i;
                for (int d = 0; d < F->k; ++d) {
                    c[static_cast<size_t>(d)] = static_cast<std::uint8_t>(v % F->p);
                    v /= static_cast<std::uint64_t>(F->p);
                }
                all.push_back(Elem::finite_from_coords(F, std::move(c)));
            }
            for (std::uint64_t I = 1; I < total; ++I) {
                std::uint64_t v = I;
                std::vector<Elem> co;
                for (int i = 0; i < 3 * p; ++i) {
                    co.push_back(all[static_cast<size_t>(v % q)]);
                    v /= q;
                }
                ASExt x = asext_make(ab, {co.begin(), co.begin() + p});
                ASExt y = asext_make(A.alpha, {co.begin() + p, co.begin() + 2 * p});
                ASExt z = asext_make(A.beta, {co.begin() + 2 * p, co.begin() + 3 * p});
                if (evaluate_albert(A, x, y, z).is_zero()) return AlbertWitness{x, y, z};
            }
            return std::nullopt;
        }
    }
    // small monomial pool over function fields
    std::vector<Elem> pool{Elem::zero(F), Elem::one(F)};
    if (F->kind != FieldKind::Finite) {
        Elem g = Elem::generator(F);
        pool.push_back(g);
        pool.push_back(g + Elem::one(F));
        pool.push_back(g * g);
    }
    const size_t P = pool.size();
    std::uint64_t total = 1;
    for (int i = 0; i < 3 * p; ++i) total *= P;
    for (std::uint64_t I = 1; I < total; ++I) {
        std::uint64_t v = I;
        std::vector<Elem> co;
        for (int i = 0; i < 3 * p; ++i) {
            co.push_back(pool[static_cast<size_t>(v % P)]);
            v /= P;
        }
        ASExt x = asext_make(ab, {co.begin(), co.begin() + p});
        ASExt y = asext_make(A.alpha, {co.begin() + p, co.begin() + 2 * p});
        ASExt z = asext_make(A.beta, {co.begin() + 2 * p, co.begin() + 3 * p});
        if (evaluate_albert(A, x, y, z).is_zero()) return AlbertWitness{x, y, z};
    }
    return std::nullopt;
}

}  // namespace

LinkageVerdict linked_separably(const AlbertPForm& A, const SearchConfig& cfg) {
    LinkageVerdict out;
    if (A.p == 2) {
        out.definitional_iff = true;
        QuadraticForm q = albert_to_quadratic(A);
        IsotropyVerdict v = isotropy_decide(q, cfg);
        switch (v.kind) {
            case IsotropyVerdict::Kind::Isotropic: {
                out.kind = LinkKind::Yes;
                AlbertWitness w = vector_to_albert_witness(A, v.witness);
                if (!evaluate_albert(A, w.x, w.y, w.z).is_zero())
                    throw std::logic_error("albert witness failed re-verification");
                out.witness = w;
                return out;
            }
            case IsotropyVerdict::Kind::Anisotropic:
                out.kind = LinkKind::No;
                out.note = v.proof == AnisoProof::ResidueDescent ? "residue descent" : "exhaustive";
                return out;
            case IsotropyVerdict::Kind::Unknown:
                out.kind = LinkKind::NoEvidence;
                out.note = "budget exhausted";
                return out;
        }
    }
    out.note = "p > 2: isotropy is a sufficient condition for separable linkage only";
    auto w = albert_witness_search_oddp(A, cfg);
    if (w) {
        out.kind = LinkKind::Yes;
        out.witness = *w;
    } else {
        out.kind = LinkKind::NoEvidence;
    }
    return out;
}

LinkageVerdict linked_inseparably(const AlbertPForm& A, const SearchConfig& cfg) {
    LinkageVerdict out;
    if (A.p == 2) {
        out.definitional_iff = true;
        QuadraticForm q = pure_part_quadratic(A);
        IsotropyVerdict v = isotropy_decide(q, cfg);
        switch (v.kind) {
            case IsotropyVerdict::Kind::Isotropic: {
                out.kind = LinkKind::Yes;
                PureWitness w = vector_to_pure_witness(A, v.witness);
                Elem val = w.x * w.x + A.gamma * as_norm(w.y) + A.delta * as_norm(w.z);
                if (!val.is_zero()) throw std::logic_error("pure witness failed re-verification");
                out.pure_witness = w;
                return out;
            }
            case IsotropyVerdict::Kind::Anisotropic:
                out.kind = LinkKind::No;
                out.note = v.proof == AnisoProof::ResidueDescent ? "residue descent" : "exhaustive";
                return out;
            case IsotropyVerdict::Kind::Unknown:
                out.kind = LinkKind::NoEvidence;
                out.note = "budget exhausted";
                return out;
        }
    }
    out.note = "p > 2: pure-part isotropy is a sufficient condition for inseparable linkage only";
    // reuse the Albert search on the pure evaluation by scanning x over F
    const FieldPtr& F = A.field();
    std::vector<Elem> pool{Elem::zero(F), Elem::one(F)};
    if (F->kind != FieldKind::Finite) pool.push_back(Elem::generator(F));
    else if (F->order() <= 9) {
        for (std::uint64_t i = 2; i < F->order(); ++i) pool.push_back(Elem::from_int(F, static_cast<long long>(i)));
    }
    const int p = A.p;
    const size_t P = pool.size();
    std::uint64_t total = 1;
    for (int i = 0; i < 2 * p + 1; ++i) total *= P;
    for (std::uint64_t I = 1; I < total; ++I) {
        std::uint64_t v = I;
        std::vector<Elem> co;
        for (int i = 0; i < 2 * p + 1; ++i) {
            co.push_back(pool[static_cast<size_t>(v % P)]);
            v /= P;
        }
        ASExt y = asext_make(A.alpha, {co.begin(), co.begin() + p});
        ASExt z = asext_make(A.beta, {co.begin() + p, co.begin() + 2 * p});
        Elem x = co[static_cast<size_t>(2 * p)];
        if (evaluate_pure(A, x, y, z).is_zero()) {
            out.kind = LinkKind::Yes;
            out.pure_witness = PureWitness{x, y, z};
            return out;
        }
    }
    (void)cfg;
    out.kind = LinkKind::NoEvidence;
    return out;
}

// ---------------------------------------------------------------------------
// Lemma-new split and the subform constructions
// ---------------------------------------------------------------------------

SplitWitness lemma_new_split(const Elem& alpha, const Elem& beta) {
    if (beta.is_zero()) throw std::invalid_argument("beta must be nonzero");
    const FieldPtr& F = alpha.field();
    const int p = F->p;
    Elem t = (alpha * beta - alpha) / beta;
    Elem tp = t.pow(static_cast<std::uint64_t>(p));
    Elem alpha1 = alpha + beta * tp;
    Elem u = -(tp - t + alpha);
    Elem alpha2 = alpha + beta * u;  // alpha - beta(t^p - t + alpha)
    if (!(alpha1 + alpha2 == alpha)) throw std::logic_error("lemma-new split postcondition failed");
    SplitWitness w{alpha1, alpha2, t, u, asext_scalar(alpha, t),
                   asext_neg(asext_add(asext_gen(alpha), asext_scalar(alpha, t)))};
    if (!(as_norm(w.t_scalar) == tp)) throw std::logic_error("scalar norm witness failed");
    if (!(as_norm(w.u_elem) == u)) throw std::logic_error("u norm witness failed");
    return w;
}

SuballemReport suballem_construct(const Elem& beta, const Elem& alpha, const Elem& l1,
                                  const Elem& l2, const Elem& l3, const SearchConfig& cfg) {
    const FieldPtr& F = alpha.field();
    if (F->p != 2) throw std::invalid_argument("characteristic 2 required");
    if (beta.is_zero() || l1.is_zero() || l2.is_zero() || l3.is_zero())
        throw std::invalid_argument("beta and the lambda_i must be nonzero");
    SuballemReport rep;
    rep.t = (alpha + beta * alpha) / beta;
    rep.alpha1 = alpha + beta * rep.t * rep.t;
    rep.alpha2 = alpha + beta * (rep.t * rep.t + rep.t + alpha);
    Elem one = Elem::one(F);
    rep.psi = qf_scale(l1, qf_block(one, alpha));
    rep.psi = qf_sum(rep.psi, qf_scale(l2, qf_block(one, rep.alpha1)));
    rep.psi = qf_sum(rep.psi, qf_scale(l3, qf_block(one, rep.alpha2)));
    rep.dim_ok = rep.psi.dim() == 6;
    rep.nonsingular_ok = rep.psi.nonsingular();
    ArfResult a = arf(rep.psi);
    rep.arf_trivial = (a.cls == ArfClass::Trivial) && a.representative.is_zero();
    QuadraticForm pi = pfister_quad(F, PfisterSlots{{beta}, alpha});
    QuadraticForm rho = tensor(bilinear_diag(F, {l1, l2, l3}), pi);
    rep.subform_ok = subform_test(rep.psi, rho, cfg);
    return rep;
}

SubalbertReport subalbert_extract(const Elem& delta, const Elem& gamma, const Elem& beta,
                                  const Elem& alpha, const SearchConfig& cfg) {
    const FieldPtr& F = alpha.field();
    if (F->p != 2) throw std::invalid_argument("characteristic 2 required");
    if (delta.is_zero() || gamma.is_zero() || beta.is_zero())
        throw std::invalid_argument("Pfister slots must be nonzero");
    SubalbertReport rep;
    Elem one = Elem::one(F);
    rep.phi = pfister_quad(F, PfisterSlots{{delta, gamma, beta}, alpha});
    QuadraticForm pi = pfister_quad(F, PfisterSlots{{beta}, alpha});
    rep.rho = tensor(bilinear_diag(F, {one, delta, gamma}), pi);
    rep.inner = suballem_construct(beta, alpha, one, delta, gamma, cfg);
    rep.psi = rep.inner.psi;
    rep.psi_in_rho = subform_test(rep.psi, rep.rho, cfg);
    rep.rho_in_phi = subform_test(rep.rho, rep.phi, cfg);
    rep.psi_in_phi = subform_test(rep.psi, rep.phi, cfg);
    return rep;
}

// ---------------------------------------------------------------------------
// odd characteristic
// ---------------------------------------------------------------------------

bool euler_is_square(const Elem& e) {
    const FieldPtr& F = e.field();
    if (F->kind != FieldKind::Finite || F->p == 2)
        throw std::invalid_argument("Euler criterion needs a finite field of odd characteristic");
    if (e.is_zero()) return true;
    return e.pow((F->order() - 1) / 2).is_one();
}

OddCharAlbert odd_char_albert_subform(const Elem& alpha, const Elem& beta, const Elem& l1,
                                      const Elem& l2, const Elem& l3) {
    const FieldPtr& F = alpha.field();
    if (F->kind != FieldKind::Finite || F->p == 2)
        throw std::invalid_argument("odd-characteristic construction runs over finite fields of odd characteristic");
    if (!euler_is_square(-Elem::one(F)))
        throw std::invalid_argument("-1 is not a square in this field; construction not applicable");
    if (alpha.is_zero() || beta.is_zero() || l1.is_zero() || l2.is_zero() || l3.is_zero())
        throw std::invalid_argument("alpha, beta and the lambda_i must be nonzero");
    OddCharAlbert out;
    Elem ab = alpha * beta;
    out.diag = {l1 * alpha, l1 * beta, l2 * alpha, l2 * ab, l3 * ab, l3 * beta};
    Elem disc = Elem::one(F);
    for (const auto& d : out.diag) disc = disc * d;
    out.disc_trivial = euler_is_square(disc);
    // exhaustive isotropy scan of the diagonal senary form
    const std::uint64_t q = F->order();
    std::uint64_t total = 1;
    for (int i = 0; i < 6; ++i) total *= q;
    std::vector<Elem> all;
    for (std::uint64_t i = 0; i < q; ++i) {
        std::vector<std::uint8_t> c(static_cast<size_t>(F->k));
        std::uint64_t v = i;
        for (int d = 0; d < F->k; ++d) {
            c[static_cast<size_t>(d)] = static_cast<std::uint8_t>(v % F->p);
            v /= static_cast<std::uint64_t>(F->p);
        }
        all.push_back(Elem::finite_from_coords(F, std::move(c)));
    }
    for (std::uint64_t I = 1; I < total && I < (1ULL << 26); ++I) {
        std::uint64_t v = I;
        std::vector<Elem> vec;
        Elem acc = Elem::zero(F);
        for (int i = 0; i < 6; ++i) {
            const Elem& x = all[static_cast<size_t>(v % q)];
            v /= q;
            vec.push_back(x);
            acc = acc + out.diag[static_cast<size_t>(i)] * x * x;
        }
        if (acc.is_zero()) {
            out.isotropy_witness = vec;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// planted instances
// ---------------------------------------------------------------------------

PlantedAlbert plant_albert_zero(const FieldPtr& F, int p, Rng& rng, bool force_x_zero) {
    if (F->p != p) throw std::invalid_argument("characteristic mismatch");
    for (int attempt = 0; attempt < 256; ++attempt) {
        Elem alpha = random_elem(F, rng, 1, true);
        Elem beta = random_elem(F, rng, 1, true);
        Elem gamma = random_elem(F, rng, 1, true);
        if (wp_solve(alpha).proves_membership()) continue;
        SplitWitness split = lemma_new_split(alpha, beta);
        if (wp_solve(split.alpha1).proves_membership()) continue;
        if (wp_solve(split.alpha2).proves_membership()) continue;
        ASExt x = force_x_zero ? asext_zero(alpha) : random_asext(alpha, rng, 1, true);
        if (!force_x_zero && as_norm(x).is_zero()) continue;
        ASExt y = random_asext(split.alpha1, rng, 1, true);
        ASExt z = random_asext(split.alpha2, rng, 1, true);
        Elem nz = as_norm(z);
        if (nz.is_zero() || as_norm(y).is_zero()) continue;
        Elem delta = -(as_norm(x) + gamma * as_norm(y)) / nz;
        if (delta.is_zero()) continue;
        PlantedAlbert out{alpha, beta, gamma, delta, split, AlbertWitness{x, y, z}};
        Elem check = as_norm(x) + gamma * as_norm(y) + delta * as_norm(z);
        if (!check.is_zero()) throw std::logic_error("planted albert zero failed verification");
        return out;
    }
    throw std::runtime_error("could not plant an albert zero (too many rejections)");
}

PlantedPure plant_pure_zero(const FieldPtr& F, int p, Rng& rng) {
    if (F->p != p) throw std::invalid_argument("characteristic mismatch");
    for (int attempt = 0; attempt < 256; ++attempt) {
        Elem alpha = random_elem(F, rng, 1, true);
        if (wp_solve(alpha).proves_membership()) continue;
        Elem gamma = random_elem(F, rng, 1, true);
        Elem x = random_elem(F, rng, 1, false);
        ASExt y = random_asext(alpha, rng, 1, true);
        ASExt z = random_asext(alpha, rng, 1, true);
        Elem nz = as_norm(z);
        if (nz.is_zero() || as_norm(y).is_zero()) continue;
        Elem delta = -(x.pow(static_cast<std::uint64_t>(p)) + gamma * as_norm(y)) / nz;
        if (delta.is_zero()) continue;
        PlantedPure out{alpha, gamma, delta, PureWitness{x, y, z}};
        Elem check = x.pow(static_cast<std::uint64_t>(p)) + gamma * as_norm(y) + delta * as_norm(z);
        if (!check.is_zero()) throw std::logic_error("planted pure zero failed verification");
        return out;
    }
    throw std::runtime_error("could not plant a pure zero (too many rejections)");
}

}  // namespace c2f
