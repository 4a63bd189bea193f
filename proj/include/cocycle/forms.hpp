#pragma once

#include <map>
#include <string>
#include <vector>

#include "cocycle/algebra.hpp"
#include "cocycle/error.hpp"
#include "cocycle/field.hpp"
#include "cocycle/matrix.hpp"

namespace cocycle {

enum class symmetry_tag { symmetric, skew, none };

template <class F>
struct BilinearForm {
    std::size_t dim = 0;
    Matrix<F> phi;
    symmetry_tag tag = symmetry_tag::none;
};

enum class form_space_kind { z2comm, cyclic, invariant, trivial, hc1, generic };

inline const char* form_space_kind_name(form_space_kind k) {
    switch (k) {
        case form_space_kind::z2comm: return "z2comm";
        case form_space_kind::cyclic: return "cyclic";
        case form_space_kind::invariant: return "invariant";
        case form_space_kind::trivial: return "trivial";
        case form_space_kind::hc1: return "hc1";
        case form_space_kind::generic: return "generic";
    }
    return "?";
}

template <class F>
struct FormSpace {
    form_space_kind kind = form_space_kind::generic;
    std::size_t ambient_dim = 0;
    std::vector<BilinearForm<F>> basis;
    std::size_t dim() const { return basis.size(); }
};

// Flat variable layout for unknown bilinear forms: row-major upper triangle,
// diagonal included for symmetric unknowns and excluded for skew ones.
inline std::size_t sym_pair_count(std::size_t d) { return d * (d + 1) / 2; }
inline std::size_t skew_pair_count(std::size_t d) { return d * (d - 1) / 2; }

inline std::size_t sym_index(std::size_t a, std::size_t b, std::size_t d) {
    if (a > b) std::swap(a, b);
    return a * d - a * (a + 1) / 2 + b;
}

inline std::size_t skew_index(std::size_t a, std::size_t b, std::size_t d) {
    return a * d - a * (a + 1) / 2 + (b - a - 1);
}

namespace detail {

template <class F>
using EqRow = std::map<std::size_t, typename F::elem>;

template <class F>
void eq_add(F f, EqRow<F>& row, std::size_t var, const typename F::elem& c) {
    auto& slot = row[var];
    slot = f.add(slot, c);
}

// Adds c * phi(e_a, e_b) to the row, for a symmetric unknown form.
template <class F>
void eq_add_sym(F f, EqRow<F>& row, std::size_t a, std::size_t b, std::size_t d,
                const typename F::elem& c) {
    eq_add(f, row, sym_index(a, b, d), c);
}

// Adds c * phi(e_a, e_b) to the row, for a skew unknown form.
template <class F>
void eq_add_skew(F f, EqRow<F>& row, std::size_t a, std::size_t b, std::size_t d,
                 const typename F::elem& c) {
    if (a == b) return;
    if (a < b)
        eq_add(f, row, skew_index(a, b, d), c);
    else
        eq_add(f, row, skew_index(b, a, d), f.neg(c));
}

template <class F>
bool eq_insert(F f, EchelonBasis<F>& eb, const EqRow<F>& row) {
    SparseVec<F> v;
    for (auto& [var, c] : row)
        if (!f.is_zero(c)) v.emplace_back(var, c);
    if (v.empty()) return false;
    return eb.insert(v);
}

template <class F>
Matrix<F> sym_from_flat(F f, const std::vector<typename F::elem>& v, std::size_t d) {
    Matrix<F> m(f, d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) m.at(a, b) = m.at(b, a) = v[sym_index(a, b, d)];
    return m;
}

template <class F>
Matrix<F> skew_from_flat(F f, const std::vector<typename F::elem>& v, std::size_t d) {
    Matrix<F> m(f, d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) {
            m.at(a, b) = v[skew_index(a, b, d)];
            m.at(b, a) = f.neg(v[skew_index(a, b, d)]);
        }
    return m;
}

// phi(v, e_k) for a sparse product vector.
template <class F>
typename F::elem form_on(F f, const Matrix<F>& phi, const SparseVec<F>& v, std::size_t k) {
    typename F::elem s = f.zero();
    for (auto& [m, c] : v) s = f.add(s, f.mul(c, phi.at(m, k)));
    return s;
}

// Direct re-evaluation of the defining identities, independent of the
// equation assembly that produced the basis.
template <class F>
void certify_form(const Algebra<F>& L, const Matrix<F>& phi, form_space_kind kind) {
    const F& f = L.field;
    std::size_t d = L.dim;
    auto expect = [&](bool ok) {
        require(ok, errc::internal_error,
                std::string("solver output fails the ") + form_space_kind_name(kind) +
                    " defining conditions");
    };
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            if (kind == form_space_kind::cyclic || kind == form_space_kind::hc1)
                expect(f.eq(phi.at(a, b), f.neg(phi.at(b, a))));
            else
                expect(f.eq(phi.at(a, b), phi.at(b, a)));
        }
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t z = 0; z < d; ++z) {
                const auto& xy = L.product(x, y);
                const auto& zx = L.product(z, x);
                const auto& yz = L.product(y, z);
                switch (kind) {
                    case form_space_kind::z2comm:
                    case form_space_kind::hc1: {
                        auto s = f.add(f.add(form_on(f, phi, xy, z), form_on(f, phi, zx, y)),
                                       form_on(f, phi, yz, x));
                        expect(f.is_zero(s));
                        break;
                    }
                    case form_space_kind::cyclic:
                        expect(f.eq(form_on(f, phi, xy, z), form_on(f, phi, zx, y)));
                        break;
                    case form_space_kind::invariant: {
                        typename F::elem rhs = f.zero();
                        for (auto& [m, c] : yz) rhs = f.add(rhs, f.mul(c, phi.at(x, m)));
                        expect(f.eq(form_on(f, phi, xy, z), rhs));
                        break;
                    }
                    case form_space_kind::trivial:
                        expect(f.is_zero(form_on(f, phi, xy, z)));
                        break;
                    case form_space_kind::generic:
                        break;
                }
            }
}

template <class F>
FormSpace<F> space_from_nullspace(const Algebra<F>& L, EchelonBasis<F>& eb, form_space_kind kind,
                                  bool symmetric) {
    const F& f = L.field;
    FormSpace<F> out;
    out.kind = kind;
    out.ambient_dim = L.dim;
    for (auto& v : eb.nullspace_basis()) {
        Matrix<F> m = symmetric ? sym_from_flat(f, v, L.dim) : skew_from_flat(f, v, L.dim);
        certify_form(L, m, kind);
        out.basis.push_back(BilinearForm<F>{
            L.dim, std::move(m), symmetric ? symmetry_tag::symmetric : symmetry_tag::skew});
    }
    return out;
}

}  // namespace detail

// Symmetric forms with phi([x,y],z) + phi([z,x],y) + phi([y,z],x) = 0.
// Triples i<j<k suffice: the expression is alternating in (x,y,z) once phi is
// symmetric, so repeated indices give identities.
template <class F>
FormSpace<F> z2_comm(const Algebra<F>& L) {
    require(L.flags.lie, errc::not_lie, "commutative cocycles need a Lie algebra");
    const F& f = L.field;
    std::size_t d = L.dim;
    EchelonBasis<F> eb(f, sym_pair_count(d), resource_cap());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k) {
                detail::EqRow<F> row;
                for (auto& [m, c] : L.product(i, j)) detail::eq_add_sym(f, row, m, k, d, c);
                for (auto& [m, c] : L.product(k, i)) detail::eq_add_sym(f, row, m, j, d, c);
                for (auto& [m, c] : L.product(j, k)) detail::eq_add_sym(f, row, m, i, d, c);
                detail::eq_insert(f, eb, row);
            }
    return detail::space_from_nullspace(L, eb, form_space_kind::z2comm, true);
}

// Skew forms with phi([x,y],z) = phi([z,x],y), over all ordered triples.
template <class F>
FormSpace<F> cyclic_forms(const Algebra<F>& L) {
    require(L.flags.lie, errc::not_lie, "cyclic forms need a Lie algebra");
    const F& f = L.field;
    std::size_t d = L.dim;
    EchelonBasis<F> eb(f, skew_pair_count(d), resource_cap());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                detail::EqRow<F> row;
                for (auto& [m, c] : L.product(i, j)) detail::eq_add_skew(f, row, m, k, d, c);
                for (auto& [m, c] : L.product(k, i)) detail::eq_add_skew(f, row, m, j, d, f.neg(c));
                detail::eq_insert(f, eb, row);
            }
    return detail::space_from_nullspace(L, eb, form_space_kind::cyclic, false);
}

// Symmetric forms with phi([x,y],z) = phi(x,[y,z]), over all ordered triples.
template <class F>
FormSpace<F> invariant_forms(const Algebra<F>& L) {
    require(L.flags.lie, errc::not_lie, "invariant forms need a Lie algebra");
    const F& f = L.field;
    std::size_t d = L.dim;
    EchelonBasis<F> eb(f, sym_pair_count(d), resource_cap());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                detail::EqRow<F> row;
                for (auto& [m, c] : L.product(i, j)) detail::eq_add_sym(f, row, m, k, d, c);
                for (auto& [m, c] : L.product(j, k)) detail::eq_add_sym(f, row, i, m, d, f.neg(c));
                detail::eq_insert(f, eb, row);
            }
    return detail::space_from_nullspace(L, eb, form_space_kind::invariant, true);
}

// Symmetric forms vanishing on [L,L] x L.
template <class F>
FormSpace<F> trivial_cocycles(const Algebra<F>& L) {
    require(L.flags.lie, errc::not_lie, "trivial cocycles need a Lie algebra");
    const F& f = L.field;
    std::size_t d = L.dim;
    auto derived = derived_subalgebra(L);
    EchelonBasis<F> eb(f, sym_pair_count(d), resource_cap());
    for (auto& w : derived.basis)
        for (std::size_t k = 0; k < d; ++k) {
            detail::EqRow<F> row;
            for (std::size_t m = 0; m < d; ++m)
                if (!f.is_zero(w[m])) detail::eq_add_sym(f, row, m, k, d, w[m]);
            detail::eq_insert(f, eb, row);
        }
    auto out = detail::space_from_nullspace(L, eb, form_space_kind::trivial, true);
    std::size_t q = d - derived.dim();
    require(out.dim() == sym_pair_count(q), errc::internal_error,
            "trivial cocycle count disagrees with the abelianization");
    return out;
}

// Skew forms with alpha(ab,c) + alpha(ca,b) + alpha(bc,a) = 0.  When the unit
// is a basis element every solution must vanish against it; that consequence
// is asserted on the way out.
template <class F>
FormSpace<F> hc1(const Algebra<F>& A) {
    require(A.flags.assoc_comm, errc::not_assoc_comm,
            "the cyclic condition needs a commutative associative algebra");
    const F& f = A.field;
    std::size_t d = A.dim;
    EchelonBasis<F> eb(f, skew_pair_count(d), resource_cap());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                detail::EqRow<F> row;
                for (auto& [m, c] : A.product(i, j)) detail::eq_add_skew(f, row, m, k, d, c);
                for (auto& [m, c] : A.product(k, i)) detail::eq_add_skew(f, row, m, j, d, c);
                for (auto& [m, c] : A.product(j, k)) detail::eq_add_skew(f, row, m, i, d, c);
                detail::eq_insert(f, eb, row);
            }
    auto out = detail::space_from_nullspace(A, eb, form_space_kind::hc1, false);
    if (A.flags.unit) {
        std::size_t u = *A.flags.unit;
        for (auto& b : out.basis)
            for (std::size_t k = 0; k < d; ++k)
                require(f.is_zero(b.phi.at(u, k)), errc::internal_error,
                        "cyclic-condition solution pairs nontrivially with the unit");
    }
    return out;
}

// Maps d: L -> M with d([x,y]) = -y.d(x) + x.d(y), where the bullet action of
// x on M is -rho(x) for the given representation rho.  For the coadjoint
// representation this is the pairing (x.f)(y) = f([x,y]).
template <class F>
LinearMapSpace<F> antiderivations(const Algebra<F>& L, const Representation<F>& rep) {
    validate_representation(L, rep);
    const F& f = L.field;
    std::size_t n = L.dim, m = rep.module_dim;
    EchelonBasis<F> eb(f, n * m, resource_cap());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t r = 0; r < m; ++r) {
                detail::EqRow<F> row;
                for (auto& [h, c] : L.product(i, j))
                    detail::eq_add(f, row, map_var(h, r, m), c);
                for (std::size_t s = 0; s < m; ++s) {
                    const auto& rj = rep.rho[j].at(r, s);
                    if (!f.is_zero(rj)) detail::eq_add(f, row, map_var(i, s, m), f.neg(rj));
                    const auto& ri = rep.rho[i].at(r, s);
                    if (!f.is_zero(ri)) detail::eq_add(f, row, map_var(j, s, m), ri);
                }
                detail::eq_insert(f, eb, row);
            }
    LinearMapSpace<F> out{n, m, {}};
    for (auto& v : eb.nullspace_basis()) {
        Matrix<F> d = flat_to_map(f, n, m, v);
        // Independent re-check of the defining identity.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                std::vector<typename F::elem> lhs(m, f.zero());
                for (auto& [h, c] : L.product(i, j)) {
                    auto col = d.mul_vec(L.basis_vector(h));
                    for (std::size_t r = 0; r < m; ++r) lhs[r] = f.add(lhs[r], f.mul(c, col[r]));
                }
                auto di = d.mul_vec(L.basis_vector(i));
                auto dj = d.mul_vec(L.basis_vector(j));
                auto rdi = rep.rho[j].mul_vec(di);
                auto rdj = rep.rho[i].mul_vec(dj);
                for (std::size_t r = 0; r < m; ++r)
                    require(f.eq(lhs[r], f.sub(rdi[r], rdj[r])), errc::internal_error,
                            "solver output fails the antiderivation identity");
            }
        out.basis.push_back(std::move(d));
    }
    return out;
}

// u(phi)(x) = phi(x, -) as a map into dual coordinates.
template <class F>
Matrix<F> seq_u(const BilinearForm<F>& phi) {
    return phi.phi.transpose();
}

// v(d)(x,y) = d(x)(y) - d(y)(x).
template <class F>
BilinearForm<F> seq_v(const Matrix<F>& d) {
    require(d.rows == d.cols, errc::dimension_mismatch,
            "v needs a map from the algebra to its dual coordinate space");
    const F& f = d.field;
    Matrix<F> phi(f, d.rows, d.rows);
    for (std::size_t x = 0; x < d.rows; ++x)
        for (std::size_t y = 0; y < d.rows; ++y) phi.at(x, y) = f.sub(d.at(y, x), d.at(x, y));
    return BilinearForm<F>{d.rows, std::move(phi), symmetry_tag::skew};
}

// (D.phi)(x,y) = phi(D x, y) + phi(x, D y).
template <class F>
Matrix<F> act_on_form(const Matrix<F>& D, const Matrix<F>& phi) {
    require(D.rows == phi.rows && D.rows == D.cols && phi.rows == phi.cols,
            errc::dimension_mismatch, "derivation action needs matching square matrices");
    const F& f = D.field;
    Matrix<F> dt = D.transpose();
    Matrix<F> out = dt.mul(phi);
    Matrix<F> right = phi.mul(D);
    for (std::size_t a = 0; a < out.rows; ++a)
        for (std::size_t b = 0; b < out.cols; ++b)
            out.at(a, b) = f.add(out.at(a, b), right.at(a, b));
    return out;
}

// Subspace of S annihilated by the action of every ad e_i.
template <class F>
FormSpace<F> space_invariants_under(const Algebra<F>& L, const FormSpace<F>& S) {
    require(S.ambient_dim == L.dim, errc::dimension_mismatch,
            "form space does not live over this algebra");
    const F& f = L.field;
    std::size_t d = L.dim, k = S.dim();
    if (k == 0) return S;
    std::vector<std::vector<Matrix<F>>> acted;
    for (std::size_t i = 0; i < d; ++i) {
        Matrix<F> ad = ad_matrix(L, i);
        std::vector<Matrix<F>> row;
        for (auto& b : S.basis) row.push_back(act_on_form(ad, b.phi));
        acted.push_back(std::move(row));
    }
    EchelonBasis<F> eb(f, k, resource_cap());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) {
                detail::EqRow<F> row;
                for (std::size_t r = 0; r < k; ++r)
                    detail::eq_add(f, row, r, acted[i][r].at(x, y));
                detail::eq_insert(f, eb, row);
            }
    FormSpace<F> out;
    out.kind = S.kind;
    out.ambient_dim = S.ambient_dim;
    for (auto& coeff : eb.nullspace_basis()) {
        Matrix<F> m(f, d, d);
        for (std::size_t r = 0; r < k; ++r) {
            if (f.is_zero(coeff[r])) continue;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    m.at(a, b) = f.add(m.at(a, b), f.mul(coeff[r], S.basis[r].phi.at(a, b)));
        }
        detail::certify_form(L, m, S.kind);
        out.basis.push_back(BilinearForm<F>{d, std::move(m), S.basis.empty()
                                                                  ? symmetry_tag::none
                                                                  : S.basis[0].tag});
    }
    return out;
}

struct CurrAuxDims {
    std::size_t dim_ker_s2mul = 0;
    std::size_t dim_alia_wedge_span = 0;
};

// Auxiliary dimensions attached to the coefficient algebra: the kernel of the
// multiplication map S^2(A) -> A, and the span of ab^c + ca^b + bc^a inside
// the exterior square.
template <class F>
CurrAuxDims curr_aux_dims(const Algebra<F>& A) {
    require(A.flags.assoc_comm, errc::not_assoc_comm,
            "auxiliary dimensions need a commutative associative algebra");
    const F& f = A.field;
    std::size_t d = A.dim;
    CurrAuxDims out;

    EchelonBasis<F> mul_image(f, d, resource_cap());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const auto& v = A.product(i, j);
            if (!v.empty()) mul_image.insert(v);
        }
    out.dim_ker_s2mul = sym_pair_count(d) - mul_image.rank();

    EchelonBasis<F> wedge(f, skew_pair_count(d), resource_cap());
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                detail::EqRow<F> row;
                for (auto& [m, s] : A.product(a, b)) detail::eq_add_skew(f, row, m, c, d, s);
                for (auto& [m, s] : A.product(c, a)) detail::eq_add_skew(f, row, m, b, d, s);
                for (auto& [m, s] : A.product(b, c)) detail::eq_add_skew(f, row, m, a, d, s);
                detail::eq_insert(f, wedge, row);
            }
    out.dim_alia_wedge_span = wedge.rank();
    return out;
}

}  // namespace cocycle
