#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cocycle/error.hpp"
#include "cocycle/field.hpp"
#include "cocycle/matrix.hpp"

namespace cocycle {

// How the stored product table completes to the full bilinear product:
// antisymmetric tables keep i<j, symmetric tables keep i<=j, full tables keep
// every ordered pair.
enum class completion { antisymmetric, symmetric, full };

template <class F>
struct Algebra {
    using elem = typename F::elem;

    F field;
    std::size_t dim = 0;
    std::vector<std::string> basis_names;
    completion mode = completion::antisymmetric;
    struct Flags {
        bool lie = false;
        bool assoc_comm = false;
        std::optional<std::size_t> unit;
    } flags;

    explicit Algebra(F f) : field(f) {}

    // Entries are accumulated before finalize(); product() is valid after.
    void add_term(std::size_t i, std::size_t j, std::size_t k, const elem& c) {
        require(i < dim && j < dim && k < dim, errc::dimension_mismatch, "tensor index out of range");
        raw_[{i, j}][k] = field.add(coeff_raw(i, j, k), c);
    }

    void set_product(std::size_t i, std::size_t j, const SparseVec<F>& terms) {
        for (auto& [k, c] : terms) add_term(i, j, k, c);
    }

    void finalize() {
        table_.assign(dim * dim, {});
        for (auto& [ij, terms] : raw_) {
            auto [i, j] = ij;
            switch (mode) {
                case completion::antisymmetric:
                    require(i < j, errc::validation_error,
                            "antisymmetric tables store pairs with i<j only");
                    break;
                case completion::symmetric:
                    require(i <= j, errc::validation_error,
                            "symmetric tables store pairs with i<=j only");
                    break;
                case completion::full:
                    break;
            }
            SparseVec<F> v;
            for (auto& [k, c] : terms)
                if (!field.is_zero(c)) v.emplace_back(k, c);
            if (v.empty()) continue;
            table_[i * dim + j] = v;
            if (mode == completion::antisymmetric) {
                SparseVec<F> nv = v;
                for (auto& [k, c] : nv) c = field.neg(c);
                table_[j * dim + i] = std::move(nv);
            } else if (mode == completion::symmetric && i != j) {
                table_[j * dim + i] = v;
            }
        }
        finalized_ = true;
    }

    bool finalized() const { return finalized_; }

    const SparseVec<F>& product(std::size_t i, std::size_t j) const {
        require(finalized_, errc::internal_error, "algebra used before finalize()");
        return table_[i * dim + j];
    }

    std::vector<elem> multiply(const std::vector<elem>& x, const std::vector<elem>& y) const {
        require(x.size() == dim && y.size() == dim, errc::dimension_mismatch,
                "multiply operand length");
        std::vector<elem> out(dim, field.zero());
        for (std::size_t i = 0; i < dim; ++i) {
            if (field.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (field.is_zero(y[j])) continue;
                elem c = field.mul(x[i], y[j]);
                for (auto& [k, v] : product(i, j)) out[k] = field.add(out[k], field.mul(c, v));
            }
        }
        return out;
    }

    // [v, e_j] for a coordinate vector v.
    std::vector<elem> mul_vec_basis(const std::vector<elem>& v, std::size_t j) const {
        std::vector<elem> out(dim, field.zero());
        for (std::size_t i = 0; i < dim; ++i) {
            if (field.is_zero(v[i])) continue;
            for (auto& [k, c] : product(i, j)) out[k] = field.add(out[k], field.mul(v[i], c));
        }
        return out;
    }

    // [e_i, v].
    std::vector<elem> mul_basis_vec(std::size_t i, const std::vector<elem>& v) const {
        std::vector<elem> out(dim, field.zero());
        for (std::size_t j = 0; j < dim; ++j) {
            if (field.is_zero(v[j])) continue;
            for (auto& [k, c] : product(i, j)) out[k] = field.add(out[k], field.mul(v[j], c));
        }
        return out;
    }

    std::vector<elem> basis_vector(std::size_t i) const {
        std::vector<elem> v(dim, field.zero());
        v[i] = field.one();
        return v;
    }

    bool is_zero_vec(const std::vector<elem>& v) const {
        for (auto& x : v)
            if (!field.is_zero(x)) return false;
        return true;
    }

private:
    elem coeff_raw(std::size_t i, std::size_t j, std::size_t k) const {
        auto it = raw_.find({i, j});
        if (it == raw_.end()) return field.zero();
        auto jt = it->second.find(k);
        return jt == it->second.end() ? field.zero() : jt->second;
    }

    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, elem>> raw_;
    std::vector<SparseVec<F>> table_;
    bool finalized_ = false;
};

struct ValidationReport {
    bool antisymmetric = false;
    bool jacobi = false;
    bool commutative = false;
    bool associative = false;
    std::optional<std::size_t> unit_index;
    // First violated identity per family; empty when the family holds.
    std::string lie_witness;
    std::string assoc_comm_witness;

    bool lie() const { return antisymmetric && jacobi; }
    bool assoc_comm() const { return commutative && associative; }
};

template <class F>
ValidationReport validate(const Algebra<F>& A) {
    const F& f = A.field;
    std::size_t n = A.dim;
    ValidationReport rep;
    rep.antisymmetric = true;
    rep.commutative = true;
    rep.associative = true;

    auto sparse_eq_neg = [&](const SparseVec<F>& a, const SparseVec<F>& b) {
        std::vector<typename F::elem> acc(n, f.zero());
        for (auto& [k, c] : a) acc[k] = f.add(acc[k], c);
        for (auto& [k, c] : b) acc[k] = f.add(acc[k], c);
        for (auto& x : acc)
            if (!f.is_zero(x)) return false;
        return true;
    };
    auto sparse_eq = [&](const SparseVec<F>& a, const SparseVec<F>& b) {
        std::vector<typename F::elem> acc(n, f.zero());
        for (auto& [k, c] : a) acc[k] = f.add(acc[k], c);
        for (auto& [k, c] : b) acc[k] = f.sub(acc[k], c);
        for (auto& x : acc)
            if (!f.is_zero(x)) return false;
        return true;
    };

    for (std::size_t i = 0; i < n && rep.antisymmetric; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (!sparse_eq_neg(A.product(i, j), A.product(j, i))) {
                rep.antisymmetric = false;
                if (rep.lie_witness.empty())
                    rep.lie_witness = "antisymmetry fails at pair (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")";
                break;
            }

    rep.jacobi = rep.antisymmetric;
    if (rep.antisymmetric) {
        // Antisymmetry makes the Jacobi expression alternating, so triples
        // with a repeated index vanish identically; i<j<k is exhaustive.
        for (std::size_t i = 0; i < n && rep.jacobi; ++i)
            for (std::size_t j = i + 1; j < n && rep.jacobi; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    std::vector<typename F::elem> acc(n, f.zero());
                    auto addcyc = [&](std::size_t a, std::size_t b, std::size_t c) {
                        for (auto& [m, cv] : A.product(a, b))
                            for (auto& [t, tv] : A.product(m, c))
                                acc[t] = f.add(acc[t], f.mul(cv, tv));
                    };
                    addcyc(i, j, k);
                    addcyc(k, i, j);
                    addcyc(j, k, i);
                    if (!A.is_zero_vec(acc)) {
                        rep.jacobi = false;
                        if (rep.lie_witness.empty())
                            rep.lie_witness = "Jacobi fails at triple (" + std::to_string(i) + "," +
                                          std::to_string(j) + "," + std::to_string(k) + ")";
                        break;
                    }
                }
    }

    for (std::size_t i = 0; i < n && rep.commutative; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!sparse_eq(A.product(i, j), A.product(j, i))) {
                rep.commutative = false;
                if (rep.assoc_comm_witness.empty())
                    rep.assoc_comm_witness = "commutativity fails at pair (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")";
                break;
            }

    for (std::size_t i = 0; i < n && rep.associative; ++i)
        for (std::size_t j = 0; j < n && rep.associative; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<typename F::elem> acc(n, f.zero());
                for (auto& [m, cv] : A.product(i, j))
                    for (auto& [t, tv] : A.product(m, k)) acc[t] = f.add(acc[t], f.mul(cv, tv));
                for (auto& [m, cv] : A.product(j, k))
                    for (auto& [t, tv] : A.product(i, m)) acc[t] = f.sub(acc[t], f.mul(cv, tv));
                if (!A.is_zero_vec(acc)) {
                    rep.associative = false;
                    if (rep.assoc_comm_witness.empty())
                        rep.assoc_comm_witness = "associativity fails at triple (" + std::to_string(i) + "," +
                                      std::to_string(j) + "," + std::to_string(k) + ")";
                    break;
                }
            }

    // A two-sided unit, when one exists, is the unique solution of a linear
    // system; it is reported only when it coincides with a basis vector.
    if (!rep.antisymmetric && n > 0) {
        Matrix<F> M(f, 2 * n * n, n);
        std::vector<typename F::elem> b(2 * n * n, f.zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t m = 0; m < n; ++m) {
                for (auto& [k, c] : A.product(m, i)) M.at(i * n + k, m) = f.add(M.at(i * n + k, m), c);
                for (auto& [k, c] : A.product(i, m))
                    M.at(n * n + i * n + k, m) = f.add(M.at(n * n + i * n + k, m), c);
            }
        for (std::size_t i = 0; i < n; ++i) {
            b[i * n + i] = f.one();
            b[n * n + i * n + i] = f.one();
        }
        if (auto u = solve(M, b)) {
            std::optional<std::size_t> idx;
            std::size_t nonzero = 0;
            for (std::size_t m = 0; m < n; ++m)
                if (!f.is_zero((*u)[m])) {
                    ++nonzero;
                    if (f.eq((*u)[m], f.one())) idx = m;
                }
            if (nonzero == 1 && idx) rep.unit_index = idx;
        }
    }
    return rep;
}

template <class F>
struct Subspace {
    std::size_t ambient_dim = 0;
    std::vector<std::vector<typename F::elem>> basis;  // canonical reduced rows
    std::size_t dim() const { return basis.size(); }
};

// Membership tester over a fixed span.
template <class F>
class SpanTester {
public:
    SpanTester(F f, std::size_t ambient, const std::vector<std::vector<typename F::elem>>& vecs)
        : eb_(f, ambient), field_(f) {
        for (auto& v : vecs) eb_.insert(to_sparse(f, v));
    }
    bool contains(const std::vector<typename F::elem>& v) {
        return eb_.member(to_sparse(field_, v));
    }
    std::size_t rank() const { return eb_.rank(); }

private:
    EchelonBasis<F> eb_;
    F field_;
};

template <class F>
Subspace<F> make_subspace(F f, std::size_t ambient,
                          const std::vector<std::vector<typename F::elem>>& vecs) {
    EchelonBasis<F> eb(f, ambient);
    for (auto& v : vecs) eb.insert(to_sparse(f, v));
    Subspace<F> s;
    s.ambient_dim = ambient;
    auto rows = eb.rref_rows();
    for (auto& r : rows) s.basis.push_back(std::vector<typename F::elem>(r.begin(), r.end()));
    return s;
}

template <class F>
void require_lie(const Algebra<F>& A, const char* op) {
    require(A.flags.lie, errc::not_lie, std::string(op) + " requires a Lie algebra");
}

template <class F>
Subspace<F> derived_subalgebra(const Algebra<F>& L) {
    require_lie(L, "derived_subalgebra");
    std::vector<std::vector<typename F::elem>> vecs;
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = i + 1; j < L.dim; ++j) {
            std::vector<typename F::elem> v(L.dim, L.field.zero());
            for (auto& [k, c] : L.product(i, j)) v[k] = c;
            if (!L.is_zero_vec(v)) vecs.push_back(std::move(v));
        }
    return make_subspace(L.field, L.dim, vecs);
}

template <class F>
bool is_ideal(const Algebra<F>& L, const Subspace<F>& S) {
    require_lie(L, "is_ideal");
    SpanTester<F> span(L.field, L.dim, S.basis);
    for (auto& b : S.basis)
        for (std::size_t i = 0; i < L.dim; ++i)
            if (!span.contains(L.mul_basis_vec(i, b))) return false;
    return true;
}

template <class F>
Subspace<F> center(const Algebra<F>& L) {
    require_lie(L, "center");
    std::size_t n = L.dim;
    std::vector<SparseVec<F>> rows(n * n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j < n; ++j)
            for (auto& [k, c] : L.product(m, j)) rows[j * n + k].emplace_back(m, c);
    EchelonBasis<F> eb(L.field, n);
    for (auto& r : rows) {
        std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });
        eb.insert(r);
    }
    return make_subspace(L.field, n, eb.nullspace_basis());
}

template <class F>
struct Quotient {
    Algebra<F> algebra;
    Matrix<F> projection;               // (dim L - dim I) x dim L
    std::vector<std::size_t> complement;  // ambient coordinates kept as the quotient basis
};

template <class F>
Quotient<F> quotient(const Algebra<F>& L, const Subspace<F>& I) {
    require_lie(L, "quotient");
    require(is_ideal(L, I), errc::not_an_ideal, "quotient requires an ideal");
    const F& f = L.field;
    std::size_t n = L.dim;

    Subspace<F> ideal = make_subspace(f, n, I.basis);  // canonical rows
    std::vector<bool> is_pivot(n, false);
    for (auto& row : ideal.basis) {
        std::size_t lead = 0;
        while (lead < n && f.is_zero(row[lead])) ++lead;
        is_pivot[lead] = true;
    }
    std::vector<std::size_t> comp;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) comp.push_back(c);
    std::size_t q = comp.size();

    // Projection: complement coordinates pass through; each pivot coordinate
    // maps to minus the free part of its reduced ideal row.
    Matrix<F> proj(f, q, n);
    std::vector<std::size_t> comp_index(n, 0);
    for (std::size_t a = 0; a < q; ++a) comp_index[comp[a]] = a;
    for (std::size_t a = 0; a < q; ++a) proj.at(a, comp[a]) = f.one();
    for (auto& row : ideal.basis) {
        std::size_t lead = 0;
        while (lead < n && f.is_zero(row[lead])) ++lead;
        for (std::size_t c = 0; c < n; ++c)
            if (!is_pivot[c] && !f.is_zero(row[c])) proj.at(comp_index[c], lead) = f.neg(row[c]);
    }

    Quotient<F> out{Algebra<F>(f), std::move(proj), comp};
    out.algebra.dim = q;
    out.algebra.mode = completion::antisymmetric;
    for (std::size_t a = 0; a < q; ++a) out.algebra.basis_names.push_back(L.basis_names[comp[a]]);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = a + 1; b < q; ++b) {
            std::vector<typename F::elem> w(n, f.zero());
            for (auto& [k, c] : L.product(comp[a], comp[b])) w[k] = c;
            auto pw = out.projection.mul_vec(w);
            SparseVec<F> terms;
            for (std::size_t k = 0; k < q; ++k)
                if (!f.is_zero(pw[k])) terms.emplace_back(k, pw[k]);
            if (!terms.empty()) out.algebra.set_product(a, b, terms);
        }
    out.algebra.finalize();
    ValidationReport rep = validate(out.algebra);
    require(rep.lie(), errc::internal_error, "quotient is not Lie: " + rep.lie_witness);
    out.algebra.flags.lie = true;
    return out;
}

template <class F>
struct S4Result {
    Subspace<F> span;
    bool ideal = false;
};

// Span of the degree-5 standard-identity values
//   sum over permutations s of sign(s) [[[[y,x_{s1}],x_{s2}],x_{s3}],x_{s4}].
// The expression is multilinear and alternating in the x's, so basis tuples
// with x1<x2<x3<x4 span the whole value space.
template <class F>
S4Result<F> s4_span(const Algebra<F>& L) {
    require_lie(L, "s4_span");
    const F& f = L.field;
    std::size_t n = L.dim;

    std::vector<std::pair<std::array<std::size_t, 4>, bool>> perms;  // (perm, odd)
    {
        std::array<std::size_t, 4> p{0, 1, 2, 3};
        do {
            std::size_t inv = 0;
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = a + 1; b < 4; ++b)
                    if (p[a] > p[b]) ++inv;
            perms.push_back({p, inv % 2 == 1});
        } while (std::next_permutation(p.begin(), p.end()));
    }

    EchelonBasis<F> eb(f, n);
    std::array<std::size_t, 4> xs{};
    if (n >= 4) {
        for (xs[0] = 0; xs[0] < n; ++xs[0])
            for (xs[1] = xs[0] + 1; xs[1] < n; ++xs[1])
                for (xs[2] = xs[1] + 1; xs[2] < n; ++xs[2])
                    for (xs[3] = xs[2] + 1; xs[3] < n; ++xs[3])
                        for (std::size_t y = 0; y < n; ++y) {
                            if (eb.rank() == n) goto done;
                            std::vector<typename F::elem> acc(n, f.zero());
                            for (auto& [p, odd] : perms) {
                                std::vector<typename F::elem> v(n, f.zero());
                                for (auto& [k, c] : L.product(y, xs[p[0]])) v[k] = c;
                                for (std::size_t step = 1; step < 4; ++step)
                                    v = L.mul_vec_basis(v, xs[p[step]]);
                                for (std::size_t k = 0; k < n; ++k)
                                    acc[k] = odd ? f.sub(acc[k], v[k]) : f.add(acc[k], v[k]);
                            }
                            eb.insert(to_sparse(f, acc));
                        }
    }
done:
    S4Result<F> out;
    out.span.ambient_dim = n;
    for (auto& r : eb.rref_rows())
        out.span.basis.push_back(std::vector<typename F::elem>(r.begin(), r.end()));
    out.ideal = is_ideal(L, out.span);
    return out;
}

template <class F>
bool satisfies_std_identity5(const Algebra<F>& L) {
    return s4_span(L).span.dim() == 0;
}

template <class F>
struct Representation {
    std::size_t algebra_dim = 0;
    std::size_t module_dim = 0;
    std::vector<Matrix<F>> rho;  // module_dim x module_dim, one per basis element
};

template <class F>
void validate_representation(const Algebra<F>& L, const Representation<F>& rep) {
    require(rep.algebra_dim == L.dim && rep.rho.size() == L.dim, errc::invalid_representation,
            "representation size mismatch");
    const F& f = L.field;
    std::size_t m = rep.module_dim;
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = i + 1; j < L.dim; ++j) {
            Matrix<F> lhs(f, m, m);
            for (auto& [k, c] : L.product(i, j))
                for (std::size_t r = 0; r < m; ++r)
                    for (std::size_t s = 0; s < m; ++s)
                        lhs.at(r, s) = f.add(lhs.at(r, s), f.mul(c, rep.rho[k].at(r, s)));
            Matrix<F> rhs = rep.rho[i].mul(rep.rho[j]);
            Matrix<F> rhs2 = rep.rho[j].mul(rep.rho[i]);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t s = 0; s < m; ++s)
                    require(f.eq(lhs.at(r, s), f.sub(rhs.at(r, s), rhs2.at(r, s))),
                            errc::invalid_representation,
                            "bracket compatibility fails at pair (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        }
}

// ad matrix of e_i: column j holds the coordinates of [e_i, e_j].
template <class F>
Matrix<F> ad_matrix(const Algebra<F>& L, std::size_t i) {
    Matrix<F> m(L.field, L.dim, L.dim);
    for (std::size_t j = 0; j < L.dim; ++j)
        for (auto& [k, c] : L.product(i, j)) m.at(k, j) = c;
    return m;
}

// Coadjoint representation rho(x) = -(ad x)^T, a genuine representation on
// the dual coordinate space.
template <class F>
Representation<F> coadjoint_rep(const Algebra<F>& L) {
    require_lie(L, "coadjoint_rep");
    Representation<F> rep{L.dim, L.dim, {}};
    for (std::size_t i = 0; i < L.dim; ++i) {
        Matrix<F> ad = ad_matrix(L, i);
        Matrix<F> m(L.field, L.dim, L.dim);
        for (std::size_t r = 0; r < L.dim; ++r)
            for (std::size_t c = 0; c < L.dim; ++c) m.at(r, c) = L.field.neg(ad.at(c, r));
        rep.rho.push_back(std::move(m));
    }
    return rep;
}

template <class F>
struct LinearMapSpace {
    std::size_t source_dim = 0, target_dim = 0;
    std::vector<Matrix<F>> basis;  // target_dim x source_dim
    std::size_t dim() const { return basis.size(); }
};

// Flattening convention for unknown linear maps: variable (s,t) is the
// coefficient of target coordinate t in the image of source basis vector s.
inline std::size_t map_var(std::size_t s, std::size_t t, std::size_t target_dim) {
    return s * target_dim + t;
}

template <class F>
std::vector<typename F::elem> map_to_flat(const Matrix<F>& m) {
    std::vector<typename F::elem> v(m.rows * m.cols, m.field.zero());
    for (std::size_t t = 0; t < m.rows; ++t)
        for (std::size_t s = 0; s < m.cols; ++s) v[map_var(s, t, m.rows)] = m.at(t, s);
    return v;
}

template <class F>
Matrix<F> flat_to_map(F f, std::size_t source_dim, std::size_t target_dim,
                      const std::vector<typename F::elem>& v) {
    Matrix<F> m(f, target_dim, source_dim);
    for (std::size_t s = 0; s < source_dim; ++s)
        for (std::size_t t = 0; t < target_dim; ++t) m.at(t, s) = v[map_var(s, t, target_dim)];
    return m;
}

// Solves d(e_i e_j) = d(e_i) e_j + e_i d(e_j) over the pair set the product
// symmetry makes sufficient.
template <class F>
LinearMapSpace<F> derivations(const Algebra<F>& A) {
    const F& f = A.field;
    std::size_t n = A.dim;
    EchelonBasis<F> eb(f, n * n, resource_cap());
    auto emit_pair = [&](std::size_t i, std::size_t j) {
        std::vector<std::map<std::size_t, typename F::elem>> eq(n);
        for (auto& [m, cv] : A.product(i, j))
            for (std::size_t k = 0; k < n; ++k) {
                auto& slot = eq[k][map_var(m, k, n)];
                slot = f.add(slot, cv);
            }
        for (std::size_t t = 0; t < n; ++t) {
            for (auto& [k, pv] : A.product(t, j)) {
                auto& slot = eq[k][map_var(i, t, n)];
                slot = f.sub(slot, pv);
            }
            for (auto& [k, pv] : A.product(i, t)) {
                auto& slot = eq[k][map_var(j, t, n)];
                slot = f.sub(slot, pv);
            }
        }
        for (auto& row : eq) {
            SparseVec<F> sv;
            for (auto& [var, c] : row)
                if (!f.is_zero(c)) sv.emplace_back(var, c);
            if (!sv.empty()) eb.insert(sv);
        }
    };
    if (A.flags.lie) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) emit_pair(i, j);
    } else if (A.flags.assoc_comm) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) emit_pair(i, j);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) emit_pair(i, j);
    }
    LinearMapSpace<F> out{n, n, {}};
    for (auto& v : eb.nullspace_basis())
        out.basis.push_back(flat_to_map(f, n, n, std::vector<typename F::elem>(v.begin(), v.end())));
    return out;
}

// Solves many right-hand sides against one coefficient matrix; returns one
// optional solution per column of B.
template <class F>
std::vector<std::optional<std::vector<typename F::elem>>> solve_multi(
    const Matrix<F>& A, const std::vector<std::vector<typename F::elem>>& rhs) {
    Matrix<F> aug(A.field, A.rows, A.cols + rhs.size());
    for (std::size_t r = 0; r < A.rows; ++r)
        for (std::size_t c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
    for (std::size_t b = 0; b < rhs.size(); ++b) {
        require(rhs[b].size() == A.rows, errc::dimension_mismatch, "solve_multi rhs length");
        for (std::size_t r = 0; r < A.rows; ++r) aug.at(r, A.cols + b) = rhs[b][r];
    }
    RrefResult<F> rr = rref(aug);
    std::vector<std::optional<std::vector<typename F::elem>>> out(rhs.size());
    for (std::size_t b = 0; b < rhs.size(); ++b) {
        bool consistent = true;
        // A pivot inside the rhs block invalidates only columns at or past it.
        for (std::size_t p : rr.pivots)
            if (p >= A.cols && p <= A.cols + b) consistent = false;
        if (!consistent) {
            out[b] = std::nullopt;
            continue;
        }
        std::vector<typename F::elem> x(A.cols, A.field.zero());
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            if (rr.pivots[i] < A.cols) x[rr.pivots[i]] = rr.reduced.at(i, A.cols + b);
        out[b] = std::move(x);
    }
    return out;
}

// Builds the Lie algebra generated by the given maps under commutator; the
// span must be closed, each commutator is re-expressed in the given basis.
template <class F>
Algebra<F> algebra_from_linear_maps(F f, const std::vector<Matrix<F>>& maps,
                                    const std::vector<std::string>& names) {
    std::size_t k = maps.size();
    require(names.size() == k, errc::dimension_mismatch, "one name per map");
    std::size_t n = k ? maps[0].rows : 0;
    for (auto& m : maps)
        require(m.rows == n && m.cols == n, errc::dimension_mismatch, "maps must be square and equal-sized");

    Matrix<F> A(f, n * n, k);
    for (std::size_t c = 0; c < k; ++c) {
        auto flat = map_to_flat(maps[c]);
        for (std::size_t r = 0; r < n * n; ++r) A.at(r, c) = flat[r];
    }
    std::vector<std::vector<typename F::elem>> rhs;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            Matrix<F> ab = maps[a].mul(maps[b]);
            Matrix<F> ba = maps[b].mul(maps[a]);
            Matrix<F> comm(f, n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) comm.at(r, c) = f.sub(ab.at(r, c), ba.at(r, c));
            rhs.push_back(map_to_flat(comm));
            pairs.emplace_back(a, b);
        }
    auto sols = solve_multi(A, rhs);

    Algebra<F> out(f);
    out.dim = k;
    out.basis_names = names;
    out.mode = completion::antisymmetric;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        require(sols[idx].has_value(), errc::spec_violation,
                "maps are not closed under commutator");
        SparseVec<F> terms;
        for (std::size_t m = 0; m < k; ++m)
            if (!f.is_zero((*sols[idx])[m])) terms.emplace_back(m, (*sols[idx])[m]);
        if (!terms.empty()) out.set_product(pairs[idx].first, pairs[idx].second, terms);
    }
    out.finalize();
    ValidationReport rep = validate(out);
    require(rep.lie(), errc::jacobi_failure, "commutator table violates Jacobi: " + rep.lie_witness);
    out.flags.lie = true;
    return out;
}

}  // namespace cocycle
