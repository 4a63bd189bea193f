#pragma once

#include <array>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "cocycle/algebra.hpp"
#include "cocycle/error.hpp"
#include "cocycle/field.hpp"
#include "cocycle/matrix.hpp"

namespace cocycle {

namespace detail {

template <class F>
void gate_lie(Algebra<F>& A, const char* what) {
    ValidationReport rep = validate(A);
    require(rep.lie(), errc::jacobi_failure,
            std::string(what) + " is not a Lie algebra: " + rep.lie_witness);
    A.flags.lie = true;
}

template <class F>
void gate_assoc_comm(Algebra<F>& A, const char* what) {
    ValidationReport rep = validate(A);
    require(rep.assoc_comm(), errc::not_assoc_comm,
            std::string(what) + " is not commutative-associative: " + rep.assoc_comm_witness);
    A.flags.assoc_comm = true;
    A.flags.unit = rep.unit_index;
}

}  // namespace detail

template <class F>
Algebra<F> two_dim_nonabelian(F f) {
    Algebra<F> L(f);
    L.dim = 2;
    L.basis_names = {"x", "y"};
    L.set_product(0, 1, {{1, f.one()}});
    L.finalize();
    detail::gate_lie(L, "two_dim_nonabelian");
    return L;
}

template <class F>
Algebra<F> heisenberg3(F f) {
    Algebra<F> L(f);
    L.dim = 3;
    L.basis_names = {"x", "y", "z"};
    L.set_product(0, 1, {{2, f.one()}});
    L.finalize();
    detail::gate_lie(L, "heisenberg3");
    return L;
}

template <class F>
Algebra<F> abelian(F f, std::size_t n) {
    Algebra<F> L(f);
    L.dim = n;
    for (std::size_t i = 1; i <= n; ++i) L.basis_names.push_back("a" + std::to_string(i));
    L.finalize();
    L.flags.lie = true;
    return L;
}

// Traceless matrices under commutator.  Basis: e(i,j) above the diagonal in
// row-major order, then h_m = E(m,m)-E(m+1,m+1), then e(i,j) below the
// diagonal in row-major order.
template <class F>
Algebra<F> sl(F f, std::size_t n) {
    require(n >= 2, errc::precondition_failed, "sl(n) needs n >= 2");
    std::vector<Matrix<F>> maps;
    std::vector<std::string> names;
    auto elem = [&](std::size_t i, std::size_t j) {
        Matrix<F> m(f, n, n);
        m.at(i - 1, j - 1) = f.one();
        return m;
    };
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            maps.push_back(elem(i, j));
            names.push_back("e(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    for (std::size_t m = 1; m < n; ++m) {
        Matrix<F> h(f, n, n);
        h.at(m - 1, m - 1) = f.one();
        h.at(m, m) = f.neg(f.one());
        maps.push_back(std::move(h));
        names.push_back("h" + std::to_string(m));
    }
    for (std::size_t i = 2; i <= n; ++i)
        for (std::size_t j = 1; j < i; ++j) {
            maps.push_back(elem(i, j));
            names.push_back("e(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return algebra_from_linear_maps(f, maps, names);
}

// [a,b] = ab - ba on the same basis.  Commutative input gives an abelian
// Lie algebra.
template <class F>
Algebra<F> minus_algebra(const Algebra<F>& A) {
    const F& f = A.field;
    Algebra<F> L(f);
    L.dim = A.dim;
    L.basis_names = A.basis_names;
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = i + 1; j < A.dim; ++j) {
            std::vector<typename F::elem> v(A.dim, f.zero());
            for (auto& [k, c] : A.product(i, j)) v[k] = f.add(v[k], c);
            for (auto& [k, c] : A.product(j, i)) v[k] = f.sub(v[k], c);
            SparseVec<F> terms;
            for (std::size_t k = 0; k < A.dim; ++k)
                if (!f.is_zero(v[k])) terms.emplace_back(k, v[k]);
            if (!terms.empty()) L.set_product(i, j, terms);
        }
    L.finalize();
    detail::gate_lie(L, "minus_algebra output");
    return L;
}

inline std::uint64_t binom_mod_p(unsigned long n, unsigned long k, std::uint64_t p) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    mpz_class r = b % static_cast<unsigned long>(p);
    return static_cast<std::uint64_t>(r.get_ui());
}

inline std::size_t pow_size(std::uint64_t p, std::size_t n) {
    std::size_t d = 1;
    for (std::size_t i = 0; i < n; ++i) {
        require(d <= (std::size_t(1) << 20) / p, errc::resource_error,
                "p^n dimension is beyond desk scale");
        d *= p;
    }
    return d;
}

// Truncated divided powers: basis x^0..x^(p^n-1) with
// x^i x^j = binom(i+j, j) x^(i+j), zero once the exponent sum reaches p^n.
inline Algebra<FpField> divided_power_o1n(FpField f, std::size_t n) {
    require(n >= 1, errc::precondition_failed, "divided_power_o1n needs n >= 1");
    std::size_t d = pow_size(f.modulus(), n);
    Algebra<FpField> A(f);
    A.dim = d;
    A.mode = completion::symmetric;
    for (std::size_t i = 0; i < d; ++i) A.basis_names.push_back("x^" + std::to_string(i));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            if (i + j >= d) continue;
            std::uint64_t c = binom_mod_p(i + j, j, f.modulus());
            if (c) A.set_product(i, j, {{i + j, c}});
        }
    A.finalize();
    detail::gate_assoc_comm(A, "divided_power_o1n output");
    return A;
}

// Reduced polynomial algebra in n variables: monomial basis with every
// exponent below p, row-major exponent order.
inline Algebra<FpField> reduced_polynomial_on(FpField f, std::size_t n) {
    require(n >= 1, errc::precondition_failed, "reduced_polynomial_on needs n >= 1");
    std::uint64_t p = f.modulus();
    std::size_t d = pow_size(p, n);
    auto exps_of = [&](std::size_t idx) {
        std::vector<std::size_t> e(n);
        for (std::size_t m = n; m-- > 0;) {
            e[m] = idx % p;
            idx /= p;
        }
        return e;
    };
    auto name_of = [&](std::size_t idx) {
        auto e = exps_of(idx);
        if (n == 1) return "x^" + std::to_string(e[0]);
        std::string s = "x^(";
        for (std::size_t m = 0; m < n; ++m) s += (m ? "," : "") + std::to_string(e[m]);
        return s + ")";
    };
    Algebra<FpField> A(f);
    A.dim = d;
    A.mode = completion::symmetric;
    for (std::size_t i = 0; i < d; ++i) A.basis_names.push_back(name_of(i));
    for (std::size_t i = 0; i < d; ++i) {
        auto ei = exps_of(i);
        for (std::size_t j = i; j < d; ++j) {
            auto ej = exps_of(j);
            bool alive = true;
            std::size_t k = 0;
            for (std::size_t m = 0; m < n; ++m) {
                if (ei[m] + ej[m] >= p) {
                    alive = false;
                    break;
                }
                k = k * p + (ei[m] + ej[m]);
            }
            if (alive) A.set_product(i, j, {{k, f.one()}});
        }
    }
    A.finalize();
    detail::gate_assoc_comm(A, "reduced_polynomial_on output");
    return A;
}

// Derivation realization of the Zassenhaus algebra: elements a*d for a in the
// divided-power carrier, d the lowering derivation, bracket by the product
// rule [a*d, b*d] = (a*d(b) - b*d(a))*d.
struct ZassenhausDer {
    Algebra<FpField> algebra;
    Algebra<FpField> carrier;
    Matrix<FpField> partial;             // d on the carrier
    std::vector<Matrix<FpField>> action;  // basis element x^i*d acting on the carrier
};

inline ZassenhausDer zassenhaus_der(FpField f, std::size_t n) {
    Algebra<FpField> carrier = divided_power_o1n(f, n);
    std::size_t d = carrier.dim;
    Matrix<FpField> partial(f, d, d);
    for (std::size_t i = 1; i < d; ++i) partial.at(i - 1, i) = f.one();

    std::vector<Matrix<FpField>> action;
    for (std::size_t i = 0; i < d; ++i) {
        Matrix<FpField> m(f, d, d);
        for (std::size_t j = 1; j < d; ++j) {
            // x^i * d(x^j) in carrier coordinates.
            auto v = carrier.multiply(carrier.basis_vector(i), carrier.basis_vector(j - 1));
            for (std::size_t k = 0; k < d; ++k) m.at(k, j) = v[k];
        }
        action.push_back(std::move(m));
    }

    Algebra<FpField> W(f);
    W.dim = d;
    for (std::size_t i = 0; i < d; ++i) W.basis_names.push_back("x^" + std::to_string(i) + "*d");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            auto di = partial.mul_vec(carrier.basis_vector(i));
            auto dj = partial.mul_vec(carrier.basis_vector(j));
            auto a = carrier.multiply(carrier.basis_vector(i), dj);
            auto b = carrier.multiply(carrier.basis_vector(j), di);
            SparseVec<FpField> terms;
            for (std::size_t k = 0; k < d; ++k) {
                auto c = f.sub(a[k], b[k]);
                if (!f.is_zero(c)) terms.emplace_back(k, c);
            }
            if (!terms.empty()) W.set_product(i, j, terms);
        }
    W.finalize();
    detail::gate_lie(W, "zassenhaus_der output");
    return {std::move(W), std::move(carrier), std::move(partial), std::move(action)};
}

// Group-graded realization over the prime field itself: basis e_g for g in
// F_p, [e_a, e_b] = (b-a) e_(a+b).
inline Algebra<FpField> zassenhaus_group(FpField f) {
    std::uint64_t p = f.modulus();
    Algebra<FpField> W(f);
    W.dim = p;
    for (std::uint64_t g = 0; g < p; ++g) W.basis_names.push_back("e" + std::to_string(g));
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = a + 1; b < p; ++b) {
            std::uint64_t c = (b - a) % p;
            if (c) W.set_product(a, b, {{(a + b) % p, c}});
        }
    W.finalize();
    detail::gate_lie(W, "zassenhaus_group output");
    return W;
}

enum class rank2_type { A2, B2, G2 };

inline const char* rank2_name(rank2_type t) {
    switch (t) {
        case rank2_type::A2: return "A2";
        case rank2_type::B2: return "B2";
        case rank2_type::G2: return "G2";
    }
    return "?";
}

namespace detail {

using Root = std::array<int, 2>;

struct Rank2System {
    std::vector<Root> positive;  // ordered by (height, lexicographic)
    long form[2][2];             // inner products of the simple roots

    long inner(const Root& a, const Root& b) const {
        long s = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += static_cast<long>(a[i]) * form[i][j] * b[j];
        return s;
    }
    bool is_root(const Root& r) const {
        for (auto& q : positive)
            if ((q[0] == r[0] && q[1] == r[1]) || (q[0] == -r[0] && q[1] == -r[1])) return true;
        return false;
    }
};

inline Rank2System rank2_system(rank2_type t) {
    Rank2System s;
    switch (t) {
        case rank2_type::A2:
            s.form[0][0] = 2; s.form[1][1] = 2; s.form[0][1] = s.form[1][0] = -1;
            s.positive = {{{0, 1}}, {{1, 0}}, {{1, 1}}};
            break;
        case rank2_type::B2:
            // First simple root long, second short.
            s.form[0][0] = 2; s.form[1][1] = 1; s.form[0][1] = s.form[1][0] = -1;
            s.positive = {{{0, 1}}, {{1, 0}}, {{1, 1}}, {{1, 2}}};
            break;
        case rank2_type::G2:
            // First simple root short, second long.
            s.form[0][0] = 2; s.form[1][1] = 6; s.form[0][1] = s.form[1][0] = -3;
            s.positive = {{{0, 1}}, {{1, 0}}, {{1, 1}}, {{2, 1}}, {{3, 1}}, {{3, 2}}};
            break;
    }
    auto key = [](const Root& r) { return std::array<int, 3>{r[0] + r[1], r[0], r[1]}; };
    std::sort(s.positive.begin(), s.positive.end(),
              [&](const Root& a, const Root& b) { return key(a) < key(b); });
    return s;
}

inline Root root_add(const Root& a, const Root& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Root root_neg(const Root& a) { return {-a[0], -a[1]}; }

// Structure constants N(r,s) for [e_r, e_s] = N(r,s) e_(r+s), fixed by
// assigning +(chain length + 1) to extraspecial pairs and propagating the
// standard relations (antisymmetry, negation, the zero-sum proportionality,
// and the Jacobi quadratic relation) to a fixpoint.
class ChevalleyConstants {
public:
    explicit ChevalleyConstants(const Rank2System& sys) : sys_(sys) {
        for (auto& r : sys_.positive) {
            all_.push_back(r);
            all_.push_back(root_neg(r));
        }
        seed_extraspecial();
        propagate();
        for (auto& r : all_)
            for (auto& s : all_) {
                if (root_add(r, s) == Root{0, 0} || !sys_.is_root(root_add(r, s))) continue;
                auto it = n_.find({r, s});
                require(it != n_.end() && it->second.get_den() == 1, errc::internal_error,
                        "sign propagation did not converge");
            }
    }

    long value(const Root& r, const Root& s) const {
        auto it = n_.find({r, s});
        require(it != n_.end(), errc::internal_error, "missing structure constant");
        return static_cast<long>(it->second.get_num().get_si());
    }

private:
    const Rank2System& sys_;
    std::vector<Root> all_;
    std::map<std::pair<Root, Root>, mpq_class> n_;

    bool known(const Root& r, const Root& s) const { return n_.count({r, s}) > 0; }

    // Setting one value fills in its antisymmetric and negated companions.
    bool set(const Root& r, const Root& s, const mpq_class& v) {
        if (known(r, s)) {
            require(n_.at({r, s}) == v, errc::internal_error, "inconsistent sign propagation");
            return false;
        }
        n_[{r, s}] = v;
        n_[{s, r}] = -v;
        n_[{root_neg(r), root_neg(s)}] = -v;
        n_[{root_neg(s), root_neg(r)}] = v;
        return true;
    }

    void seed_extraspecial() {
        const auto& pos = sys_.positive;
        for (std::size_t gi = 0; gi < pos.size(); ++gi) {
            Root g = pos[gi];
            for (std::size_t ri = 0; ri < pos.size(); ++ri) {
                Root r = pos[ri];
                Root s{g[0] - r[0], g[1] - r[1]};
                bool s_positive = false;
                for (auto& q : pos) s_positive = s_positive || q == s;
                if (!s_positive) continue;
                // First (r,s) with r minimal in the order is the extraspecial pair.
                long chain = 0;
                Root t = s;
                while (true) {
                    t = {t[0] - r[0], t[1] - r[1]};
                    if (!sys_.is_root(t)) break;
                    ++chain;
                }
                set(r, s, mpq_class(chain + 1));
                break;
            }
        }
    }

    void propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            // Zero-sum proportionality: r+s+t=0 gives N(r,s)/(t,t) = N(s,t)/(r,r).
            for (auto& r : all_)
                for (auto& s : all_) {
                    Root t = root_neg(root_add(r, s));
                    if (root_add(r, s) == Root{0, 0} || !sys_.is_root(t)) continue;
                    mpq_class lr(sys_.inner(r, r)), ls(sys_.inner(s, s)), lt(sys_.inner(t, t));
                    if (known(r, s) && !known(s, t))
                        changed |= set(s, t, n_.at({r, s}) * lr / lt);
                    if (known(r, s) && !known(t, r))
                        changed |= set(t, r, n_.at({r, s}) * ls / lt);
                }
            // Jacobi on root vectors: when two of the three products are known
            // and a cofactor is nonzero, the third follows.
            for (auto& a : all_)
                for (auto& b : all_)
                    for (auto& c : all_) {
                        Root ab = root_add(a, b), bc = root_add(b, c), ca = root_add(c, a);
                        if (ab == Root{0, 0} || bc == Root{0, 0} || ca == Root{0, 0}) continue;
                        Root abc = root_add(ab, c);
                        if (!sys_.is_root(abc)) continue;
                        struct Term {
                            Root x, y, sum;
                            bool live;
                        };
                        Term terms[3] = {{a, b, ab, sys_.is_root(ab)},
                                         {c, a, ca, sys_.is_root(ca)},
                                         {b, c, bc, sys_.is_root(bc)}};
                        mpq_class acc(0);
                        int unknown = -1;
                        bool stuck = false;
                        for (int i = 0; i < 3 && !stuck; ++i) {
                            if (!terms[i].live) continue;
                            // Term i contributes N(x,y) * N(x+y, z), z the cyclic third.
                            Root z = (i == 0 ? c : (i == 1 ? b : a));
                            bool k1 = known(terms[i].x, terms[i].y);
                            bool k2 = known(terms[i].sum, z);
                            if (k1 && k2) {
                                acc += n_.at({terms[i].x, terms[i].y}) * n_.at({terms[i].sum, z});
                            } else {
                                if (unknown >= 0) stuck = true;
                                unknown = i;
                            }
                        }
                        if (stuck || unknown < 0) continue;
                        Root z = (unknown == 0 ? c : (unknown == 1 ? b : a));
                        const Term& u = terms[unknown];
                        bool k1 = known(u.x, u.y), k2 = known(u.sum, z);
                        if (k1 && !k2) {
                            mpq_class f = n_.at({u.x, u.y});
                            if (f != 0) changed |= set(u.sum, z, -acc / f);
                        } else if (!k1 && k2) {
                            mpq_class f = n_.at({u.sum, z});
                            if (f != 0) changed |= set(u.x, u.y, -acc / f);
                        }
                    }
        }
    }
};

}  // namespace detail

// Chevalley-basis Lie algebra of the rank-2 type: basis e_b (positive roots
// in (height, lex) order), h1, h2, f_b, with integer structure constants
// reduced into the target field.
template <class F>
Algebra<F> chevalley_rank2(F f, rank2_type type) {
    detail::Rank2System sys = detail::rank2_system(type);
    detail::ChevalleyConstants N(sys);
    const auto& pos = sys.positive;
    std::size_t np = pos.size();
    std::size_t dim = 2 * np + 2;

    auto root_tag = [&](std::size_t idx) -> detail::Root {
        if (idx < np) return pos[idx];
        return detail::root_neg(pos[idx - np - 2]);
    };
    auto is_cartan = [&](std::size_t idx) { return idx >= np && idx < np + 2; };
    auto index_of = [&](const detail::Root& r) -> std::size_t {
        for (std::size_t i = 0; i < np; ++i) {
            if (pos[i] == r) return i;
            if (detail::root_neg(pos[i]) == r) return np + 2 + i;
        }
        fail(errc::internal_error, "root lookup failed");
    };

    Algebra<F> L(f);
    L.dim = dim;
    auto rname = [](const detail::Root& r) {
        return "(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + ")";
    };
    for (std::size_t i = 0; i < np; ++i) L.basis_names.push_back("e" + rname(pos[i]));
    L.basis_names.push_back("h1");
    L.basis_names.push_back("h2");
    for (std::size_t i = 0; i < np; ++i) L.basis_names.push_back("f" + rname(pos[i]));

    detail::Root simple[2] = {{1, 0}, {0, 1}};
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            SparseVec<F> terms;
            if (is_cartan(i) && is_cartan(j)) {
                // Cartan subalgebra is abelian.
            } else if (is_cartan(i) || is_cartan(j)) {
                std::size_t h = is_cartan(i) ? i : j;
                std::size_t x = is_cartan(i) ? j : i;
                detail::Root b = root_tag(x);
                long c = 2 * sys.inner(b, simple[h - np]) / sys.inner(simple[h - np], simple[h - np]);
                if (!is_cartan(i)) c = -c;  // stored pair is (x, h)
                if (c) terms.emplace_back(x, f.from_long(c));
            } else {
                detail::Root r = root_tag(i), s = root_tag(j);
                detail::Root sum = detail::root_add(r, s);
                if (sum == detail::Root{0, 0}) {
                    // [e_r, f_r]: coroot in the h basis.
                    long rr = sys.inner(r, r);
                    for (int m = 0; m < 2; ++m) {
                        long c = r[m] * sys.inner(simple[m], simple[m]) / rr;
                        if (c) terms.emplace_back(np + m, f.from_long(c));
                    }
                } else if (sys.is_root(sum)) {
                    typename F::elem cf = f.from_long(N.value(r, s));
                    if (!f.is_zero(cf)) terms.emplace_back(index_of(sum), cf);
                }
            }
            if (!terms.empty()) L.set_product(i, j, terms);
        }
    L.finalize();
    detail::gate_lie(L, rank2_name(type));
    return L;
}

template <class F>
struct CurrentAlgebra {
    Algebra<F> algebra;
    Algebra<F> l_factor;
    Algebra<F> a_factor;
};

// Current Lie algebra L tensor A with [x@a, y@b] = [x,y]@ab.
template <class F>
CurrentAlgebra<F> current(const Algebra<F>& L, const Algebra<F>& A) {
    require(L.field.spec() == A.field.spec(), errc::field_mismatch,
            "current factors live over different fields");
    require(L.flags.lie, errc::not_lie, "current needs a Lie left factor");
    require(A.flags.assoc_comm, errc::not_assoc_comm,
            "current needs a commutative associative right factor");
    const F& f = L.field;
    std::size_t lm = L.dim, am = A.dim;
    Algebra<F> T(f);
    T.dim = lm * am;
    for (std::size_t i = 0; i < lm; ++i)
        for (std::size_t j = 0; j < am; ++j)
            T.basis_names.push_back(L.basis_names[i] + "@" + A.basis_names[j]);
    for (std::size_t i = 0; i < lm; ++i)
        for (std::size_t j = 0; j < am; ++j) {
            std::size_t u = i * am + j;
            for (std::size_t k = i; k < lm; ++k)
                for (std::size_t l = (k == i ? j + 1 : std::size_t(0)); l < am; ++l) {
                    std::size_t v = k * am + l;
                    if (i == k) continue;  // [x,x] = 0 kills the whole row
                    std::map<std::size_t, typename F::elem> acc;
                    for (auto& [m, c] : L.product(i, k))
                        for (auto& [t, d] : A.product(j, l)) {
                            auto& slot = acc[m * am + t];
                            slot = f.add(slot, f.mul(c, d));
                        }
                    SparseVec<F> terms;
                    for (auto& [w, c] : acc)
                        if (!f.is_zero(c)) terms.emplace_back(w, c);
                    if (!terms.empty()) T.set_product(u, v, terms);
                }
        }
    T.finalize();
    detail::gate_lie(T, "current algebra");
    return {std::move(T), L, A};
}

template <class F>
struct ExtensionSpec {
    Matrix<F> invariant_form;             // symmetric invariant form on L
    Matrix<F> xi;                         // skew cyclic-condition form on A
    std::vector<Matrix<F>> derivations;   // derivation matrices on A
    std::vector<std::string> derivation_names;  // optional; defaults to d0, d1, ...
};

namespace detail {

template <class F>
void check_derivation_of(const Algebra<F>& A, const Matrix<F>& d, const std::string& label) {
    const F& f = A.field;
    require(d.rows == A.dim && d.cols == A.dim, errc::spec_violation,
            label + " has the wrong shape");
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j) {
            std::vector<typename F::elem> prod(A.dim, f.zero());
            for (auto& [k, c] : A.product(i, j)) prod[k] = c;
            auto lhs = d.mul_vec(prod);
            auto r1 = A.multiply(d.mul_vec(A.basis_vector(i)), A.basis_vector(j));
            auto r2 = A.multiply(A.basis_vector(i), d.mul_vec(A.basis_vector(j)));
            for (std::size_t k = 0; k < A.dim; ++k)
                require(f.eq(lhs[k], f.add(r1[k], r2[k])), errc::spec_violation,
                        label + " is not a derivation of the coefficient algebra");
        }
}

// Re-expresses each pairwise commutator of the given maps in their span.
template <class F>
std::vector<std::vector<typename F::elem>> closure_coefficients(
    F f, const std::vector<Matrix<F>>& mats, const char* what) {
    std::size_t k = mats.size();
    if (k == 0) return {};
    std::size_t n = mats[0].rows;
    Matrix<F> A(f, n * n, k);
    for (std::size_t c = 0; c < k; ++c) {
        auto flat = map_to_flat(mats[c]);
        for (std::size_t r = 0; r < n * n; ++r) A.at(r, c) = flat[r];
    }
    std::vector<std::vector<typename F::elem>> rhs;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            Matrix<F> ab = mats[a].mul(mats[b]);
            Matrix<F> ba = mats[b].mul(mats[a]);
            Matrix<F> comm(f, n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) comm.at(r, c) = f.sub(ab.at(r, c), ba.at(r, c));
            rhs.push_back(map_to_flat(comm));
        }
    auto sols = solve_multi(A, rhs);
    std::vector<std::vector<typename F::elem>> out;
    for (auto& s : sols) {
        require(s.has_value(), errc::spec_violation,
                std::string(what) + " is not closed under commutator");
        out.push_back(*s);
    }
    return out;
}

}  // namespace detail

// Verifies every ExtensionSpec invariant; SpecViolation names the failed one.
// The compatibility condition xi(d(a),b) + xi(a,d(b)) = 0 closes the Jacobi
// identity for mixed tensor/derivation triples and is checked with the rest.
template <class F>
void verify_extension_spec(const Algebra<F>& L, const Algebra<F>& A, const ExtensionSpec<F>& spec) {
    const F& f = L.field;
    const Matrix<F>& B = spec.invariant_form;
    const Matrix<F>& X = spec.xi;
    require(B.rows == L.dim && B.cols == L.dim, errc::spec_violation,
            "invariant form has the wrong shape");
    require(X.rows == A.dim && X.cols == A.dim, errc::spec_violation,
            "xi has the wrong shape");
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = i; j < L.dim; ++j)
            require(f.eq(B.at(i, j), B.at(j, i)), errc::spec_violation,
                    "invariant form is not symmetric");
    auto bform = [&](const std::vector<typename F::elem>& v, std::size_t k) {
        typename F::elem s = f.zero();
        for (std::size_t m = 0; m < L.dim; ++m)
            if (!f.is_zero(v[m])) s = f.add(s, f.mul(v[m], B.at(m, k)));
        return s;
    };
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = 0; j < L.dim; ++j)
            for (std::size_t k = 0; k < L.dim; ++k) {
                std::vector<typename F::elem> bij(L.dim, f.zero()), bjk(L.dim, f.zero());
                for (auto& [m, c] : L.product(i, j)) bij[m] = c;
                for (auto& [m, c] : L.product(j, k)) bjk[m] = c;
                typename F::elem lhs = bform(bij, k);
                typename F::elem rhs = f.zero();
                for (std::size_t m = 0; m < L.dim; ++m)
                    if (!f.is_zero(bjk[m])) rhs = f.add(rhs, f.mul(B.at(i, m), bjk[m]));
                require(f.eq(lhs, rhs), errc::spec_violation, "form on L is not invariant");
            }
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = i; j < A.dim; ++j)
            require(f.eq(X.at(i, j), f.neg(X.at(j, i))), errc::spec_violation,
                    "xi is not skew-symmetric");
    auto xform = [&](const std::vector<typename F::elem>& v, std::size_t k) {
        typename F::elem s = f.zero();
        for (std::size_t m = 0; m < A.dim; ++m)
            if (!f.is_zero(v[m])) s = f.add(s, f.mul(v[m], X.at(m, k)));
        return s;
    };
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j)
            for (std::size_t k = 0; k < A.dim; ++k) {
                std::vector<typename F::elem> ij(A.dim, f.zero()), ki(A.dim, f.zero()),
                    jk(A.dim, f.zero());
                for (auto& [m, c] : A.product(i, j)) ij[m] = c;
                for (auto& [m, c] : A.product(k, i)) ki[m] = c;
                for (auto& [m, c] : A.product(j, k)) jk[m] = c;
                typename F::elem s = f.add(f.add(xform(ij, k), xform(ki, j)), xform(jk, i));
                require(f.is_zero(s), errc::spec_violation,
                        "xi fails the cyclic sum condition");
            }
    for (std::size_t t = 0; t < spec.derivations.size(); ++t)
        detail::check_derivation_of(A, spec.derivations[t], "derivation " + std::to_string(t));
    for (auto& d : spec.derivations)
        for (std::size_t i = 0; i < A.dim; ++i) {
            auto di = d.mul_vec(A.basis_vector(i));
            for (std::size_t j = 0; j < A.dim; ++j) {
                auto dj = d.mul_vec(A.basis_vector(j));
                typename F::elem s = f.add(xform(di, j), f.neg(xform(dj, i)));
                // xi(d(a),b) + xi(a,d(b)); the second summand uses skewness.
                require(f.is_zero(s), errc::spec_violation,
                        "xi is not annihilated by the derivation set");
            }
        }
}

namespace detail {

template <class F>
Algebra<F> build_extension(const Algebra<F>& L, const Algebra<F>& A,
                           const Matrix<F>* invariant_form, const Matrix<F>* xi, bool with_z,
                           const std::vector<Matrix<F>>& ders,
                           const std::vector<std::string>& der_names) {
    const F& f = L.field;
    std::size_t lm = L.dim, am = A.dim, nd = ders.size();
    std::size_t tensor = lm * am;
    std::size_t z_at = tensor;  // valid only when with_z
    std::size_t d_at = tensor + (with_z ? 1 : 0);
    auto closure = closure_coefficients(f, ders, "the derivation set");

    Algebra<F> E(f);
    E.dim = d_at + nd;
    for (std::size_t i = 0; i < lm; ++i)
        for (std::size_t j = 0; j < am; ++j)
            E.basis_names.push_back(L.basis_names[i] + "@" + A.basis_names[j]);
    if (with_z) E.basis_names.push_back("z");
    for (std::size_t t = 0; t < nd; ++t)
        E.basis_names.push_back(t < der_names.size() ? der_names[t] : "d" + std::to_string(t));

    // Tensor-tensor block, with the optional central term.
    for (std::size_t i = 0; i < lm; ++i)
        for (std::size_t j = 0; j < am; ++j) {
            std::size_t u = i * am + j;
            for (std::size_t k = i; k < lm; ++k)
                for (std::size_t l = (k == i ? j + 1 : std::size_t(0)); l < am; ++l) {
                    std::size_t v = k * am + l;
                    std::map<std::size_t, typename F::elem> acc;
                    if (i != k)
                        for (auto& [m, c] : L.product(i, k))
                            for (auto& [t, d] : A.product(j, l)) {
                                auto& slot = acc[m * am + t];
                                slot = f.add(slot, f.mul(c, d));
                            }
                    if (with_z && invariant_form && xi) {
                        typename F::elem c =
                            f.mul(invariant_form->at(i, k), xi->at(j, l));
                        if (!f.is_zero(c)) {
                            auto& slot = acc[z_at];
                            slot = f.add(slot, c);
                        }
                    }
                    SparseVec<F> terms;
                    for (auto& [w, c] : acc)
                        if (!f.is_zero(c)) terms.emplace_back(w, c);
                    if (!terms.empty()) E.set_product(u, v, terms);
                }
        }
    // Tensor-derivation block: [d, x@a] = x@d(a), so the stored pair with the
    // tensor slot first carries the negative.  The opposite orientation breaks
    // the Jacobi identity on (x@a, d, d') triples once D is nonabelian.
    for (std::size_t t = 0; t < nd; ++t) {
        for (std::size_t i = 0; i < lm; ++i)
            for (std::size_t j = 0; j < am; ++j) {
                auto da = ders[t].mul_vec(A.basis_vector(j));
                SparseVec<F> terms;
                for (std::size_t s = 0; s < am; ++s)
                    if (!f.is_zero(da[s])) terms.emplace_back(i * am + s, f.neg(da[s]));
                if (!terms.empty()) E.set_product(i * am + j, d_at + t, terms);
            }
    }
    // Derivation-derivation block via the closure coefficients.
    std::size_t idx = 0;
    for (std::size_t a = 0; a < nd; ++a)
        for (std::size_t b = a + 1; b < nd; ++b, ++idx) {
            SparseVec<F> terms;
            for (std::size_t m = 0; m < nd; ++m)
                if (!f.is_zero(closure[idx][m])) terms.emplace_back(d_at + m, closure[idx][m]);
            if (!terms.empty()) E.set_product(d_at + a, d_at + b, terms);
        }
    E.finalize();
    gate_lie(E, "extension algebra");
    return E;
}

}  // namespace detail

// (L tensor A) + D with [x@a, d] = x@d(a); D must consist of derivations of A
// closed under commutator.
template <class F>
Algebra<F> derivation_extension(const CurrentAlgebra<F>& LA, const std::vector<Matrix<F>>& ders,
                                const std::vector<std::string>& der_names = {}) {
    for (std::size_t t = 0; t < ders.size(); ++t)
        detail::check_derivation_of(LA.a_factor, ders[t], "derivation " + std::to_string(t));
    const Matrix<F>* none = nullptr;
    return detail::build_extension(LA.l_factor, LA.a_factor, none, none, false, ders, der_names);
}

// (L tensor A) + Kz + D with the central term <x,y> xi(a,b) z.
template <class F>
Algebra<F> central_derivation_extension(const Algebra<F>& L, const Algebra<F>& A,
                                        const ExtensionSpec<F>& spec) {
    require(L.field.spec() == A.field.spec(), errc::field_mismatch,
            "extension factors live over different fields");
    require(L.flags.lie, errc::not_lie, "extension needs a Lie algebra");
    require(A.flags.assoc_comm, errc::not_assoc_comm,
            "extension needs a commutative associative coefficient algebra");
    verify_extension_spec(L, A, spec);
    return detail::build_extension(L, A, &spec.invariant_form, &spec.xi, true, spec.derivations,
                                   spec.derivation_names);
}

}  // namespace cocycle
