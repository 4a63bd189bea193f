#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cocycle/error.hpp"
#include "cocycle/field.hpp"

namespace cocycle {

template <class F>
using SparseVec = std::vector<std::pair<std::size_t, typename F::elem>>;

// Cap on stored coefficients fed into a single linear system.  Guards against
// silently grinding on inputs far beyond desk scale; callers see ResourceError.
inline std::uint64_t& resource_cap() {
    static std::uint64_t cap = 2'000'000;
    return cap;
}

template <class F>
struct Matrix {
    F field;
    std::size_t rows = 0, cols = 0;
    std::vector<typename F::elem> a;  // row-major, dense

    Matrix(F f, std::size_t r, std::size_t c)
        : field(f), rows(r), cols(c), a(r * c, f.zero()) {}

    typename F::elem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const typename F::elem& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static Matrix identity(F f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    SparseVec<F> row_sparse(std::size_t r) const {
        SparseVec<F> out;
        for (std::size_t c = 0; c < cols; ++c)
            if (!field.is_zero(at(r, c))) out.emplace_back(c, at(r, c));
        return out;
    }

    std::vector<typename F::elem> mul_vec(const std::vector<typename F::elem>& x) const {
        require(x.size() == cols, errc::dimension_mismatch, "matrix-vector size mismatch");
        std::vector<typename F::elem> y(rows, field.zero());
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (!field.is_zero(at(r, c)) && !field.is_zero(x[c]))
                    y[r] = field.add(y[r], field.mul(at(r, c), x[c]));
        return y;
    }

    Matrix mul(const Matrix& b) const {
        require(cols == b.rows, errc::dimension_mismatch, "matrix product size mismatch");
        Matrix out(field, rows, b.cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t k = 0; k < cols; ++k) {
                if (field.is_zero(at(r, k))) continue;
                for (std::size_t c = 0; c < b.cols; ++c)
                    out.at(r, c) = field.add(out.at(r, c), field.mul(at(r, k), b.at(k, c)));
            }
        return out;
    }

    Matrix transpose() const {
        Matrix out(field, cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) out.at(c, r) = at(r, c);
        return out;
    }

    Matrix add(const Matrix& b) const {
        require(rows == b.rows && cols == b.cols, errc::dimension_mismatch, "matrix sum");
        Matrix out(field, rows, cols);
        for (std::size_t i = 0; i < a.size(); ++i) out.a[i] = field.add(a[i], b.a[i]);
        return out;
    }

    bool eq(const Matrix& b) const {
        if (rows != b.rows || cols != b.cols) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!field.eq(a[i], b.a[i])) return false;
        return true;
    }
};

// Incremental row-echelon basis.  Stored rows are kept deterministic, so the
// derived reduced form, pivot set and nullspace basis are the canonical ones
// of the inserted row space regardless of insertion order.
template <class F>
class EchelonBasis;

// Rational rows are held as integer vectors with content 1 and positive lead;
// elimination is fraction-free, division by leads happens only on extraction.
template <>
class EchelonBasis<QField> {
public:
    EchelonBasis(QField f, std::size_t cols, std::uint64_t entry_cap = 0)
        : field_(f), cols_(cols), cap_(entry_cap), pivot_of_col_(cols, -1), buf_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    bool insert(const SparseVec<QField>& row) {
        bump_inserted(row.size());
        std::size_t start = scatter(row);
        return reduce_buf(start, true);
    }

    // True when row already lies in the span of the inserted rows.
    bool member(const SparseVec<QField>& row) {
        std::size_t start = scatter(row);
        return !reduce_buf(start, false);
    }

    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < cols_; ++c)
            if (pivot_of_col_[c] >= 0) out.push_back(c);
        return out;
    }

    std::vector<std::size_t> free_cols() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < cols_; ++c)
            if (pivot_of_col_[c] < 0) out.push_back(c);
        return out;
    }

    // Canonical nullspace basis: one vector per free column, ascending, with a
    // leading 1 in that free coordinate.
    std::vector<std::vector<mpq_class>> nullspace_basis() const {
        std::vector<std::pair<std::size_t, std::size_t>> leads = sorted_leads();
        std::vector<std::vector<mpq_class>> out;
        for (std::size_t f : free_cols()) {
            std::vector<mpq_class> v(cols_, mpq_class(0));
            v[f] = 1;
            for (auto it = leads.rbegin(); it != leads.rend(); ++it) {
                if (it->first >= f) continue;
                const Row& r = rows_[it->second];
                mpq_class s(0);
                for (std::size_t k = 1; k < r.e.size(); ++k)
                    if (sgn(v[r.e[k].first]) != 0) s += mpq_class(r.e[k].second) * v[r.e[k].first];
                v[it->first] = -s / mpq_class(r.e[0].second);
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    // Fully reduced monic rows, sorted by pivot column.
    std::vector<std::vector<mpq_class>> rref_rows() const {
        std::vector<std::pair<std::size_t, std::size_t>> leads = sorted_leads();
        std::vector<std::vector<mpq_class>> out;
        for (auto& [lead, idx] : leads) {
            std::vector<mpq_class> v(cols_, mpq_class(0));
            mpq_class lv(rows_[idx].e[0].second);
            for (auto& [c, val] : rows_[idx].e) v[c] = mpq_class(val) / lv;
            out.push_back(std::move(v));
        }
        for (std::size_t i = out.size(); i-- > 1;) {
            std::size_t lead = leads[i].first;
            for (std::size_t j = 0; j < i; ++j) {
                if (sgn(out[j][lead]) == 0) continue;
                mpq_class c = out[j][lead];
                for (std::size_t k = lead; k < cols_; ++k)
                    if (sgn(out[i][k]) != 0) out[j][k] -= c * out[i][k];
            }
        }
        return out;
    }

private:
    struct Row {
        std::vector<std::pair<std::size_t, mpz_class>> e;  // sorted; e[0] is the lead
    };

    QField field_;
    std::size_t cols_;
    std::uint64_t cap_ = 0, inserted_ = 0;
    std::vector<Row> rows_;
    std::vector<int> pivot_of_col_;
    std::vector<mpz_class> buf_;

    void bump_inserted(std::size_t n) {
        inserted_ += n;
        if (cap_ && inserted_ > cap_)
            fail(errc::resource_error,
                 "linear system exceeds the configured coefficient cap of " +
                     std::to_string(cap_));
    }

    std::vector<std::pair<std::size_t, std::size_t>> sorted_leads() const {
        std::vector<std::pair<std::size_t, std::size_t>> leads;
        for (std::size_t i = 0; i < rows_.size(); ++i) leads.emplace_back(rows_[i].e[0].first, i);
        std::sort(leads.begin(), leads.end());
        return leads;
    }

    // Clears denominators; returns the first written column (or cols_).
    std::size_t scatter(const SparseVec<QField>& row) {
        mpz_class l(1);
        for (auto& [c, v] : row)
            if (sgn(v) != 0) l = lcm(l, v.get_den());
        std::size_t start = cols_;
        for (auto& [c, v] : row) {
            require(c < cols_, errc::dimension_mismatch, "row entry out of range");
            if (sgn(v) == 0) continue;
            buf_[c] += v.get_num() * (l / v.get_den());
            start = std::min(start, c);
        }
        return start;
    }

    bool reduce_buf(std::size_t start, bool store) {
        for (std::size_t c = start; c < cols_; ++c) {
            if (sgn(buf_[c]) == 0) continue;
            int r = pivot_of_col_[c];
            if (r < 0) {
                if (!store) {
                    clear_from(c);
                    return true;  // nonzero residual
                }
                extract_row(c);
                return true;
            }
            const Row& piv = rows_[r];
            mpz_class g = gcd(piv.e[0].second, buf_[c]);
            mpz_class mb = piv.e[0].second / g;
            mpz_class mr = buf_[c] / g;
            if (mb != 1)
                for (std::size_t k = c + 1; k < cols_; ++k)
                    if (sgn(buf_[k]) != 0) buf_[k] *= mb;
            for (std::size_t k = 1; k < piv.e.size(); ++k) buf_[piv.e[k].first] -= mr * piv.e[k].second;
            buf_[c] = 0;
            strip_content(c + 1);
        }
        return false;  // reduced to zero
    }

    void clear_from(std::size_t c) {
        for (std::size_t k = c; k < cols_; ++k)
            if (sgn(buf_[k]) != 0) buf_[k] = 0;
    }

    void strip_content(std::size_t from) {
        mpz_class g(0);
        for (std::size_t k = from; k < cols_; ++k) {
            if (sgn(buf_[k]) == 0) continue;
            g = gcd(g, buf_[k]);
            if (g == 1) return;
        }
        if (g > 1)
            for (std::size_t k = from; k < cols_; ++k)
                if (sgn(buf_[k]) != 0) mpz_divexact(buf_[k].get_mpz_t(), buf_[k].get_mpz_t(),
                                                    g.get_mpz_t());
    }

    void extract_row(std::size_t lead) {
        Row nr;
        for (std::size_t k = lead; k < cols_; ++k) {
            if (sgn(buf_[k]) == 0) continue;
            nr.e.emplace_back(k, buf_[k]);
            buf_[k] = 0;
        }
        mpz_class g(0);
        for (auto& [c, v] : nr.e) g = gcd(g, v);
        if (sgn(nr.e[0].second) < 0) g = -g;
        if (g != 1)
            for (auto& [c, v] : nr.e) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        pivot_of_col_[lead] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(nr));
    }
};

// Prime-field rows are monic; the work row accumulates unreduced 64-bit sums
// and is reduced lazily, which keeps small moduli nearly division-free.
template <>
class EchelonBasis<FpField> {
public:
    EchelonBasis(FpField f, std::size_t cols, std::uint64_t entry_cap = 0)
        : field_(f), p_(f.modulus()), cols_(cols), cap_(entry_cap),
          pivot_of_col_(cols, -1), buf_(cols, 0) {
        // Each elimination step adds at most (p-1)^2 to a work entry; overflow
        // is impossible while step counts stay under budget_.
        std::uint64_t pm1sq = (p_ - 1) * (p_ - 1);
        lazy_ = p_ < (1ULL << 24);
        budget_ = lazy_ ? ((1ULL << 63) - p_) / pm1sq : 0;
    }

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    bool insert(const SparseVec<FpField>& row) {
        bump_inserted(row.size());
        std::size_t start = scatter(row);
        return reduce_buf(start, true);
    }

    bool member(const SparseVec<FpField>& row) {
        std::size_t start = scatter(row);
        return !reduce_buf(start, false);
    }

    std::vector<std::size_t> pivots() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < cols_; ++c)
            if (pivot_of_col_[c] >= 0) out.push_back(c);
        return out;
    }

    std::vector<std::size_t> free_cols() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < cols_; ++c)
            if (pivot_of_col_[c] < 0) out.push_back(c);
        return out;
    }

    std::vector<std::vector<std::uint64_t>> nullspace_basis() const {
        std::vector<std::pair<std::size_t, std::size_t>> leads = sorted_leads();
        std::vector<std::vector<std::uint64_t>> out;
        for (std::size_t f : free_cols()) {
            std::vector<std::uint64_t> v(cols_, 0);
            v[f] = field_.one();
            for (auto it = leads.rbegin(); it != leads.rend(); ++it) {
                if (it->first >= f) continue;
                const Row& r = rows_[it->second];
                std::uint64_t s = 0;
                for (std::size_t k = 1; k < r.e.size(); ++k)
                    s = field_.add(s, field_.mul(r.e[k].second, v[r.e[k].first]));
                v[it->first] = field_.neg(s);  // rows are monic
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    std::vector<std::vector<std::uint64_t>> rref_rows() const {
        std::vector<std::pair<std::size_t, std::size_t>> leads = sorted_leads();
        std::vector<std::vector<std::uint64_t>> out;
        for (auto& [lead, idx] : leads) {
            std::vector<std::uint64_t> v(cols_, 0);
            for (auto& [c, val] : rows_[idx].e) v[c] = val;
            out.push_back(std::move(v));
        }
        for (std::size_t i = out.size(); i-- > 1;) {
            std::size_t lead = leads[i].first;
            for (std::size_t j = 0; j < i; ++j) {
                if (out[j][lead] == 0) continue;
                std::uint64_t c = out[j][lead];
                for (std::size_t k = lead; k < cols_; ++k)
                    if (out[i][k] != 0) out[j][k] = field_.sub(out[j][k], field_.mul(c, out[i][k]));
            }
        }
        return out;
    }

private:
    struct Row {
        std::vector<std::pair<std::uint32_t, std::uint64_t>> e;  // sorted; lead value is 1
    };

    FpField field_;
    std::uint64_t p_;
    std::size_t cols_;
    std::uint64_t cap_ = 0, inserted_ = 0;
    bool lazy_ = true;
    std::uint64_t budget_ = 0, steps_ = 0;
    std::vector<Row> rows_;
    std::vector<int> pivot_of_col_;
    std::vector<std::uint64_t> buf_;

    void bump_inserted(std::size_t n) {
        inserted_ += n;
        if (cap_ && inserted_ > cap_)
            fail(errc::resource_error,
                 "linear system exceeds the configured coefficient cap of " +
                     std::to_string(cap_));
    }

    std::vector<std::pair<std::size_t, std::size_t>> sorted_leads() const {
        std::vector<std::pair<std::size_t, std::size_t>> leads;
        for (std::size_t i = 0; i < rows_.size(); ++i) leads.emplace_back(rows_[i].e[0].first, i);
        std::sort(leads.begin(), leads.end());
        return leads;
    }

    std::size_t scatter(const SparseVec<FpField>& row) {
        std::size_t start = cols_;
        steps_ = 0;
        for (auto& [c, v] : row) {
            require(c < cols_, errc::dimension_mismatch, "row entry out of range");
            std::uint64_t r = v % p_;
            if (!r) continue;
            buf_[c] += r;
            start = std::min(start, c);
        }
        return start;
    }

    bool reduce_buf(std::size_t start, bool store) {
        for (std::size_t c = start; c < cols_; ++c) {
            if (buf_[c] == 0) continue;
            std::uint64_t x = buf_[c] % p_;
            buf_[c] = 0;
            if (!x) continue;
            int r = pivot_of_col_[c];
            if (r < 0) {
                if (!store) {
                    std::fill(buf_.begin() + c, buf_.end(), 0);
                    return true;
                }
                extract_row(c, x);
                return true;
            }
            const Row& piv = rows_[r];
            std::uint64_t mult = p_ - x;
            if (lazy_) {
                for (std::size_t k = 1; k < piv.e.size(); ++k)
                    buf_[piv.e[k].first] += mult * piv.e[k].second;
                if (++steps_ >= budget_) {
                    for (std::size_t k = c + 1; k < cols_; ++k) buf_[k] %= p_;
                    steps_ = 0;
                }
            } else {
                for (std::size_t k = 1; k < piv.e.size(); ++k) {
                    std::uint64_t& b = buf_[piv.e[k].first];
                    b = (b % p_ + field_.mul(mult, piv.e[k].second)) % p_;
                }
            }
        }
        return false;
    }

    void extract_row(std::size_t lead, std::uint64_t lead_val) {
        Row nr;
        std::uint64_t s = field_.inv(lead_val);
        nr.e.emplace_back(static_cast<std::uint32_t>(lead), 1);
        for (std::size_t k = lead + 1; k < cols_; ++k) {
            if (buf_[k] == 0) continue;
            std::uint64_t v = buf_[k] % p_;
            buf_[k] = 0;
            if (v) nr.e.emplace_back(static_cast<std::uint32_t>(k), field_.mul(v, s));
        }
        pivot_of_col_[lead] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(nr));
    }
};

template <class F>
struct RrefResult {
    std::size_t rank;
    std::vector<std::size_t> pivots;
    Matrix<F> reduced;
};

// Reduced row-echelon form with the canonical pivot choice: columns scanned
// left to right, the first row with a nonzero entry wins.
template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
    EchelonBasis<F> eb(m.field, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r) eb.insert(m.row_sparse(r));
    RrefResult<F> out{eb.rank(), eb.pivots(), Matrix<F>(m.field, m.rows, m.cols)};
    auto rows = eb.rref_rows();
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < m.cols; ++c) out.reduced.at(r, c) = rows[r][c];
    return out;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    EchelonBasis<F> eb(m.field, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r) eb.insert(m.row_sparse(r));
    return eb.rank();
}

template <class F>
std::vector<std::vector<typename F::elem>> nullspace(const Matrix<F>& m) {
    EchelonBasis<F> eb(m.field, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r) eb.insert(m.row_sparse(r));
    return eb.nullspace_basis();
}

enum class SpanRel { equal, a_contains_b, b_contains_a, incomparable };

inline const char* span_rel_name(SpanRel r) {
    switch (r) {
        case SpanRel::equal: return "Equal";
        case SpanRel::a_contains_b: return "AcontainsB";
        case SpanRel::b_contains_a: return "BcontainsA";
        case SpanRel::incomparable: return "Incomparable";
    }
    return "?";
}

template <class F>
SparseVec<F> to_sparse(F f, const std::vector<typename F::elem>& v) {
    SparseVec<F> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!f.is_zero(v[i])) out.emplace_back(i, v[i]);
    return out;
}

template <class F>
SpanRel span_compare(F field, const std::vector<std::vector<typename F::elem>>& a,
                     const std::vector<std::vector<typename F::elem>>& b) {
    std::size_t n = 0;
    bool have = false;
    for (auto* set : {&a, &b})
        for (auto& v : *set) {
            if (!have) {
                n = v.size();
                have = true;
            }
            require(v.size() == n, errc::dimension_mismatch, "span vectors of unequal length");
        }
    EchelonBasis<F> ea(field, n), eb(field, n), eab(field, n);
    for (auto& v : a) {
        auto s = to_sparse(field, v);
        ea.insert(s);
        eab.insert(s);
    }
    for (auto& v : b) {
        auto s = to_sparse(field, v);
        eb.insert(s);
        eab.insert(s);
    }
    std::size_t ra = ea.rank(), rb = eb.rank(), rab = eab.rank();
    if (ra == rab && rb == rab) return SpanRel::equal;
    if (ra == rab) return SpanRel::a_contains_b;
    if (rb == rab) return SpanRel::b_contains_a;
    return SpanRel::incomparable;
}

// Solves A x = b; free coordinates are set to zero.  Returns nothing when the
// system is inconsistent.
template <class F>
std::optional<std::vector<typename F::elem>> solve(const Matrix<F>& A,
                                                   const std::vector<typename F::elem>& b) {
    require(b.size() == A.rows, errc::dimension_mismatch, "solve size mismatch");
    Matrix<F> aug(A.field, A.rows, A.cols + 1);
    for (std::size_t r = 0; r < A.rows; ++r) {
        for (std::size_t c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = b[r];
    }
    RrefResult<F> rr = rref(aug);
    for (std::size_t p : rr.pivots)
        if (p == A.cols) return std::nullopt;
    std::vector<typename F::elem> x(A.cols, A.field.zero());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.reduced.at(i, A.cols);
    return x;
}

}  // namespace cocycle
