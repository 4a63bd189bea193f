#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>

#include "cocycle/field.hpp"
#include "cocycle/matrix.hpp"

using namespace cocycle;

namespace {

template <class Fn>
std::optional<errc> thrown_kind(Fn&& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.kind();
    }
    return std::nullopt;
}

template <class F>
Matrix<F> from_rows(F f, const std::vector<std::vector<long>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix<F> m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f.from_long(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("rational scalar arithmetic") {
    FieldSpec q = FieldSpec::rationals();
    Scalar a = Scalar::rational(mpq_class(1, 2));
    Scalar b = Scalar::rational(mpq_class(1, 3));
    CHECK(scalar_str(scalar_add(a, b)) == "5/6");
    CHECK(scalar_str(scalar_sub(a, b)) == "1/6");
    CHECK(scalar_str(scalar_mul(a, b)) == "1/6");
    CHECK(scalar_str(scalar_neg(a)) == "-1/2");
    CHECK(scalar_str(scalar_inv(b)) == "3");
    CHECK(scalar_str(parse_scalar(q, "-2/4")) == "-1/2");
    CHECK(scalar_str(parse_scalar(q, "7")) == "7");
}

TEST_CASE("prime field scalar arithmetic") {
    FieldSpec f5 = FieldSpec::prime(5);
    Scalar two = parse_scalar(f5, "2");
    Scalar three = parse_scalar(f5, "3");
    CHECK(scalar_str(scalar_add(two, three)) == "0");
    CHECK(scalar_str(scalar_mul(two, three)) == "1");
    CHECK(scalar_str(scalar_inv(two)) == "3");
    CHECK(scalar_str(parse_scalar(f5, "12")) == "2");
    CHECK(scalar_str(parse_scalar(f5, "-1")) == "4");
}

TEST_CASE("scalar error kinds") {
    FieldSpec q = FieldSpec::rationals();
    FieldSpec f5 = FieldSpec::prime(5);
    Scalar zq = parse_scalar(q, "0");
    Scalar z5 = parse_scalar(f5, "0");
    CHECK(thrown_kind([&] { scalar_inv(zq); }) == errc::division_by_zero);
    CHECK(thrown_kind([&] { scalar_inv(z5); }) == errc::division_by_zero);
    CHECK(thrown_kind([&] { scalar_add(zq, z5); }) == errc::field_mismatch);
    CHECK(thrown_kind([&] { parse_scalar(q, "1/0"); }) == errc::parse_error);
    CHECK(thrown_kind([&] { parse_scalar(q, "x"); }) == errc::parse_error);
    CHECK(thrown_kind([&] { parse_scalar(f5, "2.5"); }) == errc::parse_error);
}

TEST_CASE("field spec validation") {
    CHECK(thrown_kind([] { FieldSpec::prime(4).validate(false); }) == errc::invalid_characteristic);
    CHECK(thrown_kind([] { FieldSpec::prime(2).validate(true); }) == errc::invalid_characteristic);
    CHECK(thrown_kind([] { FieldSpec::prime(3).validate(false); }) == errc::invalid_characteristic);
    CHECK_NOTHROW(FieldSpec::prime(3).validate(true));
    CHECK_NOTHROW(FieldSpec::prime(5).validate(false));
    CHECK_NOTHROW(FieldSpec::rationals().validate(false));
    CHECK(FieldSpec::prime(7).str() == "Fp:7");
    CHECK(FieldSpec::rationals().str() == "Q");
}

TEST_CASE("rref worked examples over Q") {
    QField f;
    auto id2 = Matrix<QField>::identity(f, 2);
    auto r = rref(id2);
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r.reduced.eq(id2));

    Matrix<QField> z(f, 3, 4);
    auto rz = rref(z);
    CHECK(rz.rank == 0);
    CHECK(rz.pivots.empty());

    auto dep = from_rows(f, {{1, 2}, {2, 4}});
    auto rd = rref(dep);
    CHECK(rd.rank == 1);
    CHECK(rd.pivots == std::vector<std::size_t>{0});
    CHECK(rd.reduced.at(0, 0) == 1);
    CHECK(rd.reduced.at(0, 1) == 2);
    CHECK(rd.reduced.at(1, 0) == 0);
    CHECK(rd.reduced.at(1, 1) == 0);
}

TEST_CASE("rref clears above pivots") {
    QField f;
    auto m = from_rows(f, {{2, 4, 0, 6}, {1, 2, 1, 4}, {0, 0, 2, 2}});
    auto r = rref(m);
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 2});
    CHECK(r.reduced.at(0, 0) == 1);
    CHECK(r.reduced.at(0, 1) == 2);
    CHECK(r.reduced.at(0, 2) == 0);
    CHECK(r.reduced.at(0, 3) == 3);
    CHECK(r.reduced.at(1, 2) == 1);
    CHECK(r.reduced.at(1, 3) == 1);
}

TEST_CASE("nullspace worked examples") {
    QField f;
    CHECK(nullspace(Matrix<QField>::identity(f, 3)).empty());

    Matrix<QField> z(f, 2, 4);
    auto nz = nullspace(z);
    REQUIRE(nz.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(nz[i][j] == (i == j ? 1 : 0));

    auto m = from_rows(f, {{1, 1, 0}});
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 2);
    CHECK(ns[0] == std::vector<mpq_class>{-1, 1, 0});
    CHECK(ns[1] == std::vector<mpq_class>{0, 0, 1});
}

TEST_CASE("nullspace over a prime field") {
    FpField f(5);
    // The second row is 2x the first mod 5, so the kernel is two-dimensional.
    auto m = from_rows(f, {{1, 2, 3}, {2, 4, 1}});
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 2);
    CHECK(ns[0] == std::vector<std::uint64_t>{3, 1, 0});
    CHECK(ns[1] == std::vector<std::uint64_t>{2, 0, 1});
    for (auto& v : ns) {
        auto img = m.mul_vec(v);
        for (auto& x : img) CHECK(x == 0);
    }

    auto full = from_rows(f, {{1, 2, 3}, {2, 4, 1}, {0, 1, 0}, {0, 0, 2}});
    CHECK(rank(full) == 3);
    CHECK(nullspace(full).empty());
}

TEST_CASE("span comparison") {
    QField f;
    using V = std::vector<std::vector<mpq_class>>;
    V a = {{1, 0, 0}, {0, 1, 0}};
    V a2 = {{1, 1, 0}, {1, -1, 0}};
    V b = {{1, 0, 0}};
    V c = {{0, 0, 1}};
    CHECK(span_compare(f, a, a2) == SpanRel::equal);
    CHECK(span_compare(f, a, b) == SpanRel::a_contains_b);
    CHECK(span_compare(f, b, a) == SpanRel::b_contains_a);
    CHECK(span_compare(f, b, c) == SpanRel::incomparable);
    CHECK(span_compare(f, V{}, V{}) == SpanRel::equal);
}

TEST_CASE("solve") {
    QField f;
    auto m = from_rows(f, {{1, 2}, {3, 4}});
    auto x = solve(m, {mpq_class(5), mpq_class(11)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);

    auto sing = from_rows(f, {{1, 1}, {1, 1}});
    CHECK_FALSE(solve(sing, {mpq_class(0), mpq_class(1)}).has_value());
    auto under = from_rows(f, {{1, 1}});
    auto u = solve(under, {mpq_class(3)});
    REQUIRE(u.has_value());
    CHECK((*u)[0] == 3);  // free coordinate pinned to zero
    CHECK((*u)[1] == 0);
}

TEST_CASE("echelon basis membership and cap") {
    QField f;
    EchelonBasis<QField> eb(f, 3);
    CHECK(eb.insert({{0, mpq_class(1)}, {1, mpq_class(1)}}));
    CHECK_FALSE(eb.insert({{0, mpq_class(2)}, {1, mpq_class(2)}}));
    CHECK(eb.member({{0, mpq_class(3)}, {1, mpq_class(3)}}));
    CHECK_FALSE(eb.member({{0, mpq_class(1)}}));
    CHECK(eb.rank() == 1);

    EchelonBasis<QField> capped(f, 3, 4);
    capped.insert({{0, mpq_class(1)}, {1, mpq_class(1)}});
    CHECK(thrown_kind([&] {
              capped.insert({{0, mpq_class(1)}, {1, mpq_class(2)}, {2, mpq_class(3)}});
          }) == errc::resource_error);
}

namespace {

template <class F, class Gen>
Matrix<F> random_matrix(F f, std::size_t r, std::size_t c, Gen& gen) {
    Matrix<F> m(f, r, c);
    std::uniform_int_distribution<long> coeff(-6, 6);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f.from_long(coeff(gen));
    return m;
}

template <class F>
void check_matrix_properties(F f, unsigned seed) {
    std::mt19937_64 gen(seed);
    for (int iter = 0; iter < 25; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(1, 8);
        std::size_t r = dim(gen), c = dim(gen);
        Matrix<F> m = random_matrix(f, r, c, gen);

        auto rr = rref(m);
        auto ns = nullspace(m);
        CHECK(rr.rank + ns.size() == c);
        CHECK(rr.rank == rank(m.transpose()));

        for (auto& v : ns) {
            auto img = m.mul_vec(v);
            for (auto& x : img) CHECK(f.is_zero(x));
        }

        // Reducing the reduced form changes nothing.
        auto rr2 = rref(rr.reduced);
        CHECK(rr2.rank == rr.rank);
        CHECK(rr2.reduced.eq(rr.reduced));

        // Row order must not affect the canonical outputs.
        std::vector<std::size_t> order(r);
        for (std::size_t i = 0; i < r; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), gen);
        EchelonBasis<F> ea(f, c), eshuf(f, c);
        for (std::size_t i = 0; i < r; ++i) ea.insert(m.row_sparse(i));
        for (std::size_t i : order) eshuf.insert(m.row_sparse(i));
        CHECK(ea.rref_rows() == eshuf.rref_rows());
        CHECK(ea.nullspace_basis() == eshuf.nullspace_basis());

        // Row space is preserved by reduction.
        std::vector<std::vector<typename F::elem>> rows_in, rows_out;
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<typename F::elem> v(c, f.zero());
            for (std::size_t j = 0; j < c; ++j) v[j] = m.at(i, j);
            rows_in.push_back(std::move(v));
        }
        rows_out = ea.rref_rows();
        CHECK(span_compare(f, rows_in, rows_out) == SpanRel::equal);
    }
}

}  // namespace

TEST_CASE("matrix properties over Q") { check_matrix_properties(QField{}, 20260101); }
TEST_CASE("matrix properties over F5") { check_matrix_properties(FpField(5), 20260102); }
TEST_CASE("matrix properties over F7") { check_matrix_properties(FpField(7), 20260103); }
TEST_CASE("matrix properties over a large prime field") {
    // 2^31 - 1 exceeds the lazy-reduction threshold, so elimination runs with
    // per-step reduction.
    check_matrix_properties(FpField(2147483647ULL), 20260104);
}

TEST_CASE("fraction-free elimination stays exact on an ill-conditioned input") {
    QField f;
    // Hilbert-like rows with large denominators; rank must come out full.
    std::size_t n = 7;
    Matrix<QField> m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = mpq_class(1, static_cast<long>(i + j + 1));
    CHECK(rank(m) == n);
    CHECK(nullspace(m).empty());
}
