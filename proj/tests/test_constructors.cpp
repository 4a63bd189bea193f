#include <catch2/catch_amalgamated.hpp>

#include <optional>

#include "cocycle/constructors.hpp"

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

// Independent oracle for binomials mod p: multiply digitwise binomials in
// base p.
std::uint64_t lucas_binom(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    std::uint64_t out = 1;
    while (n || k) {
        std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        std::uint64_t c = 1;
        for (std::uint64_t i = 0; i < kd; ++i) c = c * (nd - i) / (i + 1);
        out = out * (c % p) % p;
        n /= p;
        k /= p;
    }
    return out;
}

// One-dimensional unital algebra, the coefficient algebra K itself.
template <class F>
Algebra<F> ground_field_algebra(F f) {
    Algebra<F> A(f);
    A.dim = 1;
    A.mode = completion::symmetric;
    A.basis_names = {"1"};
    A.set_product(0, 0, {{0, f.one()}});
    A.finalize();
    A.flags.assoc_comm = true;
    A.flags.unit = 0;
    return A;
}

}  // namespace

TEST_CASE("small zoo constructors") {
    QField q;
    auto L2 = two_dim_nonabelian(q);
    CHECK(L2.dim == 2);
    CHECK(L2.flags.lie);
    CHECK(derived_subalgebra(L2).dim() == 1);

    auto H = heisenberg3(q);
    CHECK(H.dim == 3);
    CHECK(center(H).dim() == 1);

    auto A4 = abelian(q, 4);
    CHECK(A4.dim == 4);
    CHECK(A4.basis_names[0] == "a1");
    CHECK(A4.basis_names[3] == "a4");
    CHECK(validate(A4).lie());
}

TEST_CASE("sl(2) structure constants") {
    QField q;
    auto L = sl(q, 2);
    REQUIRE(L.dim == 3);
    CHECK(L.basis_names == std::vector<std::string>{"e(1,2)", "h1", "e(2,1)"});
    CHECK(L.flags.lie);
    // [e,h] = -2e, [e,f] = h, [h,f] = -2f.
    REQUIRE(L.product(0, 1).size() == 1);
    CHECK(L.product(0, 1)[0].first == 0);
    CHECK(L.product(0, 1)[0].second == mpq_class(-2));
    REQUIRE(L.product(0, 2).size() == 1);
    CHECK(L.product(0, 2)[0].first == 1);
    CHECK(L.product(0, 2)[0].second == mpq_class(1));
    REQUIRE(L.product(1, 2).size() == 1);
    CHECK(L.product(1, 2)[0].first == 2);
    CHECK(L.product(1, 2)[0].second == mpq_class(-2));
}

TEST_CASE("sl(3) over the rationals and over F3") {
    QField q;
    auto L = sl(q, 3);
    REQUIRE(L.dim == 8);
    CHECK(L.basis_names[3] == "h1");
    CHECK(L.basis_names[5] == "e(2,1)");
    CHECK(derived_subalgebra(L).dim() == 8);
    CHECK(center(L).dim() == 0);

    FpField f3(3, true);
    auto L3 = sl(f3, 3);
    REQUIRE(L3.dim == 8);
    auto Z = center(L3);
    REQUIRE(Z.dim() == 1);
    // The scalar matrices: identity is h1 + 2 h2 in this basis.
    std::vector<std::uint64_t> want(8, 0);
    want[3] = 1;
    want[4] = 2;
    CHECK(Z.basis[0] == want);
}

TEST_CASE("sl(5) over F5 has a one-dimensional center") {
    FpField f5(5);
    auto L = sl(f5, 5);
    REQUIRE(L.dim == 24);
    CHECK(center(L).dim() == 1);
    CHECK(derived_subalgebra(L).dim() == 24);
}

TEST_CASE("minus algebra of a commutative algebra is abelian") {
    FpField f5(5);
    auto A = divided_power_o1n(f5, 1);
    auto L = minus_algebra(A);
    CHECK(L.dim == 5);
    CHECK(L.flags.lie);
    CHECK(derived_subalgebra(L).dim() == 0);
}

TEST_CASE("divided power algebra products match the Lucas oracle") {
    FpField f5(5);
    auto A = divided_power_o1n(f5, 1);
    REQUIRE(A.dim == 5);
    CHECK(A.basis_names[4] == "x^4");
    CHECK(A.flags.assoc_comm);
    CHECK(A.flags.unit == 0);
    // x^2 x^2 = binom(4,2) x^4 = x^4 mod 5; x^1 x^4 dies at the truncation.
    REQUIRE(A.product(2, 2).size() == 1);
    CHECK(A.product(2, 2)[0].first == 4);
    CHECK(A.product(2, 2)[0].second == 1);
    CHECK(A.product(1, 4).empty());

    auto B = divided_power_o1n(f5, 2);
    REQUIRE(B.dim == 25);
    for (std::size_t i = 0; i < 25; ++i)
        for (std::size_t j = 0; j < 25; ++j) {
            const auto& terms = B.product(i, j);
            std::uint64_t expect = i + j < 25 ? lucas_binom(i + j, j, 5) : 0;
            if (expect == 0) {
                CHECK(terms.empty());
            } else {
                REQUIRE(terms.size() == 1);
                CHECK(terms[0].first == i + j);
                CHECK(terms[0].second == expect);
            }
        }
}

TEST_CASE("reduced polynomial algebra in one and two variables") {
    FpField f5(5);
    auto A = reduced_polynomial_on(f5, 1);
    REQUIRE(A.dim == 5);
    CHECK(A.flags.assoc_comm);
    CHECK(A.flags.unit == 0);
    REQUIRE(A.product(1, 3).size() == 1);
    CHECK(A.product(1, 3)[0].first == 4);
    CHECK(A.product(1, 3)[0].second == 1);
    CHECK(A.product(2, 3).empty());

    auto B = reduced_polynomial_on(f5, 2);
    REQUIRE(B.dim == 25);
    CHECK(B.basis_names[0] == "x^(0,0)");
    CHECK(B.basis_names[6] == "x^(1,1)");
    // x^(1,0) x^(0,1) = x^(1,1).
    REQUIRE(B.product(1, 5).size() == 1);
    CHECK(B.product(1, 5)[0].first == 6);
    // Truncation is per variable.
    CHECK(B.product(4, 9).empty());
}

TEST_CASE("zassenhaus derivation realization") {
    FpField f5(5);
    auto W = zassenhaus_der(f5, 1);
    REQUIRE(W.algebra.dim == 5);
    CHECK(W.algebra.basis_names[0] == "x^0*d");
    CHECK(W.algebra.flags.lie);
    CHECK(W.carrier.dim == 5);

    // Closed form for the bracket; the construction goes through the product
    // rule instead, so this is an independent check.
    auto oracle = [&](std::size_t i, std::size_t j) -> std::pair<std::size_t, std::uint64_t> {
        if (i + j == 0 || i + j - 1 >= 5) return {0, 0};
        std::uint64_t a = lucas_binom(i + j - 1, i, 5);
        std::uint64_t b = lucas_binom(i + j - 1, j, 5);
        return {i + j - 1, (a + 5 - b) % 5};
    };
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) {
            auto [k, c] = oracle(i, j);
            const auto& terms = W.algebra.product(i, j);
            if (c == 0) {
                CHECK(terms.empty());
            } else {
                REQUIRE(terms.size() == 1);
                CHECK(terms[0].first == k);
                CHECK(terms[0].second == c);
            }
        }
    // [x^0 d, x^2 d] = x^1 d.
    REQUIRE(W.algebra.product(0, 2).size() == 1);
    CHECK(W.algebra.product(0, 2)[0].first == 1);
    CHECK(W.algebra.product(0, 2)[0].second == 1);

    // The action matrices give a representation on the carrier whose span is
    // the full derivation algebra of the carrier.
    Representation<FpField> rep{5, 5, W.action};
    validate_representation(W.algebra, rep);
    auto der = derivations(W.carrier);
    REQUIRE(der.dim() == 5);
    std::vector<std::vector<std::uint64_t>> flat, der_flat;
    for (auto& m : W.action) flat.push_back(map_to_flat(m));
    for (auto& m : der.basis) der_flat.push_back(map_to_flat(m));
    CHECK(span_compare(f5, flat, der_flat) == SpanRel::equal);

    // d itself is the first basis action.
    CHECK(W.partial.eq(W.action[0]));
}

TEST_CASE("zassenhaus group realization") {
    FpField f5(5);
    auto W = zassenhaus_group(f5);
    REQUIRE(W.dim == 5);
    CHECK(W.flags.lie);
    // [e1, e2] = (2-1) e3.
    REQUIRE(W.product(1, 2).size() == 1);
    CHECK(W.product(1, 2)[0].first == 3);
    CHECK(W.product(1, 2)[0].second == 1);
    // [e2, e4] = 2 e1 since indices wrap mod 5.
    REQUIRE(W.product(2, 4).size() == 1);
    CHECK(W.product(2, 4)[0].first == 1);
    CHECK(W.product(2, 4)[0].second == 2);
    CHECK(derived_subalgebra(W).dim() == 5);
}

TEST_CASE("rank two chevalley algebras over the rationals") {
    QField q;
    auto a2 = chevalley_rank2(q, rank2_type::A2);
    REQUIRE(a2.dim == 8);
    CHECK(a2.flags.lie);
    CHECK(derived_subalgebra(a2).dim() == 8);
    CHECK(center(a2).dim() == 0);
    // Basis: e(0,1), e(1,0), e(1,1), h1, h2, f(0,1), f(1,0), f(1,1).
    CHECK(a2.basis_names[0] == "e(0,1)");
    CHECK(a2.basis_names[3] == "h1");
    CHECK(a2.basis_names[7] == "f(1,1)");
    // The extraspecial pair carries the positive sign: [e(0,1), e(1,0)] = e(1,1).
    REQUIRE(a2.product(0, 1).size() == 1);
    CHECK(a2.product(0, 1)[0].first == 2);
    CHECK(a2.product(0, 1)[0].second == mpq_class(1));
    // [e_a, f_a] is the coroot: for the first simple root, h1.
    REQUIRE(a2.product(1, 6).size() == 1);
    CHECK(a2.product(1, 6)[0].first == 3);
    CHECK(a2.product(1, 6)[0].second == mpq_class(1));

    auto b2 = chevalley_rank2(q, rank2_type::B2);
    REQUIRE(b2.dim == 10);
    CHECK(derived_subalgebra(b2).dim() == 10);

    auto g2 = chevalley_rank2(q, rank2_type::G2);
    REQUIRE(g2.dim == 14);
    CHECK(derived_subalgebra(g2).dim() == 14);
}

TEST_CASE("chevalley algebras over prime fields") {
    FpField f5(5);
    CHECK(chevalley_rank2(f5, rank2_type::A2).dim == 8);
    CHECK(chevalley_rank2(f5, rank2_type::G2).dim == 14);
    FpField f3(3, true);
    auto b2 = chevalley_rank2(f3, rank2_type::B2);
    CHECK(b2.dim == 10);
    CHECK(b2.flags.lie);
    FpField f7(7);
    CHECK(chevalley_rank2(f7, rank2_type::B2).dim == 10);
}

TEST_CASE("current algebra of sl(2) with divided powers") {
    FpField f5(5);
    auto L = sl(f5, 2);
    auto A = divided_power_o1n(f5, 1);
    auto LA = current(L, A);
    REQUIRE(LA.algebra.dim == 15);
    CHECK(LA.algebra.flags.lie);
    CHECK(LA.algebra.basis_names[0] == "e(1,2)@x^0");
    CHECK(LA.algebra.basis_names[14] == "e(2,1)@x^4");
    // The current algebra of a perfect algebra with unital coefficients is perfect.
    CHECK(derived_subalgebra(LA.algebra).dim() == 15);
    // [e@x^1, f@x^2] = h@(x^1 x^2) = 3 h@x^3.
    const auto& terms = LA.algebra.product(1, 12);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].first == 5 + 3);
    CHECK(terms[0].second == 3);
}

TEST_CASE("current algebra over the ground field copies the bracket") {
    QField q;
    auto L = sl(q, 2);
    auto K = ground_field_algebra(q);
    auto LK = current(L, K);
    REQUIRE(LK.algebra.dim == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            CHECK(LK.algebra.product(i, j) == L.product(i, j));
}

TEST_CASE("current rejects mismatched inputs") {
    QField q;
    FpField f5(5);
    auto Lq = sl(q, 2);
    auto A5 = divided_power_o1n(f5, 1);
    auto L5 = sl(f5, 2);
    CHECK(thrown_kind([&] { current(L5, L5); }) == errc::not_assoc_comm);
    CHECK(thrown_kind([&] { current(A5, A5); }) == errc::not_lie);
    FpField f7(7);
    auto L7 = sl(f7, 2);
    auto A7 = divided_power_o1n(f7, 1);
    CHECK(thrown_kind([&] { current(L5, A7); }) == errc::field_mismatch);
}

TEST_CASE("derivation extension of a current algebra") {
    FpField f5(5);
    auto LA = current(sl(f5, 2), divided_power_o1n(f5, 1));
    auto W = zassenhaus_der(f5, 1);
    std::vector<std::string> names;
    for (auto& n : W.algebra.basis_names) names.push_back(n);
    auto E = derivation_extension(LA, W.action, names);
    REQUIRE(E.dim == 20);
    CHECK(E.flags.lie);
    CHECK(E.basis_names[15] == "x^0*d");
    // [d, e@x^2] = e@x^1, stored under the reversed pair.
    const auto& t = E.product(2, 15);
    REQUIRE(t.size() == 1);
    CHECK(t[0].first == 1);
    CHECK(t[0].second == 4);
    // [x^0 d, x^1 d] = x^0 d inside the derivation tail.
    const auto& t2 = E.product(15, 16);
    REQUIRE(t2.size() == 1);
    CHECK(t2[0].first == 15);
    CHECK(t2[0].second == 1);
}

TEST_CASE("derivation extension rejects bad derivation sets") {
    FpField f5(5);
    auto A = divided_power_o1n(f5, 1);
    auto LA = current(sl(f5, 2), A);
    auto W = zassenhaus_der(f5, 1);

    // Not a derivation at all.
    Matrix<FpField> bad = Matrix<FpField>::identity(f5, 5);
    CHECK(thrown_kind([&] { derivation_extension(LA, {bad}); }) == errc::spec_violation);

    // Genuine derivations that do not close under commutator.
    std::vector<Matrix<FpField>> open_set{W.action[0], W.action[2]};
    CHECK(thrown_kind([&] { derivation_extension(LA, open_set); }) == errc::spec_violation);
}

namespace {

// Killing form of sl(2) in the basis e, h, f, reduced mod 5.
Matrix<FpField> sl2_killing_f5(FpField f) {
    Matrix<FpField> B(f, 3, 3);
    B.at(0, 2) = B.at(2, 0) = 4;
    B.at(1, 1) = 3;
    return B;
}

// The cyclic-condition form on divided powers mod 5 supported on the pairs
// with exponent sum 5.
Matrix<FpField> o1_xi_f5(FpField f) {
    Matrix<FpField> X(f, 5, 5);
    X.at(1, 4) = 1;
    X.at(4, 1) = 4;
    X.at(2, 3) = 4;
    X.at(3, 2) = 1;
    return X;
}

}  // namespace

TEST_CASE("central derivation extension builds and is Lie") {
    FpField f5(5);
    auto L = sl(f5, 2);
    auto A = divided_power_o1n(f5, 1);
    auto W = zassenhaus_der(f5, 1);

    ExtensionSpec<FpField> spec{sl2_killing_f5(f5), o1_xi_f5(f5), {W.action[0]}, {"d"}};
    auto E = central_derivation_extension(L, A, spec);
    REQUIRE(E.dim == 17);
    CHECK(E.flags.lie);
    CHECK(E.basis_names[15] == "z");
    CHECK(E.basis_names[16] == "d");
    // z is central.
    for (std::size_t i = 0; i < 17; ++i)
        for (std::size_t j = i + 1; j < 17; ++j)
            if (i == 15 || j == 15) CHECK(E.product(i, j).empty());
    // The central term shows up where the invariant form and xi both hit:
    // [e@x^1, f@x^4] = h@(x^1 x^4) + <e,f> xi(x^1,x^4) z = 4z.
    const auto& t = E.product(1, 14);
    REQUIRE(t.size() == 1);
    CHECK(t[0].first == 15);
    CHECK(t[0].second == 4);
}

TEST_CASE("central derivation extension with zero xi keeps z as a summand") {
    FpField f5(5);
    auto L = sl(f5, 2);
    auto A = divided_power_o1n(f5, 1);
    ExtensionSpec<FpField> spec{sl2_killing_f5(f5), Matrix<FpField>(f5, 5, 5), {}, {}};
    auto E = central_derivation_extension(L, A, spec);
    REQUIRE(E.dim == 16);
    CHECK(E.flags.lie);
    auto Z = center(E);
    REQUIRE(Z.dim() == 1);
    std::vector<std::uint64_t> z(16, 0);
    z[15] = 1;
    CHECK(Z.basis[0] == z);
}

TEST_CASE("extension spec violations are reported by invariant") {
    FpField f5(5);
    auto L = sl(f5, 2);
    auto A = divided_power_o1n(f5, 1);
    auto good_form = sl2_killing_f5(f5);
    auto good_xi = o1_xi_f5(f5);

    auto kind_of = [&](ExtensionSpec<FpField> spec) {
        return thrown_kind([&] { central_derivation_extension(L, A, spec); });
    };

    // Not symmetric.
    Matrix<FpField> asym(f5, 3, 3);
    asym.at(0, 1) = 1;
    CHECK(kind_of({asym, good_xi, {}, {}}) == errc::spec_violation);

    // Symmetric but not invariant.
    CHECK(kind_of({Matrix<FpField>::identity(f5, 3), good_xi, {}, {}}) == errc::spec_violation);

    // xi not skew.
    Matrix<FpField> notskew(f5, 5, 5);
    notskew.at(1, 4) = 1;
    CHECK(kind_of({good_form, notskew, {}, {}}) == errc::spec_violation);

    // Skew xi failing the cyclic sum condition.
    Matrix<FpField> badxi(f5, 5, 5);
    badxi.at(0, 1) = 1;
    badxi.at(1, 0) = 4;
    CHECK(kind_of({good_form, badxi, {}, {}}) == errc::spec_violation);

    // Wrong shapes.
    CHECK(kind_of({Matrix<FpField>(f5, 2, 2), good_xi, {}, {}}) == errc::spec_violation);
    CHECK(kind_of({good_form, Matrix<FpField>(f5, 4, 4), {}, {}}) == errc::spec_violation);
}
