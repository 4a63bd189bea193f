#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "cocycle/error.hpp"

namespace cocycle {

enum class field_kind { rationals, prime_field };

// Which field a document or computation lives over.  p is meaningful only for
// prime fields.  Characteristic 2 is always refused; characteristic 3 needs an
// explicit opt-in from the caller.
struct FieldSpec {
    field_kind kind = field_kind::rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return FieldSpec{field_kind::rationals, 0}; }
    static FieldSpec prime(std::uint64_t p) { return FieldSpec{field_kind::prime_field, p}; }

    bool operator==(const FieldSpec&) const = default;

    std::string str() const {
        if (kind == field_kind::rationals) return "Q";
        return "Fp:" + std::to_string(p);
    }

    void validate(bool allow_small_char = false) const {
        if (kind == field_kind::rationals) return;
        require(is_prime(p), errc::invalid_characteristic,
                std::to_string(p) + " is not prime");
        require(p != 2, errc::invalid_characteristic, "characteristic 2 is not supported");
        if (p == 3)
            require(allow_small_char, errc::invalid_characteristic,
                    "characteristic 3 requires the explicit small-characteristic override");
    }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
};

// Exact rationals.  mpq arithmetic keeps results canonical (lowest terms,
// positive denominator); only values built from raw strings need an explicit
// canonicalize.
struct QField {
    using elem = mpq_class;

    FieldSpec spec() const { return FieldSpec::rationals(); }

    elem zero() const { return elem(0); }
    elem one() const { return elem(1); }
    elem from_long(long v) const { return elem(v); }
    bool is_zero(const elem& a) const { return sgn(a) == 0; }
    bool eq(const elem& a, const elem& b) const { return a == b; }

    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }
    elem inv(const elem& a) const {
        require(!is_zero(a), errc::division_by_zero, "inverse of zero");
        return 1 / a;
    }
    elem div(const elem& a, const elem& b) const { return mul(a, inv(b)); }

    std::string str(const elem& a) const {
        elem c = a;
        c.canonicalize();
        return c.get_str();
    }

    elem parse(const std::string& s) const {
        try {
            elem v(s);
            require(sgn(v.get_den()) != 0, errc::parse_error, "zero denominator: " + s);
            v.canonicalize();
            return v;
        } catch (const std::invalid_argument&) {
            fail(errc::parse_error, "bad rational: " + s);
        }
    }
};

// Prime field with runtime modulus.  Elements are residues in [0, p).
class FpField {
public:
    using elem = std::uint64_t;

    explicit FpField(std::uint64_t p, bool allow_small_char = false) : p_(p) {
        FieldSpec::prime(p).validate(allow_small_char);
    }

    std::uint64_t modulus() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    elem zero() const { return 0; }
    elem one() const { return 1 % p_; }
    elem from_long(long v) const {
        long r = v % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        return static_cast<elem>(r);
    }
    bool is_zero(elem a) const { return a == 0; }
    bool eq(elem a, elem b) const { return a == b; }

    elem add(elem a, elem b) const {
        elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    elem sub(elem a, elem b) const { return a >= b ? a - b : a + p_ - b; }
    elem mul(elem a, elem b) const {
        return static_cast<elem>(static_cast<unsigned __int128>(a) * b % p_);
    }
    elem neg(elem a) const { return a == 0 ? 0 : p_ - a; }
    elem inv(elem a) const {
        require(a != 0, errc::division_by_zero, "inverse of zero");
        return pow(a, p_ - 2);
    }
    elem div(elem a, elem b) const { return mul(a, inv(b)); }

    elem pow(elem a, std::uint64_t e) const {
        elem r = one(), base = a % p_;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    std::string str(elem a) const { return std::to_string(a); }

    elem parse(const std::string& s) const {
        require(!s.empty(), errc::parse_error, "empty residue");
        bool negative = s[0] == '-';
        std::size_t i = negative ? 1 : 0;
        require(i < s.size(), errc::parse_error, "bad residue: " + s);
        elem v = 0;
        for (; i < s.size(); ++i) {
            require(s[i] >= '0' && s[i] <= '9', errc::parse_error, "bad residue: " + s);
            v = (v * 10 + static_cast<elem>(s[i] - '0')) % p_;
        }
        return negative ? neg(v) : v;
    }

private:
    std::uint64_t p_;
};

// Runtime-tagged scalar: the field-agnostic face of the arithmetic layer.
// Mixed-field operations are a caller error, never a silent coercion.
struct Scalar {
    FieldSpec field;
    mpq_class q;       // payload when field.kind == rationals
    std::uint64_t r = 0;  // payload when field.kind == prime_field

    static Scalar rational(const mpq_class& v) {
        Scalar s;
        s.field = FieldSpec::rationals();
        s.q = v;
        return s;
    }
    static Scalar residue(std::uint64_t p, std::uint64_t v) {
        Scalar s;
        s.field = FieldSpec::prime(p);
        s.r = v % p;
        return s;
    }
};

namespace detail {
inline void check_same_field(const Scalar& a, const Scalar& b) {
    require(a.field == b.field, errc::field_mismatch,
            "operands over " + a.field.str() + " and " + b.field.str());
}

template <class Fq, class Fp>
Scalar scalar_apply(const Scalar& a, Fq fq, Fp fp) {
    Scalar out;
    out.field = a.field;
    if (a.field.kind == field_kind::rationals)
        out.q = fq();
    else
        out.r = fp();
    return out;
}
}  // namespace detail

inline Scalar scalar_add(const Scalar& a, const Scalar& b) {
    detail::check_same_field(a, b);
    return detail::scalar_apply(
        a, [&] { return QField{}.add(a.q, b.q); },
        [&] { return FpField(a.field.p, true).add(a.r, b.r); });
}

inline Scalar scalar_sub(const Scalar& a, const Scalar& b) {
    detail::check_same_field(a, b);
    return detail::scalar_apply(
        a, [&] { return QField{}.sub(a.q, b.q); },
        [&] { return FpField(a.field.p, true).sub(a.r, b.r); });
}

inline Scalar scalar_mul(const Scalar& a, const Scalar& b) {
    detail::check_same_field(a, b);
    return detail::scalar_apply(
        a, [&] { return QField{}.mul(a.q, b.q); },
        [&] { return FpField(a.field.p, true).mul(a.r, b.r); });
}

inline Scalar scalar_neg(const Scalar& a) {
    return detail::scalar_apply(
        a, [&] { return QField{}.neg(a.q); },
        [&] { return FpField(a.field.p, true).neg(a.r); });
}

inline Scalar scalar_inv(const Scalar& a) {
    return detail::scalar_apply(
        a, [&] { return QField{}.inv(a.q); },
        [&] { return FpField(a.field.p, true).inv(a.r); });
}

inline std::string scalar_str(const Scalar& a) {
    if (a.field.kind == field_kind::rationals) return QField{}.str(a.q);
    return std::to_string(a.r);
}

inline Scalar parse_scalar(const FieldSpec& fs, const std::string& s) {
    if (fs.kind == field_kind::rationals) return Scalar::rational(QField{}.parse(s));
    return Scalar::residue(fs.p, FpField(fs.p, true).parse(s));
}

// Calls fn with the field object matching spec.  The single point where the
// runtime field choice turns into a template parameter.
template <class Fn>
decltype(auto) with_field(const FieldSpec& fs, bool allow_small_char, Fn&& fn) {
    if (fs.kind == field_kind::rationals) return fn(QField{});
    return fn(FpField(fs.p, allow_small_char));
}

}  // namespace cocycle
