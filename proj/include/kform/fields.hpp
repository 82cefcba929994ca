#pragma once

// Exact coefficient fields: arbitrary-precision rationals and prime fields
// F_p with p < 2^31 (so products fit in 64-bit intermediates).

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kf {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg) : std::runtime_error(msg), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const char* kind, const std::string& msg) { throw Error(kind, msg); }

// ---- prime field element ------------------------------------------------

// Value type: carries its modulus so containers of mixed provenance stay
// checkable. p == 0 denotes an unattached zero (identity for +).
struct Fp {
    uint32_t v = 0;
    uint32_t p = 0;

    Fp() = default;
    Fp(uint32_t value, uint32_t mod) : v(value % mod), p(mod) {}

    static Fp zero(uint32_t mod) { return Fp(0, mod); }
    static Fp one(uint32_t mod) { return Fp(1 % mod, mod); }

    bool is_zero() const { return v == 0; }

    friend uint32_t common_mod(const Fp& a, const Fp& b) {
        if (a.p == 0) return b.p;
        if (b.p == 0) return a.p;
        if (a.p != b.p) fail("DimensionMismatch", "mixed moduli " + std::to_string(a.p) + " vs " + std::to_string(b.p));
        return a.p;
    }

    friend Fp operator+(const Fp& a, const Fp& b) {
        uint32_t m = common_mod(a, b);
        if (m == 0) return Fp();
        uint64_t s = uint64_t(a.v) + b.v;
        return Fp(uint32_t(s >= m ? s - m : s), m);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        uint32_t m = common_mod(a, b);
        if (m == 0) return Fp();
        return Fp(a.v >= b.v ? a.v - b.v : uint32_t(uint64_t(a.v) + m - b.v), m);
    }
    friend Fp operator-(const Fp& a) {
        if (a.p == 0) return a;
        return Fp(a.v == 0 ? 0 : a.p - a.v, a.p);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        uint32_t m = common_mod(a, b);
        if (m == 0) return Fp();
        return Fp(uint32_t((uint64_t(a.v) * b.v) % m), m);
    }
    Fp inv() const {
        if (v == 0) fail("SingularMatrix", "division by zero in F_" + std::to_string(p));
        // extended Euclid on (v, p)
        int64_t r0 = v, r1 = p, s0 = 1, s1 = 0;
        while (r1 != 0) {
            int64_t q = r0 / r1;
            int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
            int64_t s2 = s0 - q * s1; s0 = s1; s1 = s2;
        }
        if (r0 != 1) fail("NonPrime", "zero divisor mod " + std::to_string(p));
        if (s0 < 0) s0 += p;
        return Fp(uint32_t(s0), p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
    friend bool operator==(const Fp& a, const Fp& b) {
        if (a.p != 0 && b.p != 0 && a.p != b.p) return false;
        return a.v == b.v;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp pow(uint64_t e) const {
        Fp r = Fp::one(p), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }
};

inline bool is_zero(const Fp& a) { return a.v == 0; }
inline bool is_zero(const Rat& a) { return a.is_zero(); }

// ---- primality (deterministic for p < 2^31) ------------------------------

inline uint64_t powmod64(uint64_t a, uint64_t e, uint64_t m) {
    // m < 2^32 so products fit in 64 bits
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = (r * a) % m;
        a = (a * a) % m;
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t q : {2u, 3u, 5u, 7u}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    uint32_t d = n - 1, s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // bases 2,3,5,7 are deterministic below 3.2e9
    for (uint32_t a : {2u, 3u, 5u, 7u}) {
        uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (uint32_t i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// ---- field contexts -------------------------------------------------------

struct RatField {
    using Elem = Rat;
    uint32_t characteristic() const { return 0; }
    std::string name() const { return "q"; }
    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat from_long(long long n) const { return Rat(n); }
    Rat parse(const std::string& s) const {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(Int(s));
            Int num(s.substr(0, slash)), den(s.substr(slash + 1));
            if (den == 0) fail("ParseError", "zero denominator in '" + s + "'");
            return Rat(num, den);
        } catch (const std::exception& e) {
            fail("ParseError", "bad rational literal '" + s + "'");
        }
    }
    std::string str(const Rat& x) const { return x.str(); }
};

struct FpField {
    uint32_t p = 0;
    using Elem = Fp;

    explicit FpField(uint32_t mod = 2) : p(mod) {
        if (!is_prime_u32(p)) fail("NonPrime", std::to_string(p) + " is not prime");
    }
    uint32_t characteristic() const { return p; }
    std::string name() const { return "fp:" + std::to_string(p); }
    Fp zero() const { return Fp::zero(p); }
    Fp one() const { return Fp::one(p); }
    Fp from_long(long long n) const {
        int64_t r = n % int64_t(p);
        if (r < 0) r += p;
        return Fp(uint32_t(r), p);
    }
    Fp parse(const std::string& s) const {
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return parse(s.substr(0, slash)) / parse(s.substr(slash + 1));
        try {
            Int n(s);
            Int r = n % p;
            if (r < 0) r += p;
            return Fp(r.convert_to<uint32_t>(), p);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail("ParseError", "bad residue literal '" + s + "'");
        }
    }
    std::string str(const Fp& x) const { return std::to_string(x.v); }
};

// Runtime field tag, as it appears on the wire ("q" | "fp:<p>").
struct FieldSpec {
    enum Kind { RATIONALS, PRIME } kind = RATIONALS;
    uint32_t p = 0;

    static FieldSpec rationals() { return FieldSpec{RATIONALS, 0}; }
    static FieldSpec prime(uint32_t p) {
        if (!is_prime_u32(p)) fail("NonPrime", std::to_string(p) + " is not prime");
        return FieldSpec{PRIME, p};
    }
    static FieldSpec parse(const std::string& s) {
        if (s == "q") return rationals();
        if (s.rfind("fp:", 0) == 0) {
            uint64_t v = 0;
            try {
                v = std::stoull(s.substr(3));
            } catch (const std::exception&) { fail("ParseError", "bad field spec '" + s + "'"); }
            if (v >= (uint64_t(1) << 31)) fail("ParseError", "modulus too large in '" + s + "'");
            return prime(uint32_t(v));
        }
        fail("ParseError", "unknown field spec '" + s + "' (want q or fp:<p>)");
    }
    std::string name() const { return kind == RATIONALS ? "q" : "fp:" + std::to_string(p); }
    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
};

// Primitive n-th root of unity, if the field has one. Over Q only n <= 2
// can succeed; over F_p we need n | p-1 and then scan from 2 upward, so the
// returned root is deterministic.
inline std::optional<Rat> nth_root_of_unity(const RatField&, uint32_t n) {
    if (n == 1) return Rat(1);
    if (n == 2) return Rat(-1);
    return std::nullopt;
}

// Exact square roots inside the field; nullopt when none exists.
inline std::optional<Rat> field_sqrt(const RatField&, const Rat& x) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (x < 0) return std::nullopt;
    Int num = numerator(x), den = denominator(x);
    Int sn = sqrt(num), sd = sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rat(sn, sd);
}

inline std::optional<Fp> field_sqrt(const FpField& F, const Fp& x) {
    uint32_t p = F.p;
    if (x.v == 0) return F.zero();
    if (p == 2) return x;
    if (powmod64(x.v, (p - 1) / 2, p) != 1) return std::nullopt;
    // Tonelli-Shanks; the quadratic nonresidue scan is deterministic
    uint32_t q = p - 1, s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    if (s == 1) return Fp(uint32_t(powmod64(x.v, (p + 1) / 4, p)), p);
    uint32_t z = 2;
    while (powmod64(z, (p - 1) / 2, p) == 1) ++z;
    uint64_t m = s, c = powmod64(z, q, p), t = powmod64(x.v, q, p),
             r = powmod64(x.v, (uint64_t(q) + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) { tt = (tt * tt) % p; ++i; }
        uint64_t b = c;
        for (uint64_t j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    return Fp(uint32_t(r), p);
}

inline std::optional<Fp> nth_root_of_unity(const FpField& F, uint32_t n) {
    if (n == 0) return std::nullopt;
    uint32_t p = F.p;
    if (n == 1) return F.one();
    if ((p - 1) % n != 0) return std::nullopt;
    std::vector<uint32_t> qs; // prime factors of n
    uint32_t m = n;
    for (uint32_t q = 2; uint64_t(q) * q <= m; ++q)
        if (m % q == 0) {
            qs.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) qs.push_back(m);
    for (uint32_t z = 2; z < p; ++z) {
        if (powmod64(z, n, p) != 1) continue;
        bool primitive = true;
        for (uint32_t q : qs)
            if (powmod64(z, n / q, p) == 1) { primitive = false; break; }
        if (primitive) return Fp(z, p);
    }
    return std::nullopt;
}

} // namespace kf
