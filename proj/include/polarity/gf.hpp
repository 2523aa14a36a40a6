#pragma once

// Exact arithmetic in GF(p^k), k <= 4, p^k <= 2^16.
//
// Elements are dense coefficient vectors over GF(p), least-degree first,
// always reduced modulo a fixed monic irreducible polynomial.  Fields with
// q <= 2^12 precompute exp/log tables over a generator, so multiplication
// and inversion in the inner loops are table lookups.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarity {

class Field;
class FieldElem;

namespace detail {

inline constexpr int kMaxExtensionDegree = 4;
inline constexpr int kMaxFieldOrder = 1 << 16;
inline constexpr int kTableOrderLimit = 1 << 12;
inline constexpr std::uint16_t kNoLog = 0xFFFF;

using Coeffs = std::array<std::uint16_t, kMaxExtensionDegree>;

struct FieldData {
    int p = 0;
    int k = 0;
    int q = 0;
    std::vector<int> modulus;  // k+1 coefficients, constant term first, monic
    bool has_tables = false;
    std::vector<std::uint16_t> exp_table;  // exp_table[i] = rank of g^i, i in [0, q-1)
    std::vector<std::uint16_t> log_table;  // inverse map; log_table[0] = kNoLog

    // lexicographic rank of a coefficient vector (c0 is the most significant digit)
    int rank(const Coeffs& c) const {
        int r = 0;
        for (int i = 0; i < k; ++i) r = r * p + c[i];
        return r;
    }

    Coeffs unrank(int r) const {
        Coeffs c{};
        for (int i = k - 1; i >= 0; --i) {
            c[i] = static_cast<std::uint16_t>(r % p);
            r /= p;
        }
        return c;
    }

    bool is_zero(const Coeffs& c) const {
        for (int i = 0; i < k; ++i)
            if (c[i] != 0) return false;
        return true;
    }

    Coeffs add(const Coeffs& a, const Coeffs& b) const {
        Coeffs r{};
        for (int i = 0; i < k; ++i) r[i] = static_cast<std::uint16_t>((a[i] + b[i]) % p);
        return r;
    }

    Coeffs neg(const Coeffs& a) const {
        Coeffs r{};
        for (int i = 0; i < k; ++i) r[i] = static_cast<std::uint16_t>((p - a[i]) % p);
        return r;
    }

    // schoolbook product reduced by the monic modulus
    Coeffs mul_poly(const Coeffs& a, const Coeffs& b) const {
        std::array<long long, 2 * kMaxExtensionDegree - 1> prod{};
        for (int i = 0; i < k; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < k; ++j)
                prod[i + j] = (prod[i + j] + static_cast<long long>(a[i]) * b[j]) % p;
        }
        for (int d = 2 * k - 2; d >= k; --d) {
            long long c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (int j = 0; j < k; ++j)
                prod[d - k + j] = ((prod[d - k + j] - c * modulus[j]) % p + p) % p;
        }
        Coeffs r{};
        for (int i = 0; i < k; ++i) r[i] = static_cast<std::uint16_t>(prod[i]);
        return r;
    }

    Coeffs mul(const Coeffs& a, const Coeffs& b) const {
        if (is_zero(a) || is_zero(b)) return Coeffs{};
        if (has_tables) {
            int la = log_table[rank(a)], lb = log_table[rank(b)];
            return unrank(exp_table[(la + lb) % (q - 1)]);
        }
        if (k == 1) {
            Coeffs r{};
            r[0] = static_cast<std::uint16_t>(static_cast<long long>(a[0]) * b[0] % p);
            return r;
        }
        return mul_poly(a, b);
    }

    Coeffs pow(Coeffs a, unsigned long long n) const {
        Coeffs r{};
        r[0] = 1;  // empty product
        while (n) {
            if (n & 1ULL) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    Coeffs inv(const Coeffs& a) const {
        if (is_zero(a)) throw std::domain_error("gf: inversion of zero");
        if (has_tables) {
            int la = log_table[rank(a)];
            return unrank(exp_table[(q - 1 - la) % (q - 1)]);
        }
        return pow(a, static_cast<unsigned long long>(q - 2));
    }
};

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

/// One element of a finite field.  Canonical form: all coefficients in [0,p);
/// elements compare equal iff their coefficient vectors are equal.
class FieldElem {
  public:
    FieldElem() = default;

    bool is_zero() const { return data().is_zero(c_); }
    int coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    int degree_bound() const { return data().k; }

    /// Lexicographic rank among all field elements (consistent with operator<).
    int rank() const { return data().rank(c_); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        const auto& f = a.joint(b);
        return FieldElem(f.add(a.c_, b.c_), &f);
    }
    friend FieldElem operator-(const FieldElem& a) { return FieldElem(a.data().neg(a.c_), a.f_); }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        const auto& f = a.joint(b);
        return FieldElem(f.add(a.c_, f.neg(b.c_)), &f);
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        const auto& f = a.joint(b);
        return FieldElem(f.mul(a.c_, b.c_), &f);
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        const auto& f = a.joint(b);
        return FieldElem(f.mul(a.c_, f.inv(b.c_)), &f);
    }

    FieldElem inverse() const { return FieldElem(data().inv(c_), f_); }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        a.joint(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    // coefficient-vector order, least-degree coefficient compared first
    friend bool operator<(const FieldElem& a, const FieldElem& b) {
        a.joint(b);
        for (int i = 0; i < a.data().k; ++i)
            if (a.c_[static_cast<std::size_t>(i)] != b.c_[static_cast<std::size_t>(i)])
                return a.c_[static_cast<std::size_t>(i)] < b.c_[static_cast<std::size_t>(i)];
        return false;
    }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < data().k; ++i) {
            if (i) s += ',';
            s += std::to_string(c_[static_cast<std::size_t>(i)]);
        }
        return s + "]";
    }

  private:
    friend class Field;
    friend FieldElem pow(const FieldElem&, unsigned long long);

    FieldElem(detail::Coeffs c, const detail::FieldData* f) : c_(c), f_(f) {}

    const detail::FieldData& data() const {
        if (!f_) throw std::invalid_argument("gf: element has no field");
        return *f_;
    }

    const detail::FieldData& joint(const FieldElem& other) const {
        const auto& f = data();
        if (f_ != other.f_)
            throw std::invalid_argument("gf: elements from different fields");
        return f;
    }

    detail::Coeffs c_{};
    const detail::FieldData* f_ = nullptr;
};

inline FieldElem pow(const FieldElem& a, unsigned long long n) {
    return FieldElem(a.data().pow(a.c_, n), a.f_);
}

/// Cheap shared handle to an immutable finite field description.
///
/// make(p, k) uses the fixed modulus table below so that element labels,
/// point ids and certificates are identical across runs and machines.
/// A user-supplied modulus is validated (monic, degree k, irreducible) and
/// overrides the table.
class Field {
  public:
    Field() = default;

    static Field make(int p, int k) {
        if (k == 1) return finish(p, k, {0, 1});
        for (const auto& e : default_moduli())
            if (e.p == p && e.k == k) return finish(p, k, e.modulus);
        throw std::invalid_argument("gf: no default modulus for GF(" + std::to_string(p) + "^" +
                                    std::to_string(k) + "); supply one explicitly");
    }

    static Field make(int p, int k, std::vector<int> modulus) { return finish(p, k, std::move(modulus)); }

    bool valid() const { return d_ != nullptr; }
    int p() const { return data().p; }
    int k() const { return data().k; }
    int q() const { return data().q; }
    const std::vector<int>& modulus() const { return data().modulus; }

    FieldElem zero() const { return FieldElem(detail::Coeffs{}, d_.get()); }
    FieldElem one() const { return from_rank(data().rank(unit())); }

    /// The class of x in GF(p)[x]/(modulus); only meaningful for k >= 2.
    FieldElem x() const {
        if (data().k < 2) throw std::invalid_argument("gf: x() requires an extension field");
        detail::Coeffs c{};
        c[1] = 1;
        return FieldElem(c, d_.get());
    }

    /// Element from explicit coefficients (least-degree first, padded with zeros).
    FieldElem elem(std::initializer_list<int> coeffs) const {
        const auto& f = data();
        if (static_cast<int>(coeffs.size()) > f.k)
            throw std::invalid_argument("gf: too many coefficients");
        detail::Coeffs c{};
        int i = 0;
        for (int v : coeffs) {
            if (v < 0 || v >= f.p) throw std::invalid_argument("gf: coefficient out of range");
            c[static_cast<std::size_t>(i++)] = static_cast<std::uint16_t>(v);
        }
        return FieldElem(c, d_.get());
    }

    /// Constant polynomial v mod p (the prime-subfield embedding of an integer).
    FieldElem scalar(long long v) const {
        const auto& f = data();
        detail::Coeffs c{};
        c[0] = static_cast<std::uint16_t>(((v % f.p) + f.p) % f.p);
        return FieldElem(c, d_.get());
    }

    FieldElem from_rank(int r) const {
        const auto& f = data();
        if (r < 0 || r >= f.q) throw std::invalid_argument("gf: rank out of range");
        return FieldElem(f.unrank(r), d_.get());
    }

    /// All q elements in ascending coefficient-vector order.
    std::vector<FieldElem> elements() const {
        std::vector<FieldElem> out;
        out.reserve(static_cast<std::size_t>(q()));
        for (int r = 0; r < q(); ++r) out.push_back(from_rank(r));
        return out;
    }

    friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

  private:
    struct DefaultModulus {
        int p, k;
        std::vector<int> modulus;
    };

    static const std::vector<DefaultModulus>& default_moduli() {
        // x^2+x+1, x^3+x+1, x^2+1, x^4+x+1, x^2+2, x^3+2x+1
        static const std::vector<DefaultModulus> table = {
            {2, 2, {1, 1, 1}},    {2, 3, {1, 1, 0, 1}}, {3, 2, {1, 0, 1}},
            {2, 4, {1, 1, 0, 0, 1}}, {5, 2, {2, 0, 1}},    {3, 3, {1, 2, 0, 1}},
        };
        return table;
    }

    detail::Coeffs unit() const {
        detail::Coeffs c{};
        c[0] = 1;
        return c;
    }

    static Field finish(int p, int k, std::vector<int> modulus) {
        if (!detail::is_prime(p)) throw std::invalid_argument("gf: p = " + std::to_string(p) + " is not prime");
        if (k < 1 || k > detail::kMaxExtensionDegree)
            throw std::invalid_argument("gf: extension degree must be in [1,4]");
        long long q = 1;
        for (int i = 0; i < k; ++i) {
            q *= p;
            if (q > detail::kMaxFieldOrder) throw std::invalid_argument("gf: field order exceeds 2^16");
        }
        validate_modulus(p, k, modulus);

        auto d = std::make_shared<detail::FieldData>();
        d->p = p;
        d->k = k;
        d->q = static_cast<int>(q);
        d->modulus = std::move(modulus);
        if (d->q <= detail::kTableOrderLimit) build_tables(*d);
        Field f;
        f.d_ = std::move(d);
        return f;
    }

    static void validate_modulus(int p, int k, const std::vector<int>& m) {
        if (static_cast<int>(m.size()) != k + 1)
            throw std::invalid_argument("gf: modulus must have degree k");
        for (int c : m)
            if (c < 0 || c >= p) throw std::invalid_argument("gf: modulus coefficient out of range");
        if (m.back() != 1) throw std::invalid_argument("gf: modulus must be monic");
        if (k == 1) {
            if (m[0] != 0) throw std::invalid_argument("gf: prime-field modulus must be x");
            return;
        }
        // no root in the base field: rules out linear factors (sufficient for k <= 3)
        for (int t = 0; t < p; ++t) {
            long long v = 0, tp = 1;
            for (int i = 0; i <= k; ++i) {
                v = (v + m[static_cast<std::size_t>(i)] * tp) % p;
                tp = tp * t % p;
            }
            if (v == 0)
                throw std::invalid_argument("gf: modulus is reducible (root at " + std::to_string(t) + ")");
        }
        if (k == 4) {
            // also rule out a split into two quadratics
            for (int b = 0; b < p; ++b)
                for (int c = 0; c < p; ++c)
                    if (divides_quadratic(p, m, b, c))
                        throw std::invalid_argument("gf: modulus has quadratic factor x^2+" +
                                                    std::to_string(b) + "x+" + std::to_string(c));
        }
    }

    // does x^2 + bx + c divide m over GF(p)?
    static bool divides_quadratic(int p, const std::vector<int>& m, int b, int c) {
        std::vector<long long> r(m.begin(), m.end());
        for (int d = static_cast<int>(r.size()) - 1; d >= 2; --d) {
            long long f = r[static_cast<std::size_t>(d)] % p;
            if (f == 0) continue;
            r[static_cast<std::size_t>(d)] = 0;
            r[static_cast<std::size_t>(d - 1)] = ((r[static_cast<std::size_t>(d - 1)] - f * b) % p + p) % p;
            r[static_cast<std::size_t>(d - 2)] = ((r[static_cast<std::size_t>(d - 2)] - f * c) % p + p) % p;
        }
        return r[0] % p == 0 && r[1] % p == 0;
    }

    static void build_tables(detail::FieldData& d) {
        // find a generator of the multiplicative group, then tabulate its powers
        std::vector<int> prime_factors;
        int m = d.q - 1;
        for (int f = 2; f * f <= m; ++f)
            if (m % f == 0) {
                prime_factors.push_back(f);
                while (m % f == 0) m /= f;
            }
        if (m > 1) prime_factors.push_back(m);

        auto is_unit = [&](const detail::Coeffs& t) {
            if (t[0] != 1) return false;
            for (int i = 1; i < d.k; ++i)
                if (t[static_cast<std::size_t>(i)] != 0) return false;
            return true;
        };
        detail::Coeffs gen{};
        bool found = false;
        for (int r = 1; r < d.q && !found; ++r) {
            detail::Coeffs cand = d.unrank(r);
            found = true;
            for (int f : prime_factors)
                if (is_unit(d.pow(cand, static_cast<unsigned long long>((d.q - 1) / f)))) {
                    found = false;
                    break;
                }
            if (found) gen = cand;
        }
        if (!found) throw std::logic_error("gf: no generator found (modulus not irreducible?)");

        d.exp_table.assign(static_cast<std::size_t>(d.q - 1), 0);
        d.log_table.assign(static_cast<std::size_t>(d.q), detail::kNoLog);
        detail::Coeffs cur{};
        cur[0] = 1;
        for (int i = 0; i < d.q - 1; ++i) {
            int r = d.rank(cur);
            d.exp_table[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(r);
            if (d.log_table[static_cast<std::size_t>(r)] != detail::kNoLog)
                throw std::logic_error("gf: generator order too small (modulus not irreducible?)");
            d.log_table[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(i);
            cur = d.mul_poly(cur, gen);
        }
        d.has_tables = true;
    }

    const detail::FieldData& data() const {
        if (!d_) throw std::invalid_argument("gf: empty field handle");
        return *d_;
    }

    std::shared_ptr<const detail::FieldData> d_;
};

}  // namespace polarity
