#include "codegraph/field.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace codegraph {
namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Dense polynomial over GF(p), coefficient of x^i at position i.
using Poly = std::vector<int>;

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    a = trim(std::move(a));
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int da = static_cast<int>(a.size()) - 1;
        // m is monic, so the quotient digit is just the leading coefficient.
        const int c = a[da];
        for (int i = 0; i <= dm; ++i) {
            int& t = a[da - dm + i];
            t = (t - c * m[i]) % p;
            if (t < 0) t += p;
        }
        a = trim(std::move(a));
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return trim(std::move(r));
}

// Decode k = c_0 + c_1 p + ... into a polynomial with those coefficients.
Poly decode(int k, int p, int len) {
    Poly c(len, 0);
    for (int i = 0; i < len; ++i) {
        c[i] = k % p;
        k /= p;
    }
    return trim(std::move(c));
}

bool divides(const Poly& d, const Poly& a, int p) {
    Poly r = poly_mod(a, d, p);
    return r.empty();
}

bool is_irreducible(const Poly& m, int p) {
    const int deg = static_cast<int>(m.size()) - 1;
    // Trial division by all monic polynomials of degree 1..deg/2.
    for (int dd = 1; 2 * dd <= deg; ++dd) {
        int count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (int low = 0; low < count; ++low) {
            Poly d = decode(low, p, dd + 1);
            d.resize(dd + 1, 0);
            d[dd] = 1;
            if (divides(d, m, p)) return false;
        }
    }
    return true;
}

} // namespace

std::shared_ptr<const Field> Field::make(int p, int e) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e < 1) throw std::invalid_argument("field extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxFieldOrder)
            throw std::invalid_argument("field order exceeds supported maximum of 64");
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->e_ = e;
    f->q_ = static_cast<int>(q);

    // Select the modulus (for e == 1 use the polynomial x, never consulted).
    Poly mod;
    if (e == 1) {
        mod = {0, 1};
    } else {
        int count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (int low = 0; low < count; ++low) {
            Poly cand = decode(low, p, e + 1);
            cand.resize(e + 1, 0);
            cand[e] = 1;
            if (is_irreducible(cand, p)) {
                mod = cand;
                break;
            }
        }
    }
    f->modulus_.assign(mod.begin(), mod.end());

    const int qi = f->q_;
    f->add_.assign(static_cast<std::size_t>(qi) * qi, 0);
    f->mul_.assign(static_cast<std::size_t>(qi) * qi, 0);
    f->neg_.assign(qi, 0);
    f->inv_.assign(qi, 0);

    auto to_poly = [&](int a) { return decode(a, p, e); };
    auto from_poly = [&](const Poly& a) {
        int v = 0, mult = 1;
        for (int i = 0; i < e; ++i) {
            v += (i < static_cast<int>(a.size()) ? a[i] : 0) * mult;
            mult *= p;
        }
        return v;
    };

    for (int a = 0; a < qi; ++a) {
        for (int b = 0; b < qi; ++b) {
            if (e == 1) {
                f->add_[static_cast<std::size_t>(a) * qi + b] = static_cast<GfElem>((a + b) % p);
                f->mul_[static_cast<std::size_t>(a) * qi + b] = static_cast<GfElem>((a * b) % p);
            } else {
                Poly pa = to_poly(a), pb = to_poly(b);
                Poly s(e, 0);
                for (int i = 0; i < e; ++i) {
                    int ca = i < static_cast<int>(pa.size()) ? pa[i] : 0;
                    int cb = i < static_cast<int>(pb.size()) ? pb[i] : 0;
                    s[i] = (ca + cb) % p;
                }
                f->add_[static_cast<std::size_t>(a) * qi + b] =
                    static_cast<GfElem>(from_poly(trim(s)));
                Poly m = poly_mod(poly_mul(pa, pb, p), mod, p);
                f->mul_[static_cast<std::size_t>(a) * qi + b] =
                    static_cast<GfElem>(from_poly(m));
            }
        }
    }
    for (int a = 0; a < qi; ++a) {
        for (int b = 0; b < qi; ++b) {
            if (f->add_[static_cast<std::size_t>(a) * qi + b] == 0) f->neg_[a] = static_cast<GfElem>(b);
            if (f->mul_[static_cast<std::size_t>(a) * qi + b] == 1) f->inv_[a] = static_cast<GfElem>(b);
        }
    }

    // Smallest element of multiplicative order q-1.
    for (int a = 1; a < qi; ++a) {
        int ord = 1;
        GfElem x = static_cast<GfElem>(a);
        while (x != 1) {
            x = f->mul(x, static_cast<GfElem>(a));
            ++ord;
        }
        if (ord == qi - 1) {
            f->primitive_ = static_cast<GfElem>(a);
            break;
        }
    }
    return f;
}

GfElem Field::inv(GfElem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in " + label());
    return inv_[a];
}

GfElem Field::pow(GfElem a, std::uint64_t m) const {
    GfElem r = 1, base = a;
    while (m > 0) {
        if (m & 1) r = mul(r, base);
        base = mul(base, base);
        m >>= 1;
    }
    return r;
}

FieldPtr make_field(int p, int e) { return Field::make(p, e); }

FieldPtr field_for_order(int q) {
    if (q < 2 || q > kMaxFieldOrder)
        throw std::invalid_argument("field order must lie in [2, 64]");
    for (int p = 2; p <= q; ++p) {
        if (!is_prime(p)) continue;
        int e = 0;
        int m = q;
        while (m % p == 0) { m /= p; ++e; }
        if (m == 1 && e >= 1) return Field::make(p, e);
        if (q % p == 0) break; // divisible by p but not a pure power of it
    }
    throw std::invalid_argument("field order must be a prime power");
}

std::string field_to_json(const Field& f) {
    nlohmann::ordered_json j;
    j["p"] = f.p();
    j["e"] = f.e();
    j["modulus"] = f.modulus();
    return j.dump();
}

} // namespace codegraph
