#include "weilgamma/numutil.hpp"

#include "weilgamma/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace weilgamma {

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<long, long>> factorize_long(long n) {
    std::vector<std::pair<long, long>> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            long e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long euler_phi(long n) {
    long result = n;
    for (auto [p, e] : factorize_long(n)) result = result / p * (p - 1);
    return result;
}

long pow_mod_long(long base, long exp, long mod) {
    Int b = base, m = mod, r;
    mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp), m.get_mpz_t());
    return r.get_si();
}

long mul_order(long a, long m) {
    a = mod_floor(a, m);
    if (std::gcd(a, m) != 1) fail(ErrorKind::UnsupportedRing, "mul_order requires gcd(a, m) = 1");
    long order = 1;
    long x = a % m;
    while (x != 1 % m) {
        x = static_cast<long>((static_cast<unsigned long long>(x) * a) % m);
        ++order;
        if (order > m) fail(ErrorKind::NotFiniteOrder, "order search exceeded modulus");
    }
    return order;
}

long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

namespace {

// exact division of integer polynomials, used to build cyclotomic polynomials
std::vector<Int> zpoly_divexact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
    for (long i = static_cast<long>(rem.size()) - 1; i >= static_cast<long>(den.size()) - 1; --i) {
        // den is monic
        Int c = rem[static_cast<size_t>(i)];
        if (c == 0) continue;
        size_t qi = static_cast<size_t>(i) - (den.size() - 1);
        quot[qi] = c;
        for (size_t j = 0; j < den.size(); ++j) rem[qi + j] -= c * den[j];
    }
    for (const Int& c : rem)
        if (c != 0) fail(ErrorKind::UnsupportedRing, "inexact polynomial division");
    return quot;
}

} // namespace

const std::vector<Int>& cyclotomic_poly(long m) {
    static std::mutex mtx;
    static std::map<long, std::vector<Int>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // x^m - 1 divided by the product of Phi_d for proper divisors d of m
    std::vector<Int> num(static_cast<size_t>(m) + 1, Int(0));
    num[0] = -1;
    num[static_cast<size_t>(m)] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        auto phid = cache.find(d);
        if (phid == cache.end()) {
            // recursive fill without re-locking: compute divisors in increasing order
            // (d < m so a direct recursion terminates; release not needed since we
            // hold the lock and compute iteratively below)
            std::vector<Int> sub(static_cast<size_t>(d) + 1, Int(0));
            sub[0] = -1;
            sub[static_cast<size_t>(d)] = 1;
            for (long e = 1; e < d; ++e)
                if (d % e == 0) sub = zpoly_divexact(sub, cache.at(e));
            cache.emplace(d, std::move(sub));
        }
        num = zpoly_divexact(num, cache.at(d));
    }
    auto [pos, inserted] = cache.emplace(m, std::move(num));
    (void)inserted;
    return pos->second;
}

long smallest_primitive_root(long ell) {
    if (ell == 2) return 1;
    auto factors = factorize_long(ell - 1);
    for (long g = 2; g < ell; ++g) {
        bool ok = true;
        for (auto [p, e] : factors) {
            if (pow_mod_long(g, (ell - 1) / p, ell) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    fail(ErrorKind::UnsupportedRing, "no primitive root found");
}

namespace {

// polynomial arithmetic over F_ell, dense, constant first
std::vector<long> fpoly_mulmod(const std::vector<long>& a, const std::vector<long>& b,
                               const std::vector<long>& f, long ell) {
    std::vector<long> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<long>((c[i + j] + static_cast<unsigned long long>(a[i]) * static_cast<unsigned long long>(b[j])) % static_cast<unsigned long long>(ell));
    }
    size_t deg = f.size() - 1;
    for (size_t i = c.size(); i-- > deg;) {
        long coeff = c[i];
        if (coeff == 0) continue;
        c[i] = 0;
        for (size_t j = 0; j < deg; ++j)
            c[i - deg + j] = mod_floor(c[i - deg + j] - coeff * f[j], ell);
    }
    c.resize(deg);
    return c;
}

std::vector<long> fpoly_powmod(std::vector<long> base, Int exp, const std::vector<long>& f, long ell) {
    size_t deg = f.size() - 1;
    std::vector<long> result(deg, 0);
    result[0] = 1;
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) result = fpoly_mulmod(result, base, f, ell);
        base = fpoly_mulmod(base, base, f, ell);
        exp >>= 1;
    }
    return result;
}

bool fpoly_is_one(const std::vector<long>& a) {
    if (a.empty() || a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}

bool fpoly_equals_x(const std::vector<long>& a) {
    if (a.size() < 2 || a[0] != 0 || a[1] != 1) return false;
    for (size_t i = 2; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}

std::vector<long> fpoly_gcd(std::vector<long> a, std::vector<long> b, long ell) {
    auto trim = [](std::vector<long>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        long lead_inv = pow_mod_long(b.back(), ell - 2, ell);
        while (a.size() >= b.size()) {
            long c = static_cast<long>((static_cast<unsigned long long>(a.back()) * static_cast<unsigned long long>(lead_inv)) % static_cast<unsigned long long>(ell));
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[shift + j] = mod_floor(a[shift + j] - c * b[j], ell);
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool ff_poly_irreducible(const std::vector<long>& f, long ell, long r) {
    // x^(ell^r) == x mod f and gcd(x^(ell^(r/p)) - x, f) = 1 for primes p | r
    Int q = 1;
    for (long i = 0; i < r; ++i) q *= ell;
    std::vector<long> x(static_cast<size_t>(r), 0);
    if (r == 1) return true;
    x[1] = 1;
    auto xq = fpoly_powmod(x, q, f, ell);
    if (!fpoly_equals_x(xq)) return false;
    for (auto [p, e] : factorize_long(r)) {
        Int qs = 1;
        for (long i = 0; i < r / p; ++i) qs *= ell;
        auto xs = fpoly_powmod(x, qs, f, ell);
        // xs - x
        std::vector<long> diff = xs;
        diff[1] = mod_floor(diff[1] - 1, ell);
        auto g = fpoly_gcd(diff, f, ell);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

bool ff_poly_primitive(const std::vector<long>& f, long ell, long r) {
    Int qm1 = 1;
    for (long i = 0; i < r; ++i) qm1 *= ell;
    qm1 -= 1;
    if (!qm1.fits_slong_p())
        fail(ErrorKind::UnsupportedRing, "finite field too large for primitivity search");
    long n = qm1.get_si();
    std::vector<long> x(static_cast<size_t>(r), 0);
    x[1 % r] = 1;
    if (r == 1) return true; // handled by primitive root path
    auto full = fpoly_powmod(x, Int(n), f, ell);
    if (!fpoly_is_one(full)) return false;
    for (auto [p, e] : factorize_long(n)) {
        auto part = fpoly_powmod(x, Int(n / p), f, ell);
        if (fpoly_is_one(part)) return false;
    }
    return true;
}

} // namespace

const std::vector<long>& ff_defining_poly(long ell, long r) {
    static std::mutex mtx;
    static std::map<std::pair<long, long>, std::vector<long>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(ell, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<long> f;
    if (r == 1) {
        // x - g with g the smallest primitive root
        long g = smallest_primitive_root(ell);
        f = {mod_floor(-g, ell), 1};
    } else {
        double size = 1;
        for (long i = 0; i < r; ++i) size *= static_cast<double>(ell);
        if (size > 5e7) fail(ErrorKind::UnsupportedRing, "finite field too large");
        long count = 1;
        for (long i = 0; i < r; ++i) count *= ell;
        for (long code = 0; code < count; ++code) {
            std::vector<long> cand(static_cast<size_t>(r) + 1, 0);
            long c = code;
            for (long i = 0; i < r; ++i) { cand[static_cast<size_t>(i)] = c % ell; c /= ell; }
            cand[static_cast<size_t>(r)] = 1;
            if (cand[0] == 0) continue;
            if (ff_poly_irreducible(cand, ell, r) && ff_poly_primitive(cand, ell, r)) {
                f = cand;
                break;
            }
        }
        if (f.empty()) fail(ErrorKind::UnsupportedRing, "no primitive polynomial found");
    }
    auto [pos, inserted] = cache.emplace(key, std::move(f));
    (void)inserted;
    return pos->second;
}

Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

} // namespace weilgamma
