#include "twoclass/arith.hpp"

#include <algorithm>
#include <sstream>

namespace twoclass {

std::string to_string(Integer const & n)
{
    return n.get_str();
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s)
{
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return false;
    }
    return true;
}

bool fits_u64(Integer const & n)
{
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(Integer const & n)
{
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, -1, sizeof r, 0, 0, n.get_mpz_t());
    return r;
}

void require_odd_prime(Integer const & p)
{
    if (p <= 2 || !is_prime(p))
        throw domain_error("modulus " + to_string(p) + " is not an odd prime");
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    /* this witness set is deterministic below 3.3e24 */
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (miller_rabin_witness(n, a, d, s))
            return false;
    }
    return true;
}

bool is_prime(Integer const & n)
{
    if (sgn(n) < 0)
        throw domain_error("is_prime: negative input");
    if (fits_u64(n))
        return is_prime(to_u64(n));
    /* 64 rounds: error below 4^-64 = 2^-128 */
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

SymbolValue legendre_symbol(Integer const & a, Integer const & p)
{
    require_odd_prime(p);
    Integer r;
    Integer e = (p - 1) / 2;
    Integer am = a % p;
    if (am < 0)
        am += p;
    mpz_powm(r.get_mpz_t(), am.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (r == 0)
        return 0;
    return r == 1 ? 1 : -1;
}

SymbolValue quartic_symbol(Integer const & a, Integer const & p)
{
    require_odd_prime(p);
    if (p % 4 != 1)
        throw domain_error("quartic symbol needs p = 1 mod 4, got p = " + to_string(p));
    if (legendre_symbol(a, p) != 1)
        throw domain_error("quartic symbol undefined: " + to_string(a) +
                           " is not a quadratic residue mod " + to_string(p));
    Integer r;
    Integer e = (p - 1) / 4;
    Integer am = a % p;
    if (am < 0)
        am += p;
    mpz_powm(r.get_mpz_t(), am.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (r == 1)
        return 1;
    if (r == p - 1)
        return -1;
    throw std::logic_error("quartic symbol: power residue outside {+1,-1}");
}

std::optional<Integer> exact_sqrt(Integer const & n)
{
    if (sgn(n) < 0)
        return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t()))
        return std::nullopt;
    Integer t;
    mpz_sqrt(t.get_mpz_t(), n.get_mpz_t());
    return t;
}

std::uint64_t isqrt(std::uint64_t n)
{
    std::uint64_t r = 0;
    for (int b = 31; b >= 0; --b) {
        std::uint64_t c = r | (std::uint64_t{1} << b);
        if (static_cast<u128>(c) * c <= n)
            r = c;
    }
    return r;
}

bool is_squarefree(std::uint64_t n)
{
    if (n == 0)
        return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0)
            return false;
    }
    return true;
}

std::optional<std::uint64_t> sqrt_mod_prime(std::uint64_t n, std::uint64_t p)
{
    n %= p;
    if (p == 2 || n == 0)
        return n;
    if (powmod(n, (p - 1) / 2, p) != 1)
        return std::nullopt;
    if (p % 4 == 3)
        return powmod(n, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(n, q, p);
    std::uint64_t r = powmod(n, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j)
            b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows_init)
{
    nrows = rows_init.size();
    ncols = nrows ? rows_init.begin()->size() : 0;
    for (auto const & row : rows_init) {
        if (row.size() != ncols)
            throw domain_error("IntMatrix: ragged initializer");
        for (long v : row)
            data.emplace_back(v);
    }
}

void IntMatrix::append_row(std::vector<Integer> const & row)
{
    if (nrows == 0 && ncols == 0)
        ncols = row.size();
    if (row.size() != ncols)
        throw domain_error("IntMatrix: row length mismatch");
    data.insert(data.end(), row.begin(), row.end());
    ++nrows;
}

std::vector<Integer> smith_normal_form(IntMatrix M)
{
    std::size_t const R = M.rows(), C = M.cols();
    std::size_t const n = std::min(R, C);
    std::vector<Integer> out;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < C; ++j)
            std::swap(M(a, j), M(b, j));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < R; ++i)
            std::swap(M(i, a), M(i, b));
    };

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            /* pivot: smallest nonzero magnitude in the trailing block */
            std::size_t pi = R, pj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (sgn(M(i, j)) != 0 && (pi == R || abs(M(i, j)) < abs(M(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == R)
                goto done;
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            Integer const piv = M(t, t);
            for (std::size_t i = t + 1; i < R; ++i) {
                if (sgn(M(i, t)) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), M(i, t).get_mpz_t(), piv.get_mpz_t());
                for (std::size_t j = t; j < C; ++j)
                    M(i, j) -= q * M(t, j);
                if (sgn(M(i, t)) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (sgn(M(t, j)) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), M(t, j).get_mpz_t(), piv.get_mpz_t());
                for (std::size_t i = t; i < R; ++i)
                    M(i, j) -= q * M(i, t);
                if (sgn(M(t, j)) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            /* divisibility of the rest of the block by the pivot */
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (!mpz_divisible_p(M(i, j).get_mpz_t(), piv.get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == R)
                break;
            for (std::size_t j = t; j < C; ++j)
                M(t, j) += M(bad, j);
        }
        out.push_back(abs(M(t, t)));
    }
done:
    return out;
}

AbelianType AbelianType::from_invariants(std::vector<Integer> const & snf)
{
    AbelianType a;
    for (auto const & d : snf) {
        if (sgn(d) == 0)
            throw domain_error("AbelianType: infinite cyclic factor");
        if (abs(d) != 1)
            a.divisors.push_back(abs(d));
    }
    std::sort(a.divisors.begin(), a.divisors.end());
    for (std::size_t i = 1; i < a.divisors.size(); ++i)
        if (!mpz_divisible_p(a.divisors[i].get_mpz_t(), a.divisors[i - 1].get_mpz_t()))
            throw std::logic_error("AbelianType: invariants do not form a divisor chain");
    return a;
}

AbelianType::AbelianType(std::vector<Integer> const & cyclic_orders)
{
    IntMatrix D(cyclic_orders.size(), cyclic_orders.size());
    for (std::size_t i = 0; i < cyclic_orders.size(); ++i) {
        if (sgn(cyclic_orders[i]) <= 0)
            throw domain_error("AbelianType: cyclic orders must be positive");
        D(i, i) = cyclic_orders[i];
    }
    *this = from_invariants(smith_normal_form(D));
}

AbelianType::AbelianType(std::initializer_list<long> cyclic_orders)
    : AbelianType(std::vector<Integer>(cyclic_orders.begin(), cyclic_orders.end()))
{
}

Integer AbelianType::order() const
{
    Integer o = 1;
    for (auto const & d : divisors)
        o *= d;
    return o;
}

std::size_t AbelianType::p_rank(unsigned long p) const
{
    return std::count_if(divisors.begin(), divisors.end(),
                         [p](Integer const & d) { return mpz_divisible_ui_p(d.get_mpz_t(), p); });
}

AbelianType AbelianType::two_sylow() const
{
    std::vector<Integer> parts;
    for (auto const & d : divisors)
        parts.push_back(two_part(d));
    return AbelianType(parts);
}

std::string AbelianType::str() const
{
    if (divisors.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        if (i)
            s += 'x';
        s += divisors[i].get_str();
    }
    return s;
}

AbelianType AbelianType::parse(std::string const & s)
{
    if (s == "1" || s.empty())
        return AbelianType();
    std::vector<Integer> orders;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw domain_error("AbelianType: cannot parse '" + s + "'");
        orders.emplace_back(tok);
    }
    return AbelianType(orders);
}

unsigned long two_valuation(Integer const & n)
{
    if (sgn(n) == 0)
        throw domain_error("two_valuation(0)");
    return mpz_scan1(n.get_mpz_t(), 0);
}

Integer two_part(Integer const & n)
{
    return pow2(two_valuation(n));
}

Integer pow2(unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

} // namespace twoclass
