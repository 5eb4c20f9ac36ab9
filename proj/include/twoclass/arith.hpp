#ifndef TWOCLASS_ARITH_HPP
#define TWOCLASS_ARITH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace twoclass {

using Integer = mpz_class;
using Rational = mpq_class;

/* Raised when an argument is outside the mathematical domain of an
 * operation (non-prime modulus, undefined residue symbol, ...). */
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/* Residue symbol value, always one of -1, 0, +1. */
using SymbolValue = int;

std::string to_string(Integer const & n);

bool is_prime(Integer const & n);
bool is_prime(std::uint64_t n);

/* Euler criterion a^((p-1)/2) mod p. p must be an odd prime. */
SymbolValue legendre_symbol(Integer const & a, Integer const & p);

/* a^((p-1)/4) mod p, defined only for p = 1 mod 4 and (a/p) = +1. */
SymbolValue quartic_symbol(Integer const & a, Integer const & p);

/* Exact integer square root when n is a perfect square. */
std::optional<Integer> exact_sqrt(Integer const & n);
inline bool is_perfect_square(Integer const & n) { return exact_sqrt(n).has_value(); }

inline int kronecker_delta(long a, long b) { return a == b ? 1 : 0; }

/* A square root of n modulo the odd prime p (Tonelli-Shanks); nullopt if
 * n is a non-residue. */
std::optional<std::uint64_t> sqrt_mod_prime(std::uint64_t n, std::uint64_t p);

std::uint64_t isqrt(std::uint64_t n);
bool is_squarefree(std::uint64_t n);

/* Primes <= bound, by sieve. */
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/* Dense integer matrix, row major. */
class IntMatrix
{
    std::size_t nrows = 0, ncols = 0;
    std::vector<Integer> data;

  public:
    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : nrows(r), ncols(c), data(r * c) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return nrows; }
    std::size_t cols() const { return ncols; }
    Integer & operator()(std::size_t i, std::size_t j) { return data[i * ncols + j]; }
    Integer const & operator()(std::size_t i, std::size_t j) const { return data[i * ncols + j]; }

    void append_row(std::vector<Integer> const & row);
};

/* Nonzero invariant factors d1 | d2 | ... of M, including the unit ones. */
std::vector<Integer> smith_normal_form(IntMatrix M);

/* Finite abelian group as its invariant factors d1 | d2 | ... , all >= 2.
 * Empty list is the trivial group. */
class AbelianType
{
    std::vector<Integer> divisors;

  public:
    AbelianType() = default;
    /* Accepts any list of cyclic orders; normalises to invariant factors. */
    explicit AbelianType(std::vector<Integer> const & cyclic_orders);
    AbelianType(std::initializer_list<long> cyclic_orders);

    static AbelianType from_invariants(std::vector<Integer> const & snf);

    std::vector<Integer> const & invariants() const { return divisors; }
    std::size_t rank() const { return divisors.size(); }
    Integer order() const;
    /* Number of invariant factors divisible by p. */
    std::size_t p_rank(unsigned long p) const;
    AbelianType two_sylow() const;

    /* "2x4" style, "1" for the trivial group. */
    std::string str() const;
    static AbelianType parse(std::string const & s);

    bool operator==(AbelianType const & o) const { return divisors == o.divisors; }
};

/* 2-adic valuation and odd part helpers. */
unsigned long two_valuation(Integer const & n);
Integer two_part(Integer const & n);
Integer pow2(unsigned long e);

} // namespace twoclass

#endif
