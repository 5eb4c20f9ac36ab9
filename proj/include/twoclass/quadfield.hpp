#ifndef TWOCLASS_QUADFIELD_HPP
#define TWOCLASS_QUADFIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "twoclass/arith.hpp"
#include "twoclass/forms.hpp"

namespace twoclass::quadfield {

inline constexpr std::size_t default_digit_cap = 1000000;

/* The fundamental unit would need more decimal digits than allowed. */
struct unit_too_large : std::runtime_error {
    std::uint64_t d;
    std::size_t cap;
    unit_too_large(std::uint64_t d_, std::size_t cap_)
        : std::runtime_error("fundamental unit of Q(sqrt " + std::to_string(d_) + ") exceeds "
                             + std::to_string(cap_) + " digits"),
          d(d_), cap(cap_)
    {
    }
};

/* eps = (X + Y sqrt d) / den with den in {1, 2}. */
struct QuadUnit {
    std::uint64_t d = 0;
    Integer X, Y;
    int den = 1;
    int norm = 1;

    Rational x() const { return Rational(X, den); }
    Rational y() const { return Rational(Y, den); }
    bool integral() const { return den == 1; }
};

/* Smallest unit > 1 of the maximal order of Q(sqrt d). */
QuadUnit fundamental_unit(std::uint64_t d, std::size_t digit_cap = default_digit_cap);
int unit_norm(std::uint64_t d, std::size_t digit_cap = default_digit_cap);

/* d if d = 1 mod 4, else 4d. */
std::int64_t fundamental_discriminant(std::uint64_t d);
bool is_fundamental_discriminant(std::int64_t D);

/* Structure of the form class group of discriminant D. `generators` are the
 * forms that enlarged the group, in order; the first one is the class of
 * (-1, b0, -c0) whenever that class is nontrivial. */
struct NarrowClassGroup {
    std::int64_t D = 0;
    AbelianType structure;
    std::size_t order = 1;
    std::vector<Form> generators;
    IntMatrix relations;
    bool negative_class_trivial = true;
};

NarrowClassGroup narrow_class_group(std::int64_t D);

struct ClassData {
    std::uint64_t d = 0;
    std::size_t h = 1;
    std::size_t h_plus = 1;
    AbelianType structure;
    AbelianType narrow;
    AbelianType two_sylow;
    Integer h2 = 1;
};

/* Ordinary class group of Q(sqrt d) as Cl+ modulo the class of (-1, b0, -c0). */
ClassData class_group(std::uint64_t d);
Integer h2(std::uint64_t d);

enum class Splitting { split, inert, ramified };
std::string to_string(Splitting s);

/* A rational prime or the infinite place. */
struct Place {
    bool infinite = false;
    std::uint64_t p = 0;

    static Place infinity() { return Place{true, 0}; }
    static Place prime(std::uint64_t p) { return Place{false, p}; }
};

/* Behaviour of a place of Q in Q(sqrt d); d squarefree, possibly negative. */
Splitting prime_splitting(Place v, std::int64_t d);

/* Memoised class groups and units, safe for concurrent use. */
void set_cache_enabled(bool on);
void clear_cache();

} // namespace twoclass::quadfield

#endif
