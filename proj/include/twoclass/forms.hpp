#ifndef TWOCLASS_FORMS_HPP
#define TWOCLASS_FORMS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twoclass/arith.hpp"

namespace twoclass::quadfield {

/* Indefinite binary quadratic form a x^2 + b xy + c y^2. Coefficients are
 * machine integers; the engine refuses discriminants above max_form_disc so
 * every intermediate fits in 128 bits. */
struct Form {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    bool operator==(Form const &) const = default;
    auto operator<=>(Form const &) const = default;
    std::string str() const;
};

inline constexpr std::int64_t max_form_disc = std::int64_t{1} << 50;

struct FormHash {
    std::size_t operator()(Form const & f) const noexcept
    {
        std::size_t h = std::hash<std::int64_t>{}(f.a);
        h = h * 1000003u ^ std::hash<std::int64_t>{}(f.b);
        return h * 1000003u ^ std::hash<std::int64_t>{}(f.c);
    }
};

/* Forms of one positive non-square discriminant, with the reduction
 * operator rho and Dirichlet composition. */
class FormArithmetic
{
    std::int64_t D;
    std::int64_t s; /* floor(sqrt(D)) */

  public:
    explicit FormArithmetic(std::int64_t disc);

    std::int64_t discriminant() const { return D; }
    std::int64_t sqrt_floor() const { return s; }

    bool is_reduced(Form const & f) const;
    Form rho(Form const & f) const;
    Form reduce(Form f) const;
    Form compose(Form const & f, Form const & g) const;
    Form principal() const;
    /* (-1, b0, -c0): the narrow class of the principal ideal generated
     * by an element of negative norm. */
    Form negative_principal() const;
    /* Prime form (p, b, c) for a prime p that is not inert; nullopt otherwise. */
    std::optional<Form> prime_form(std::uint64_t p) const;
    /* Reduced cycle containing a reduced form, starting at f. */
    std::vector<Form> cycle(Form const & f) const;
};

/* Proper equivalence classes of forms of discriminant D, discovered
 * lazily: each new class is registered by walking its reduced cycle. */
class FormClassRegistry
{
    FormArithmetic arith;
    std::unordered_map<Form, int, FormHash> index;
    std::vector<Form> canonical; /* lexicographically smallest in cycle */
    std::vector<std::size_t> cycle_len;

  public:
    explicit FormClassRegistry(std::int64_t D);

    FormArithmetic const & forms() const { return arith; }
    /* Class id of any form of discriminant D. */
    int identify(Form const & f);
    int identify_reduced(Form const & f);
    int multiply(int x, int y);
    Form const & representative(int id) const { return canonical.at(id); }
    std::size_t cycle_length(int id) const { return cycle_len.at(id); }
    std::size_t classes_seen() const { return canonical.size(); }
    std::size_t reduced_forms_seen() const { return index.size(); }
};

} // namespace twoclass::quadfield

#endif
