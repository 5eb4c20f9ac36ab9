#ifndef TWOCLASS_GROUPS_HPP
#define TWOCLASS_GROUPS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twoclass/arith.hpp"

namespace twoclass::groups {

/* Requested enumeration exceeds the supported group order. */
struct capacity_error : std::length_error {
    using std::length_error::length_error;
};

inline constexpr std::size_t max_group_order = std::size_t{1} << 12;
inline constexpr std::size_t max_lattice_order = std::size_t{1} << 10;

/* Benjamin-Snyder presentation: a^(2^alpha) = 1, b^(2^n) = 1 or a^(2^(alpha-1)),
 * b^-1 a b = a^-1 (types 1, 2) or a^(-1 + k 2^s) (types 3, 4). */
struct MetacyclicParams {
    int type = 1;
    int alpha = 2;
    int n = 2;
    int s = 0;
    int k = 0;

    std::string str() const;
};

/* Finite group on element ids 0..order-1, identity 0. `a` and `b` are the
 * designated generators the distinguished subgroups are built from. */
class FiniteGroup
{
    std::size_t n = 1;
    std::function<int(int, int)> law;
    std::vector<int> inv;

  public:
    std::string name;
    int a = 0, b = 0;

    FiniteGroup() = default;
    FiniteGroup(std::string name_, std::size_t order, std::function<int(int, int)> mul, int gen_a, int gen_b);
    /* Cayley table; row x, column y holds x*y. */
    static FiniteGroup from_table(std::string name_, std::vector<std::vector<int>> table, int gen_a, int gen_b);

    std::size_t order() const { return n; }
    int identity() const { return 0; }
    int mul(int x, int y) const { return law(x, y); }
    int inverse(int x) const { return inv[x]; }
    int power(int x, long e) const;
    int commutator(int x, int y) const { return mul(mul(inverse(x), inverse(y)), mul(x, y)); }
    std::size_t element_order(int x) const;
    bool is_abelian() const;

    /* Identity, inverses and associativity: exhaustive up to 2^8 elements,
     * sampled beyond. Throws std::logic_error on failure. */
    void verify_axioms(std::size_t samples = 20000) const;
};

/* Normal form a^i b^j of a metacyclic group given by (A, B, t, c):
 * a^(2^A) = 1, b^(2^B) = a^c, b^-1 a b = a^t. */
FiniteGroup build_split_metacyclic(int A, int B, long t, long c, std::string name);

FiniteGroup build_metacyclic(MetacyclicParams const & p);
/* Modular group of order 2^m, m > 3. */
FiniteGroup build_modular(int m);

/* id of a^i b^j in a group returned by build_metacyclic. */
int metacyclic_element(MetacyclicParams const & p, long i, long j);

struct Subgroup {
    std::vector<int> elements; /* sorted */
    std::vector<int> generators;

    std::size_t order() const { return elements.size(); }
    bool contains(int x) const;
    bool operator==(Subgroup const & o) const { return elements == o.elements; }
};

Subgroup closure(FiniteGroup const & G, std::vector<int> const & gens);
Subgroup whole(FiniteGroup const & G);
bool is_abelian(FiniteGroup const & G, Subgroup const & H);

Subgroup derived_subgroup(FiniteGroup const & G);
Subgroup derived_subgroup(FiniteGroup const & G, Subgroup const & H);

AbelianType abelianization(FiniteGroup const & G);
AbelianType abelianization(FiniteGroup const & G, Subgroup const & H);

struct StandardSubgroups {
    Subgroup derived;
    Subgroup H12, H22, H32, H14, H24, H34;
    Subgroup const & get(int i, int level) const;
};

StandardSubgroups standard_subgroups(FiniteGroup const & G);

std::vector<Subgroup> enumerate_subgroups(FiniteGroup const & G);

/* Non-abelian and every proper subgroup abelian. */
bool is_minimal(FiniteGroup const & G);

enum class RankClass { metacyclic_nonmodular, modular_or_abelian, other };
std::string to_string(RankClass c);
RankClass classify_from_ranks(int rank12, int rank22, int rank32);

/* One row of the subgroup tables, resolved for concrete parameters. */
struct TableEntry {
    int level = 2;
    int i = 1;
    std::string block;        /* which structure line applies */
    std::string generators;   /* generator list as printed */
    std::vector<std::pair<long, long>> gen_exponents; /* a^x b^y */
    long derived_a_exponent = 0; /* H' = <a^e>; 0 means trivial */
    std::string derived_text;
    std::optional<std::vector<long>> ab_exponents; /* 2-exponents; nullopt if undefined */
    std::string ab_text;
    bool gprime_is_two = false; /* |G'| = 2, else >= 4 */
};

struct AuxParams {
    int eps, eps_p, delta, omega, omega_p;
    std::optional<int> xi;
};
AuxParams aux_params(int alpha, int n);

/* The row that applies to (params, i, level), if any. */
std::optional<TableEntry> table_entry(MetacyclicParams const & p, int i, int level);

enum class RowOutcome { match, mismatch, no_row, undefined };
std::string to_string(RowOutcome o);

struct TableCheck {
    MetacyclicParams params;
    int i = 1, level = 2;
    RowOutcome outcome = RowOutcome::no_row;
    std::optional<TableEntry> entry;
    std::string ab_claim, ab_computed;
    std::size_t derived_order_claim = 0, derived_order_computed = 0;
    bool ab_match = false;
    bool derived_match = false;
    bool gprime_match = false;
    bool generators_match = false;
    std::size_t gprime_order = 0;
};

TableCheck verify_table_row(MetacyclicParams const & p, int i, int level);
/* Same, reusing an already built group. */
TableCheck verify_table_row(MetacyclicParams const & p, FiniteGroup const & G, StandardSubgroups const & S,
                            int i, int level);

/* All valid parameter tuples in the given ranges. */
std::vector<MetacyclicParams> parameter_sweep(std::vector<int> const & alphas, std::vector<int> const & ns,
                                              std::vector<int> const & types, std::vector<int> const & ks);

} // namespace twoclass::groups

#endif
