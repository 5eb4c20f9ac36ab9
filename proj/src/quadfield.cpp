#include "twoclass/quadfield.hpp"

#include <atomic>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "twoclass/abelian.hpp"

namespace twoclass::quadfield {

namespace {

std::atomic<bool> cache_on{true};
std::shared_mutex unit_mutex, class_mutex;
std::unordered_map<std::uint64_t, std::pair<QuadUnit, std::size_t>> unit_cache;
std::unordered_map<std::uint64_t, ClassData> class_cache;

double const log2_10 = 3.3219280948873623;

/* Bit length beyond which the unit certainly has more than cap digits. */
std::size_t bit_budget(std::size_t cap)
{
    return static_cast<std::size_t>(static_cast<double>(cap) * log2_10) + 2;
}

std::size_t decimal_digits(Integer const & n)
{
    std::size_t est = mpz_sizeinbase(n.get_mpz_t(), 10);
    if (est <= 1)
        return 1;
    /* mpz_sizeinbase is exact or one too large */
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 10, est - 1);
    return abs(n) >= pw ? est : est - 1;
}

void check_squarefree_arg(std::uint64_t d)
{
    if (d <= 1 || !is_squarefree(d))
        throw domain_error("expected a squarefree integer > 1, got " + std::to_string(d));
    if (d >= (std::uint64_t{1} << 60))
        throw domain_error("radicand too large: " + std::to_string(d));
}

/* Half-period continued fraction of sqrt d. The partial quotients and the
 * (P, Q) recurrence stay in machine words; only convergents are big. */
QuadUnit unit_sqrt_cf(std::uint64_t d, std::size_t cap)
{
    using i64 = std::int64_t;
    i64 const dd = static_cast<i64>(d);
    i64 const a0 = static_cast<i64>(isqrt(d));
    std::size_t const budget = bit_budget(cap) + 70;

    /* state at index n: P_n, Q_n, a_n and convergents p_{n-1}, p_{n-2} */
    i64 P = 0, Q = 1, a = a0;
    Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (;;) {
        i64 const Pn = a * Q - P;
        i64 const Qn = (dd - Pn * Pn) / Q;
        Integer pn = a * p1 + p2;
        Integer qn = a * q1 + q2;
        if (Q == Qn) {
            /* odd period: eps = theta_{h+1} theta_h / Q_h */
            QuadUnit u;
            u.d = d;
            u.X = (pn * p1 + dd * qn * q1) / Q;
            u.Y = (pn * q1 + qn * p1) / Q;
            u.norm = -1;
            return u;
        }
        if (P == Pn) {
            /* even period: eps = theta_h^2 / Q_h */
            QuadUnit u;
            u.d = d;
            u.X = (p1 * p1 + dd * q1 * q1) / Q;
            u.Y = (2 * p1 * q1) / Q;
            u.norm = 1;
            return u;
        }
        if (2 * mpz_sizeinbase(pn.get_mpz_t(), 2) > budget + 2 * 64)
            throw unit_too_large(d, cap);
        p2 = std::move(p1);
        p1 = std::move(pn);
        q2 = std::move(q1);
        q1 = std::move(qn);
        P = Pn;
        Q = Qn;
        a = (a0 + P) / Q;
    }
}

/* Full period of (1 + sqrt d)/2, for d = 1 mod 4. */
QuadUnit unit_omega_cf(std::uint64_t d, std::size_t cap)
{
    using i64 = std::int64_t;
    i64 const dd = static_cast<i64>(d);
    i64 const sq = static_cast<i64>(isqrt(d));
    std::size_t const budget = bit_budget(cap) + 4;

    i64 P = 1, Q = 2;
    i64 a = (P + sq) / Q;
    Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (;;) {
        Integer pn = a * p1 + p2;
        Integer qn = a * q1 + q2;
        i64 const Pn = a * Q - P;
        i64 const Qn = (dd - Pn * Pn) / Q;
        p2 = std::move(p1);
        p1 = std::move(pn);
        q2 = std::move(q1);
        q1 = std::move(qn);
        P = Pn;
        Q = Qn;
        if (Q == 2) {
            QuadUnit u;
            u.d = d;
            u.X = 2 * p1 - q1;
            u.Y = q1;
            u.den = 2;
            Integer n4 = u.X * u.X - dd * u.Y * u.Y;
            if (n4 != 4 && n4 != -4)
                throw std::logic_error("omega expansion lost the norm for d = " + std::to_string(d));
            u.norm = n4 > 0 ? 1 : -1;
            if (mpz_even_p(u.X.get_mpz_t())) {
                u.X /= 2;
                u.Y /= 2;
                u.den = 1;
            } else if (d % 8 == 1) {
                throw std::logic_error("half-integral unit for d = 1 mod 8");
            }
            return u;
        }
        if (mpz_sizeinbase(p1.get_mpz_t(), 2) > budget)
            throw unit_too_large(d, cap);
        a = (P + sq) / Q;
    }
}

void check_pell(QuadUnit const & u)
{
    Integer lhs = u.X * u.X - Integer(u.d) * u.Y * u.Y;
    Integer rhs = u.norm * u.den * u.den;
    if (lhs != rhs || u.X <= 0 || u.Y <= 0)
        throw std::logic_error("Pell identity failed for d = " + std::to_string(u.d));
}

} // namespace

void set_cache_enabled(bool on) { cache_on = on; }

void clear_cache()
{
    std::unique_lock l1(unit_mutex), l2(class_mutex);
    unit_cache.clear();
    class_cache.clear();
}

QuadUnit fundamental_unit(std::uint64_t d, std::size_t digit_cap)
{
    check_squarefree_arg(d);
    if (cache_on) {
        std::shared_lock lock(unit_mutex);
        auto it = unit_cache.find(d);
        if (it != unit_cache.end()) {
            if (it->second.second > digit_cap)
                throw unit_too_large(d, digit_cap);
            return it->second.first;
        }
    }
    QuadUnit u = d % 4 == 1 ? unit_omega_cf(d, digit_cap) : unit_sqrt_cf(d, digit_cap);
    check_pell(u);
    std::size_t const digits = decimal_digits(u.X);
    if (digits > digit_cap)
        throw unit_too_large(d, digit_cap);
    if (cache_on) {
        std::unique_lock lock(unit_mutex);
        unit_cache.emplace(d, std::make_pair(u, digits));
    }
    return u;
}

int unit_norm(std::uint64_t d, std::size_t digit_cap)
{
    return fundamental_unit(d, digit_cap).norm;
}

std::int64_t fundamental_discriminant(std::uint64_t d)
{
    check_squarefree_arg(d);
    auto const D = static_cast<std::int64_t>(d);
    return d % 4 == 1 ? D : 4 * D;
}

bool is_fundamental_discriminant(std::int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    std::uint64_t const a = static_cast<std::uint64_t>(D < 0 ? -D : D);
    auto const m4 = ((D % 4) + 4) % 4;
    if (m4 == 1)
        return is_squarefree(a);
    if (m4 != 0)
        return false;
    auto const m16 = ((D / 4) % 4 + 4) % 4;
    return (m16 == 2 || m16 == 3) && is_squarefree(a / 4);
}

NarrowClassGroup narrow_class_group(std::int64_t D)
{
    if (D <= 1 || !is_fundamental_discriminant(D))
        throw domain_error("not a positive fundamental discriminant: " + std::to_string(D));
    FormClassRegistry reg(D);
    FormArithmetic const & ar = reg.forms();

    int const one = reg.identify(ar.principal());
    int const kappa = reg.identify(ar.negative_principal());
    std::vector<int> gens{kappa};
    std::vector<Form> gen_forms{reg.representative(kappa)};
    for (std::uint64_t p : primes_up_to(isqrt(static_cast<std::uint64_t>(D) / 4))) {
        auto f = ar.prime_form(p);
        if (!f)
            continue;
        gens.push_back(reg.identify(*f));
        gen_forms.push_back(*f);
    }

    RelationLattice lat = relation_lattice(gens, one, [&](int x, int y) { return reg.multiply(x, y); });

    NarrowClassGroup out;
    out.D = D;
    out.order = lat.order;
    out.structure = lat.structure();
    out.relations = lat.relations;
    out.negative_class_trivial = kappa == one;
    for (std::size_t pos : lat.used)
        out.generators.push_back(ar.reduce(gen_forms[pos]));
    return out;
}

ClassData class_group(std::uint64_t d)
{
    if (cache_on) {
        std::shared_lock lock(class_mutex);
        auto it = class_cache.find(d);
        if (it != class_cache.end())
            return it->second;
    }
    NarrowClassGroup ncg = narrow_class_group(fundamental_discriminant(d));
    ClassData cd;
    cd.d = d;
    cd.h_plus = ncg.order;
    cd.narrow = ncg.structure;
    if (ncg.negative_class_trivial) {
        cd.h = ncg.order;
        cd.structure = ncg.structure;
    } else {
        /* kappa has order 2 and is the first lattice generator */
        IntMatrix rel = ncg.relations;
        std::vector<Integer> row(rel.cols());
        row[0] = 1;
        rel.append_row(row);
        cd.h = ncg.order / 2;
        cd.structure = AbelianType::from_invariants(smith_normal_form(rel));
    }
    if (cd.structure.order() != Integer(static_cast<unsigned long>(cd.h)))
        throw std::logic_error("class group order mismatch for d = " + std::to_string(d));
    cd.two_sylow = cd.structure.two_sylow();
    cd.h2 = cd.two_sylow.order();
    if (cache_on) {
        std::unique_lock lock(class_mutex);
        class_cache.emplace(d, cd);
    }
    return cd;
}

Integer h2(std::uint64_t d)
{
    return class_group(d).h2;
}

std::string to_string(Splitting s)
{
    switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
    }
    return "?";
}

Splitting prime_splitting(Place v, std::int64_t d)
{
    if (d == 0 || d == 1)
        throw domain_error("prime_splitting: degenerate radicand");
    if (v.infinite)
        return d > 0 ? Splitting::split : Splitting::ramified;
    std::uint64_t const p = v.p;
    if (!is_prime(p))
        throw domain_error("prime_splitting: " + std::to_string(p) + " is not prime");
    if (p == 2) {
        std::int64_t const m8 = ((d % 8) + 8) % 8;
        if (m8 % 4 != 1)
            return Splitting::ramified;
        return m8 == 1 ? Splitting::split : Splitting::inert;
    }
    if (d % static_cast<std::int64_t>(p) == 0)
        return Splitting::ramified;
    return legendre_symbol(Integer(static_cast<long>(d)), Integer(static_cast<unsigned long>(p))) == 1
               ? Splitting::split
               : Splitting::inert;
}

} // namespace twoclass::quadfield
