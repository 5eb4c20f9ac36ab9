#ifndef TWOCLASS_FAMILY_HPP
#define TWOCLASS_FAMILY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoclass/arith.hpp"
#include "twoclass/quadfield.hpp"

namespace twoclass::family {

/* q = 3 mod 4, r = s = 5 mod 8, eta in {1, 2}, rho = 3 - eta. */
struct FamilyParams {
    std::uint64_t q = 0, r = 0, s = 0;
    int eta = 1;

    int rho() const { return 3 - eta; }
    std::uint64_t qrs() const { return q * r * s; }
    std::uint64_t eta_qrs() const { return static_cast<std::uint64_t>(eta) * qrs(); }
    std::uint64_t rho_qrs() const { return static_cast<std::uint64_t>(rho()) * qrs(); }
    std::string str() const;
};

/* The hypotheses, in the order a search evaluates them. */
enum class Condition { congruences, legendre, rs_residue, quartic, norm_rs, square };
std::string to_string(Condition c);

/* A computation was asked for outside the hypotheses it relies on. */
struct hypothesis_error : domain_error {
    Condition failed;
    hypothesis_error(Condition c, std::string const & what);
};

/* A statement that must hold under the hypotheses did not. */
struct invariant_violation : std::logic_error {
    using std::logic_error::logic_error;
};

struct HypothesisReport {
    bool congruences = false;
    bool legendre = false;
    bool rs_residue = false;
    std::optional<int> norm_rs;       /* N(eps_rs) */
    std::optional<bool> quartic_neq;  /* (r/s)_4 != (s/r)_4 */
    std::optional<bool> square_cond;  /* 2^d(eta,1) q (gamma - 1) is not a square */
    std::optional<int> m;             /* h2(eta qrs) = 2^(m+1) */
    bool unit_too_large = false;

    /* Congruences, Legendre pattern, (r/s) = 1. */
    bool family() const { return congruences && legendre && rs_residue; }
    bool corollary() const { return family() && square_cond.value_or(false); }
    bool theorem() const
    {
        return corollary() && norm_rs.value_or(0) == 1 && quartic_neq.value_or(false);
    }
    /* First failed condition in search order, if any. */
    std::optional<Condition> first_failure() const;
};

HypothesisReport check_hypotheses(FamilyParams const & p,
                                  std::size_t digit_cap = quadfield::default_digit_cap);

/* Throws hypothesis_error unless congruences, Legendre pattern and (r/s) = 1 hold. */
void require_family(FamilyParams const & p);

enum class Branch { Q, R, S };
std::string to_string(Branch b);

struct TrichotomyResult {
    Branch which = Branch::Q;
    std::array<bool, 3> flags{};
    Integer gamma, gamma_p;   /* eps_{eta qrs} = gamma + gamma' sqrt(eta qrs) */
    Integer gamma1, gamma2;   /* sqrt(eta eps) expressed on the branch basis */
};

TrichotomyResult unit_trichotomy(FamilyParams const & p,
                                 std::size_t digit_cap = quadfield::default_digit_cap);

struct DichotomyResult {
    int sign = 1; /* +1 when 2^d(rho,2) q (x + 1) is the square */
    std::array<bool, 2> flags{};
    Integer x, y, y1, y2;
};

DichotomyResult rho_dichotomy(FamilyParams const & p,
                              std::size_t digit_cap = quadfield::default_digit_cap);

int q_index_F1(FamilyParams const & p, std::size_t digit_cap = quadfield::default_digit_cap);

/* h2(F1) for F1 = Q(sqrt(qrs), sqrt 2) through the Kuroda formula. */
Integer h2_F1(FamilyParams const & p, std::size_t digit_cap = quadfield::default_digit_cap);

struct ProductIdentity {
    Integer h2_qrs, h2_2qrs, h2_eta_qrs;
    bool holds() const { return h2_qrs * h2_2qrs == 4 * h2_eta_qrs; }
};
ProductIdentity h2_product_identity(FamilyParams const & p);

struct UnitIndexReport {
    std::string field;
    int q_index = 1;
    int unit_case = 0; /* 1, 2 (form F1) or 3 (form F2) */
    std::vector<std::string> basis;
};

/* Unit group of K1 = Q(sqrt 2, sqrt q, sqrt rs); needs the square condition. */
UnitIndexReport unit_index_K1(FamilyParams const & p,
                              std::size_t digit_cap = quadfield::default_digit_cap);

/* Whether eps_2 eps_rs eps_2rs is a square in Q(sqrt 2, sqrt rs). */
bool k2_unit_product_is_square(std::uint64_t rs, std::size_t digit_cap = quadfield::default_digit_cap);

struct BiquadraticH2 {
    Integer h2;
    int q_index = 1;
};

/* h2(K) for K = Q(sqrt(eta q), sqrt(rs)). */
BiquadraticH2 h2_K(FamilyParams const & p, std::size_t digit_cap = quadfield::default_digit_cap);

/* h2(K1) by the Kuroda formula with q(K1) = 16. */
Integer h2_K1(FamilyParams const & p, std::size_t digit_cap = quadfield::default_digit_cap);

/* h = q * prod h_i / 2^v for a multiquadratic field of degree 2^n. */
Integer kuroda_class_number(std::vector<Integer> const & subfield_h, Integer const & q_index, int n,
                            bool real);
int kuroda_exponent(int n, bool real);

struct AmbiguousRank {
    int t = 0;
    int rank_lo = 0, rank_hi = 0;
    std::vector<std::string> ramified;
};

/* Ramified places of Q(sqrt base, sqrt ext) / Q(sqrt base); needs h(base) odd. */
AmbiguousRank ambiguous_rank_interval(std::int64_t base_d, std::int64_t ext_d);

inline bool fukuda_stable(Integer const & h_layer0, Integer const & h_layer1)
{
    return h_layer0 == h_layer1;
}

} // namespace twoclass::family

#endif
