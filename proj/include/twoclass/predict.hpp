#ifndef TWOCLASS_PREDICT_HPP
#define TWOCLASS_PREDICT_HPP

#include <optional>
#include <string>

#include "twoclass/arith.hpp"
#include "twoclass/family.hpp"
#include "twoclass/groups.hpp"

namespace twoclass::predict {

using family::FamilyParams;

enum class Galois { none, type1_alpha2, not_type1 };
/* "type1-alpha2", "not-type1", "" */
std::string to_string(Galois g);

inline constexpr char const * minimal16_tag = "minimal-order-16";
inline constexpr char const * triquadratic_tag = "abelian-triquadratic";

/* Largest m for which a presentation is handed back as a buildable group. */
inline constexpr int max_presentation_m = 10;

struct Prediction {
    int m = 0;                               /* h2(eta qrs) = 2^(m+1) */
    AbelianType A_F;                         /* predicted, (2, 2^m) */
    AbelianType A_F_computed;                /* 2-part of the form class group */
    std::optional<AbelianType> A_K, A_Kp, A_Kpp, A_FF;
    Galois galois = Galois::none;
    bool minimal16 = false;
    std::optional<groups::MetacyclicParams> presentation;
    /* Not-type1 witness: h2(rs), expected divisible by 4. */
    std::optional<Integer> h2_rs;
};

/* Needs congruences, Legendre pattern, (r/s) = 1, N(eps_rs) = 1 and the square
 * condition; otherwise throws family::hypothesis_error naming the first miss.
 * Throws quadfield::unit_too_large when a unit exceeds the digit cap. */
Prediction predict_quadratic(FamilyParams const & p, std::size_t digit_cap = quadfield::default_digit_cap);

/* <a, b | a^4, b^(2^m), b^-1 a b = a^-1>; needs the type 1 classification. */
groups::MetacyclicParams predict_presentation(FamilyParams const & p,
                                              std::size_t digit_cap = quadfield::default_digit_cap);

struct BiquadraticPrediction {
    int m = 0;
    AbelianType A_Kp, A_Kpp;
    std::optional<AbelianType> A_K; /* only with unequal quartic symbols */
};

/* K' = Q(sqrt r, sqrt(eta qs)), K'' = Q(sqrt s, sqrt(eta qr)), K = Q(sqrt(eta q), sqrt(rs)).
 * Needs the family conditions and the square condition. */
BiquadraticPrediction predict_biquadratic(FamilyParams const & p,
                                          std::size_t digit_cap = quadfield::default_digit_cap);

/* A(Q(sqrt(eta q), sqrt r, sqrt s)) = (2, 2^(m-1)); needs every hypothesis. */
AbelianType predict_triquadratic(FamilyParams const & p, std::size_t digit_cap = quadfield::default_digit_cap);

/* h2(eta qrs) = 8 under every hypothesis. */
bool predict_minimal16(FamilyParams const & p, std::size_t digit_cap = quadfield::default_digit_cap);

} // namespace twoclass::predict

#endif
