#include "twoclass/predict.hpp"

namespace twoclass::predict {

namespace qf = quadfield;
using family::Condition;
using family::HypothesisReport;
using family::hypothesis_error;
using family::invariant_violation;

std::string to_string(Galois g)
{
    switch (g) {
    case Galois::type1_alpha2: return "type1-alpha2";
    case Galois::not_type1: return "not-type1";
    case Galois::none: return "";
    }
    return "?";
}

namespace {

AbelianType two_power_type(std::initializer_list<int> exps)
{
    std::vector<Integer> orders;
    for (int e : exps) {
        if (e < 0)
            throw invariant_violation("negative exponent in a predicted structure");
        orders.push_back(pow2(static_cast<unsigned long>(e)));
    }
    return AbelianType(orders);
}

/* Throws for the first failed condition among the ones requested. */
void gate(HypothesisReport const & rep, FamilyParams const & p, std::size_t cap, bool need_norm, bool need_quartic)
{
    if (!rep.congruences)
        throw hypothesis_error(Condition::congruences, p.str());
    if (!rep.legendre)
        throw hypothesis_error(Condition::legendre, p.str());
    if (!rep.rs_residue)
        throw hypothesis_error(Condition::rs_residue, p.str());
    if (need_quartic && !rep.quartic_neq.value_or(false))
        throw hypothesis_error(Condition::quartic, p.str());
    if (rep.unit_too_large)
        throw qf::unit_too_large(p.eta_qrs(), cap);
    if (need_norm && rep.norm_rs.value_or(0) != 1)
        throw hypothesis_error(Condition::norm_rs, p.str());
    if (!rep.square_cond.value_or(false))
        throw hypothesis_error(Condition::square, p.str());
    if (!rep.m)
        throw invariant_violation("m missing for " + p.str());
}

BiquadraticPrediction biquadratic(HypothesisReport const & rep, FamilyParams const & p, std::size_t cap)
{
    gate(rep, p, cap, false, false);
    /* K'' comes from the triple with r and s exchanged */
    FamilyParams const swapped{p.q, p.s, p.r, p.eta};
    HypothesisReport const other = family::check_hypotheses(swapped, cap);
    if (other.corollary() != rep.corollary() || other.m != rep.m)
        throw invariant_violation("r and s are not symmetric for " + p.str());

    BiquadraticPrediction out;
    out.m = *rep.m;
    out.A_Kp = two_power_type({1, out.m});
    out.A_Kpp = two_power_type({1, *other.m});
    if (rep.quartic_neq.value_or(false)) {
        if (out.m < 1)
            throw invariant_violation("A(K) undefined for m = 0 at " + p.str());
        out.A_K = two_power_type({2, out.m - 1});
    }
    return out;
}

} // namespace

Prediction predict_quadratic(FamilyParams const & p, std::size_t digit_cap)
{
    HypothesisReport const rep = family::check_hypotheses(p, digit_cap);
    gate(rep, p, digit_cap, true, false);

    Prediction pred;
    pred.m = *rep.m;
    pred.A_F = two_power_type({1, pred.m});
    pred.A_F_computed = qf::class_group(p.eta_qrs()).two_sylow;

    BiquadraticPrediction const bq = biquadratic(rep, p, digit_cap);
    pred.A_Kp = bq.A_Kp;
    pred.A_Kpp = bq.A_Kpp;

    if (*rep.quartic_neq) {
        pred.galois = Galois::type1_alpha2;
        if (pred.m < 2)
            throw invariant_violation("type 1 classification with m = " + std::to_string(pred.m) + " at "
                                      + p.str());
        pred.A_K = bq.A_K;
        pred.A_FF = two_power_type({1, pred.m - 1});
        pred.minimal16 = pred.m == 2;
        if (pred.m <= max_presentation_m)
            pred.presentation = groups::MetacyclicParams{1, 2, pred.m, 0, 0};
    } else {
        pred.galois = Galois::not_type1;
        pred.h2_rs = qf::h2(p.r * p.s);
    }
    return pred;
}

groups::MetacyclicParams predict_presentation(FamilyParams const & p, std::size_t digit_cap)
{
    Prediction const pred = predict_quadratic(p, digit_cap);
    if (pred.galois != Galois::type1_alpha2)
        throw hypothesis_error(Condition::quartic, p.str());
    if (!pred.presentation)
        throw groups::capacity_error("presentation with m = " + std::to_string(pred.m) + " is too large to build");
    return *pred.presentation;
}

BiquadraticPrediction predict_biquadratic(FamilyParams const & p, std::size_t digit_cap)
{
    return biquadratic(family::check_hypotheses(p, digit_cap), p, digit_cap);
}

AbelianType predict_triquadratic(FamilyParams const & p, std::size_t digit_cap)
{
    HypothesisReport const rep = family::check_hypotheses(p, digit_cap);
    gate(rep, p, digit_cap, true, true);
    return *predict_quadratic(p, digit_cap).A_FF;
}

bool predict_minimal16(FamilyParams const & p, std::size_t digit_cap)
{
    HypothesisReport const rep = family::check_hypotheses(p, digit_cap);
    gate(rep, p, digit_cap, true, true);
    return qf::h2(p.eta_qrs()) == 8;
}

} // namespace twoclass::predict
