#ifndef TWOCLASS_SEARCH_HPP
#define TWOCLASS_SEARCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "twoclass/family.hpp"
#include "twoclass/groups.hpp"
#include "twoclass/report.hpp"

namespace twoclass::search {

struct SearchConfig {
    std::uint64_t max_prime = 100;
    std::vector<int> etas{1, 2};
    report::Require require = report::Require::full_theorem;
    std::size_t digit_cap = quadfield::default_digit_cap;
    unsigned workers = 1;

    /* max_prime >= 13, digit cap >= 1000, eta in {1, 2}. */
    void validate() const;
};

/* Triples passing the congruence stage, r < s, ordered by (eta, q, r, s). */
std::vector<family::FamilyParams> candidates(std::uint64_t max_prime, std::vector<int> const & etas);

/* One record per candidate, in candidate order whatever the worker count. */
std::vector<report::TripleRecord> run_search(SearchConfig const & cfg);

struct TraceStep {
    std::string condition;
    std::optional<bool> holds; /* nullopt when gated off */
    std::string detail;
};

struct VerifyReport {
    report::TripleRecord record;
    std::vector<TraceStep> trace;
    /* cross-checks; each entry is (name, holds, detail) */
    std::vector<TraceStep> checks;
};

/* Throws domain_error for non-prime input. */
VerifyReport verify_triple(family::FamilyParams const & p, report::Require require, std::size_t digit_cap);

std::string verify_json(VerifyReport const & v, int indent = 2);
std::string verify_text(VerifyReport const & v);

struct TableSweepConfig {
    std::vector<int> alphas, ns, types, ks;
    std::vector<int> ss; /* empty: every valid s */
    unsigned workers = 1;
};

/* Six rows (i = 1..3 at index 2 and 4) per parameter tuple. */
std::vector<groups::TableCheck> run_table_sweep(TableSweepConfig const & cfg);

} // namespace twoclass::search

#endif
