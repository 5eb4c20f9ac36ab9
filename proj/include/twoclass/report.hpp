#ifndef TWOCLASS_REPORT_HPP
#define TWOCLASS_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twoclass/family.hpp"
#include "twoclass/groups.hpp"

namespace twoclass::report {

/* Which hypothesis set a record must meet for predictions to be emitted. */
enum class Require { full_theorem, corollary_only };
std::string to_string(Require r);
Require parse_require(std::string const & s);

enum class Status { ok, unit_too_large, hypothesis_failed };
std::string to_string(Status s);
Status parse_status(std::string const & s);

/* One search row. Empty optionals were gated off by an earlier failure,
 * which the boolean columns identify. */
struct TripleRecord {
    int eta = 1;
    std::uint64_t q = 0, r = 0, s = 0;
    bool cong_ok = false, leg_ok = false, rs_ok = false;
    std::optional<bool> quartic_neq;
    std::optional<int> norm_rs;
    std::optional<bool> square_cond;
    std::optional<std::string> branch;
    std::optional<int> m;
    std::optional<std::string> A_F, A_K, A_Kp, A_FF;
    std::string galois;
    Status status = Status::hypothesis_failed;

    family::FamilyParams params() const { return {q, r, s, eta}; }
    bool operator==(TripleRecord const &) const = default;
};

std::vector<std::string> const & csv_columns();

/* Runs the hypothesis chain and the predictions that apply. */
TripleRecord evaluate(family::FamilyParams const & p, Require require, std::size_t digit_cap);

void write_csv(std::ostream & out, std::vector<TripleRecord> const & rows);
std::vector<TripleRecord> read_csv(std::istream & in);

std::string to_json(std::vector<TripleRecord> const & rows, int indent = 2);
std::vector<TripleRecord> from_json(std::string const & text);

/* Group-table sweep rows. */
std::vector<std::string> const & table_csv_columns();
void write_table_csv(std::ostream & out, std::vector<groups::TableCheck> const & rows);
std::string table_json(std::vector<groups::TableCheck> const & rows, int indent = 2);

} // namespace twoclass::report

#endif
