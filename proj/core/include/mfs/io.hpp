#pragma once

#include "mfs/formal.hpp"
#include "mfs/geom.hpp"
#include "mfs/mfa.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace mfs {

/// Line-oriented structured text formats.  '#' starts a comment, blank lines
/// are skipped, every parse error carries "name:line:".
///
/// Rationals are "p" or "p/q"; Laurent polynomials are flat triple lists
/// "e num den ..." with strictly increasing exponents.
///
/// algebra   : dim, optional basis/grading, unit, "c i j k value" entries
/// metric    : dim, "entry i j <poly>" entries
/// nilpotent : nested algebra block, "g i j value" metric entries, "nil <coords>" rows
/// geometry  : dim_x, degrees, integral, c1, "cup i j k value", rank, "chern <coords>" rows
/// gw        : divisors, max_degree, lambda_bound, "record d.. ; idx.. ; <poly>" rows
/// structure : header "structure" or "structure localized"; nt/nq/order/unit,
///             "euler a b v", "euler_const a v", "term a b g e.. ldeg num den",
///             and for the localized form "metric i j <poly>" plus "charge v"

FiniteAlgebra read_algebra(std::istream& in, const std::string& name);
LocalizedMetric read_metric(std::istream& in, const std::string& name);
NilpotentData read_nilpotent(std::istream& in, const std::string& name);
std::pair<CohomologyModel, BundleData> read_geometry(std::istream& in, const std::string& name);
GWDataset read_gw(std::istream& in, const std::string& name);

struct ParsedStructure {
    std::optional<FormalSaito> saito;
    std::optional<LocalizedFormalFrobenius> localized;
};
/// `order_override` = 0 keeps the order declared in the file.
ParsedStructure read_structure(std::istream& in, const std::string& name,
                               unsigned order_override = 0);

/// Laurent polynomial as the flat (exponent, numerator, denominator) list.
std::string write_poly_triples(const LaurentPoly& p);

} // namespace mfs
