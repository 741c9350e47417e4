#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace nilfix {

/// Exact rational scalar used for all structure constants, polynomial
/// coefficients and subspace bases.  Membership and rank decisions made
/// over Rat are exact booleans, never tolerance judgements.
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

double to_double(const Rat& r);

/// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

std::string rat_str(const Rat& r);

bool is_zero_vec(const RatVec& v);

RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rat& c, const RatVec& v);

/// Reduces m to reduced row echelon form in place and returns the pivot
/// column of each nonzero row, in row order.
std::vector<int> rref_inplace(RatMat& m);

int rank_of(RatMat m);

/// Canonical basis of the row span: nonzero RREF rows.  Two spanning sets
/// of the same subspace produce identical output.
RatMat canonical_rowspace_basis(RatMat m);

/// Reduces v against RREF rows (with the given pivot columns); the result
/// is zero iff v lies in the row span.
RatVec reduce_against(const RatMat& rref_rows, const std::vector<int>& pivots, RatVec v);

/// Canonical basis of the right kernel {x : m x = 0}.
RatMat kernel_basis(const RatMat& m);

/// True if a < b in coordinatewise lexicographic order.
bool lex_less(const RatVec& a, const RatVec& b);

} // namespace nilfix
