#pragma once

#include <iosfwd>
#include <string>

#include "adlab/fpset.hpp"
#include "adlab/group.hpp"
#include "adlab/lintest.hpp"

namespace adlab {

/**
 * Set file: header "p n", then one element per line as n base-p digit
 * characters in ordinary numeral order (most significant first), i.e. the
 * element index as a zero-padded base-p number.  Digits 0-9 then a-z
 * (p <= 36).
 * '#' starts a comment; blank lines are skipped.  Errors carry line numbers.
 */
FpSet load_set(std::istream& in, const std::string& name = "<stream>");
FpSet load_set_file(const std::string& path);
void save_set(std::ostream& out, const FpSet& a);
void save_set_file(const std::string& path, const FpSet& a);

/**
 * Function file: header "p n", then exactly p^n lines "x_digits f(x)_digits".
 * Every argument must appear exactly once.
 */
FnTable load_fn(std::istream& in, const std::string& name = "<stream>");
FnTable load_fn_file(const std::string& path);
void save_fn(std::ostream& out, const FnTable& f);
void save_fn_file(const std::string& path, const FnTable& f);

/// Digit-string codec used by the file formats (most significant digit first).
std::string format_element(const GroupCtx& ctx, std::uint64_t index);
std::uint64_t parse_element(const GroupCtx& ctx, const std::string& digits,
                            const std::string& where);

}  // namespace adlab
