#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "rsoscert/certificate.hpp"

namespace rsoscert::certfile {

// Line-oriented text format, one record per line, in this order:
//
//   format 1
//   n <vars>
//   e <half denominator degree>
//   f <polynomial>
//   g <polynomial>                       (rational functions only)
//   terms all-terms-deg<=e | terms explicit, then one "t <exp>" per term
//   order grlex
//   basis newton|dense, then one "b <exp>" per basis element
//   y <exp> <p/q>  (one per moment)   |   witness <exp>
//   provenance <key> <value>          (any number)
//   end
//
// Exponents are space-separated integers. Blank lines and lines starting with
// '#' are ignored. Throws FormatError with the 1-based line number.
Certificate parse(std::istream& in);
Certificate parse_string(std::string_view text);
Certificate read_file(const std::string& path);

void print(std::ostream& out, const Certificate& cert);
std::string to_string(const Certificate& cert);
void write_file(const std::string& path, const Certificate& cert);

// "p/q" with q > 0 in lowest terms; integers get "/1".
std::string format_rational(const Rational& q);

}  // namespace rsoscert::certfile
