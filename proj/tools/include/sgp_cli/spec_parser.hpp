#pragma once

#include <string>

#include "sgp/catalog.hpp"

namespace sgp::cli {

/// Builds a catalog entry from a function spec such as
///   pnorm:p=4
///   dist_power:set=ball:c=0,0:r=1:p=2
///   max_dist:set=hyperplane:n=0,1:b=0:set=hyperplane:n=1,-1:b=0
///   least_squares:A=2,1;0,1:b=1,0:eps=0.5:p=2
///   one_d:exp_abs
///
/// Fields are separated by ':', vector entries by ',' and matrix rows by ';'.
/// `set=<kind>` opens a set; following keys go to that set when its kind
/// accepts them and to the function otherwise. Unknown or repeated keys are
/// rejected with InvalidArgument.
catalog::CatalogEntry parse_function_spec(const std::string& spec);

/// The grammar as shown by --help.
std::string function_spec_help();

Vector parse_vector(const std::string& text);
Matrix parse_matrix(const std::string& text);
double parse_number(const std::string& text);

}  // namespace sgp::cli
