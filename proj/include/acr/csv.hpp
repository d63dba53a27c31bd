#pragma once

#include <iosfwd>
#include <string>

#include "acr/types.hpp"

namespace acr {

// Shared CSV layout for rating matrices:
//   subject,stim_1,...,stim_J
//   1,4,3,...
// One row per observer, integer cells in 1..5.
std::string rating_matrix_to_csv(const RatingMatrix& m);
RatingMatrix rating_matrix_from_csv(std::istream& in, const std::string& source_name = "<stream>");

void write_rating_matrix_csv(const RatingMatrix& m, const std::string& path);
RatingMatrix read_rating_matrix_csv(const std::string& path);

}  // namespace acr
