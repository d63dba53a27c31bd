#pragma once

#include <string>
#include <vector>

#include "acr/hard_detect.hpp"
#include "acr/soft_recon.hpp"
#include "acr/types.hpp"

namespace acr {

enum class MethodId { NoOpt, KB, CB, LPCC, HB, MAZ, NLL, SUREAL, ESQR, ZREC };

bool is_soft(MethodId id);
std::string to_string(MethodId id);
MethodId method_from_name(const std::string& name);
std::vector<MethodId> all_methods();

// A detector/reconstructor pairing: a hard detector followed by plain MOS
// over its inliers, or a soft reconstructor applied to the whole matrix.
struct MethodUnderTest {
  MethodId id = MethodId::NoOpt;
  HardDetectorConfig hard;
  SoftConfig soft;

  static MethodUnderTest make(MethodId id, HardDetectorConfig hard_cfg = {},
                              SoftConfig soft_cfg = {});

  bool soft_method() const { return is_soft(id); }
  std::string name() const { return to_string(id); }

  DetectionResult apply(const RatingMatrix& m) const;
};

}  // namespace acr
