#include "acr/method.hpp"

#include <stdexcept>

namespace acr {

bool is_soft(MethodId id) {
  return id == MethodId::SUREAL || id == MethodId::ESQR || id == MethodId::ZREC;
}

std::string to_string(MethodId id) {
  switch (id) {
    case MethodId::NoOpt: return "NoOpt";
    case MethodId::KB: return "KB";
    case MethodId::CB: return "CB";
    case MethodId::LPCC: return "LPCC";
    case MethodId::HB: return "HB";
    case MethodId::MAZ: return "MAZ";
    case MethodId::NLL: return "NLL";
    case MethodId::SUREAL: return "SUREAL";
    case MethodId::ESQR: return "ESQR";
    case MethodId::ZREC: return "ZREC";
  }
  return "?";
}

MethodId method_from_name(const std::string& name) {
  for (MethodId id : all_methods())
    if (to_string(id) == name) return id;
  throw std::invalid_argument("unknown method name: " + name);
}

std::vector<MethodId> all_methods() {
  return {MethodId::NoOpt, MethodId::KB,  MethodId::CB,   MethodId::LPCC, MethodId::HB,
          MethodId::MAZ,   MethodId::NLL, MethodId::SUREAL, MethodId::ESQR, MethodId::ZREC};
}

MethodUnderTest MethodUnderTest::make(MethodId id, HardDetectorConfig hard_cfg,
                                      SoftConfig soft_cfg) {
  MethodUnderTest mut;
  mut.id = id;
  mut.hard = hard_cfg;
  mut.soft = soft_cfg;
  switch (id) {
    case MethodId::NoOpt: mut.hard.method = HardMethod::NoOpt; break;
    case MethodId::KB: mut.hard.method = HardMethod::KB; break;
    case MethodId::CB: mut.hard.method = HardMethod::CB; break;
    case MethodId::LPCC: mut.hard.method = HardMethod::LPCC; break;
    case MethodId::HB: mut.hard.method = HardMethod::HB; break;
    case MethodId::MAZ: mut.hard.method = HardMethod::MAZ; break;
    case MethodId::NLL: mut.hard.method = HardMethod::NLL; break;
    default: break;
  }
  return mut;
}

DetectionResult MethodUnderTest::apply(const RatingMatrix& m) const {
  DetectionResult res;
  switch (id) {
    case MethodId::SUREAL: {
      auto r = sureal(m, soft);
      res.kind = DetectionResult::Kind::Soft;
      res.row_weights = std::move(r.row_weights);
      res.reconstructed = std::move(r.scores);
      return res;
    }
    case MethodId::ESQR: {
      auto r = esqr(m, soft);
      res.kind = DetectionResult::Kind::Soft;
      res.row_weights = std::move(r.row_weights);
      res.cell_weights = std::move(r.cell_weights);
      res.reconstructed = std::move(r.scores);
      return res;
    }
    case MethodId::ZREC: {
      auto r = zrec(m, soft);
      res.kind = DetectionResult::Kind::Soft;
      res.row_weights = std::move(r.row_weights);
      res.reconstructed = std::move(r.scores);
      return res;
    }
    default: {
      res.kind = DetectionResult::Kind::Hard;
      res.inlier_mask = detect(m, hard);
      res.reconstructed = mos(m, res.inlier_mask);
      return res;
    }
  }
}

}  // namespace acr
