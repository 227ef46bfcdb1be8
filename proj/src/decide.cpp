#include "pcsp/decide.hpp"

namespace pcsp {

Decision decide(const RelationalStructure& a, const Instance& instance, DecideOptions options) {
  if (!(instance.signature() == a.signature()))
    throw ValidationError("signature mismatch between instance and template");
  Decision out;
  BlpSystem blp = build_blp(instance, a);
  auto interior = relative_interior_point(blp, options.interior);
  if (!interior) {
    out.reject_stage = RejectStage::Lp;
    return out;
  }
  AffineSystem refined = refine(build_affine(instance, a), *interior);
  auto lattice_point = affine_feasible(refined);
  if (!lattice_point) {
    out.reject_stage = RejectStage::Affine;
    return out;
  }
  out.verdict = Verdict::Accept;
  out.lp_witness = std::move(*interior);
  out.affine_witness = std::move(*lattice_point);
  return out;
}

Decision decide(const PromiseTemplate& tmpl, const Instance& instance, DecideOptions options) {
  return decide(tmpl.a(), instance, options);
}

std::string verdict_text(const Decision& decision) {
  if (decision.accepted()) return "ACCEPT";
  return decision.reject_stage == RejectStage::Lp ? "REJECT(lp)" : "REJECT(affine)";
}

}  // namespace pcsp
