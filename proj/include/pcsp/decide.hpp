#pragma once

#include <optional>
#include <string>

#include "pcsp/affine.hpp"
#include "pcsp/blp.hpp"
#include "pcsp/core.hpp"

namespace pcsp {

enum class Verdict { Accept, Reject };
enum class RejectStage { Lp, Affine };

/**
 * Outcome of the BLP+Affine procedure. On Accept both witnesses are present:
 * a relative interior point of the basic LP and an integer point of the
 * affine relaxation refined by that point's support.
 */
struct Decision {
  Verdict verdict = Verdict::Reject;
  std::optional<RejectStage> reject_stage;
  std::optional<BlpPoint> lp_witness;
  std::optional<AffinePoint> affine_witness;

  bool accepted() const { return verdict == Verdict::Accept; }
  bool operator==(const Decision&) const = default;
};

struct DecideOptions {
  InteriorStrategy interior = InteriorStrategy::Covering;
};

/// Runs the procedure against the strict structure A only.
Decision decide(const RelationalStructure& a, const Instance& instance, DecideOptions options = {});
/// Same as above; B is never consulted.
Decision decide(const PromiseTemplate& tmpl, const Instance& instance, DecideOptions options = {});

/// "ACCEPT", "REJECT(lp)" or "REJECT(affine)".
std::string verdict_text(const Decision& decision);

}  // namespace pcsp
