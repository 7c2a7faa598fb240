#pragma once

#include <span>
#include <string>
#include <vector>

#include "sharpfield/optimize.hpp"

namespace sharpfield::optimize::detail {

/// Allocation-free evaluation of the tightest tilt wedge. Points are read as
/// y = sa * x1 + ca * x2 (the reduced-frame second coordinate) and z = x3.
struct TiltEval {
  bool feasible = false;
  double n = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

TiltEval eval_tilt(double sin_psi, double cos_psi, double sa, double ca, std::span<const Vec3> pts,
                   const DofParams& params);

/// Parallel-plane f-number on the depth extremes; infeasible if a point is not beyond f.
TiltEval eval_untilted(std::span<const Vec3> pts, const DofParams& params);

/// Evaluation at (theta, phi) through the reduction; phi = 0 is a pure tilt.
TiltEval eval_angles(double theta, double phi, std::span<const Vec3> pts, const DofParams& params);

/// Label built from the attained contact sets: groups ordered by size
/// (faces, then edges, then vertices), ties lexicographic.
ContactLabel label_from_sets(const std::vector<int>& a, const std::vector<int>& b);

bool is_subset(const std::vector<int>& small, const std::vector<int>& big);

/// Picks the better of two candidates: lower f-number, then |theta|, |phi|, label.
bool better(const ContactCandidate& a, const ContactCandidate& b);

/// Marks the candidate infeasible unless every point is inside its wedge.
void check_wedge(ContactCandidate& cand, std::span<const Vec3> pts, const DofParams& params);

/// Stores the best feasible candidate; throws AllInfeasible when there is none.
void pick_best(OptimizeReport& report);

void require_in_front(std::span<const Vec3> pts, double f);

}  // namespace sharpfield::optimize::detail
