#ifndef MOGD_PROBLEMS_HPP
#define MOGD_PROBLEMS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mogd/core.hpp"

namespace mogd {

/// Registry entry: a problem plus benchmark metadata.
struct ProblemSpec {
    BoxProblem problem;
    bool multimodal = false;
    std::string source;  // literature tag
};

/// Named benchmark problems.  Includes the Ackley/Levy/Rastrigin/Styblinski
/// pairs (AL1, AL2, LP1, LR1), the standard ZDT/DTLZ/MOP2 suite, and the two
/// synthetic escape tests GDTEST1/GDTEST2 whose global front strictly
/// dominates a second locally-efficient region.
const std::map<std::string, ProblemSpec>& registry();

/// Throws NotFoundError for unknown names.
const ProblemSpec& lookup(const std::string& name);

std::vector<std::string> problem_names();

/// `count` points sampled evenly from the analytic front parameterization;
/// nullopt when no closed-form front is known (AL1/AL2/LP1/LR1).
std::optional<std::vector<Vec>> true_front_sample(const ProblemSpec& spec, int count);

// GDTEST geometry constants, shared with the certification tests.
//
// GDTEST1: f = (z^2 + W(z), (z - 2.5)^2 + W(z)) with the equal-level ripple
// W(z) = 2(1 - cos(4 pi z)) on [-0.5, 7.5].  Ripple wedges east of 2.5 are
// locally weak efficient and strictly dominated by the wedges inside
// [0, 2.5]; escapes hop wedge by wedge toward the global front.
//
// GDTEST2: f = (x1 (1+q), (1-x1)(1+q)) with the multi-level distance ripple
// q(x2) = 2(x2^2 + 1 - cos(6 pi x2)) on [0,1] x [-1,1].  x1 parameterizes
// the front (f1 + f2 = 1 at q = 0); wells of q at nonzero levels carry the
// dominated local fronts.
namespace gdtest {
constexpr double kRippleAmp = 2.0;        // GDTEST1 ripple amplitude
constexpr double kRippleFreq = 4.0;       // ... times pi, i.e. period 0.5
constexpr double kWellOffset = 2.5;       // second objective's parabola well
constexpr double kBox1Lo = -0.5;
constexpr double kBox1Hi = 7.5;
constexpr double kDistAmp = 2.0;          // GDTEST2 distance-ripple scale
constexpr double kDistFreq = 6.0;         // ... times pi, i.e. wells at k/3
}  // namespace gdtest

}  // namespace mogd

#endif
