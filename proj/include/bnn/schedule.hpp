#ifndef BNN_SCHEDULE_HPP
#define BNN_SCHEDULE_HPP

#include <cstdint>

#include "bnn/fixed_prob.hpp"

namespace bnn {

// Cosine-annealed flip probability with warm restarts every `period` steps:
// p(step) = p_min + (p_max - p_min) * (1 + cos(pi * t/T)) / 2, t = step mod T.
struct CosineSchedule {
    FixedProb p_min;
    FixedProb p_max;
    std::uint64_t period = 0;
};

// The annealing kernel for one point 0 <= t_cur <= t_i, evaluated in integer
// fixed point from a Q31 quarter-cosine table with linear interpolation.
// Exact at the endpoints: t_cur = 0 gives p_max, t_cur = t_i gives p_min.
FixedProb cosine_flip_prob(std::uint64_t t_cur, std::uint64_t t_i, FixedProb p_min,
                           FixedProb p_max);

FixedProb flip_schedule(std::uint64_t step, const CosineSchedule& sched);

} // namespace bnn

#endif
