#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ldakit/model.hpp"

namespace ldakit {

// One digamma fixed-point step for an asymmetric Dirichlet over the
// per-document topic counts:
//   alpha_t <- alpha_t * sum_d [psi(n_td + alpha_t) - psi(alpha_t)]
//                      / sum_d [psi(N_d + A) - psi(A)],   A = sum_t alpha_t
// `doc_topic` is D x k row-major. Returns nullopt when the step would leave
// any alpha non-positive or non-finite.
std::optional<std::vector<double>> alpha_fixed_point_step(std::span<const Count> doc_topic,
                                                          std::span<const std::size_t> doc_lengths,
                                                          std::span<const double> alpha);

// Applies one step to the model's alpha (beta untouched). On failure the
// previous alpha is kept, a warning is logged and false is returned.
bool optimize_alpha(TopicModel& model);

}  // namespace ldakit
