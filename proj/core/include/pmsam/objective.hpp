#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pmsam/random.hpp"

namespace pmsam {

/// A point in the search space, one coordinate per problem dimension.
using Position = std::vector<double>;

enum class Sense { minimize, maximize };

/// A box-constrained objective function plus its metadata.
///
/// Descriptors are immutable after construction; evaluation is safe from any
/// number of threads as long as each caller owns its own RandomStream.
struct ObjectiveDescriptor {
    std::string id;
    int dimension = 30;
    double lower = 0.0;  ///< per-coordinate lower bound (closed)
    double upper = 0.0;  ///< per-coordinate upper bound (closed)
    double known_min = 0.0;
    bool stochastic = false;  ///< true when evaluation draws noise from the stream
    Sense sense = Sense::minimize;
    /// Raw objective. The stream pointer is null for noise-free evaluation;
    /// deterministic functions ignore it.
    std::function<double(const Position&, RandomStream*)> fn;
};

/// Evaluates desc at p. Throws std::invalid_argument on dimension mismatch or
/// non-finite coordinates. For stochastic objectives the noise term is drawn
/// from rng once per call; passing nullptr forces the noise to zero.
double evaluate(const ObjectiveDescriptor& desc, const Position& p,
                RandomStream* rng = nullptr);

/// True iff lower <= p[j] <= upper for every coordinate (closed box).
bool is_feasible(const ObjectiveDescriptor& desc, const Position& p);

/// The twelve built-in benchmark functions f1..f12, all d=30 minimizations.
const std::vector<ObjectiveDescriptor>& builtin_suite();

/// Looks up a built-in or registered objective by id ("f1".."f12", ...).
/// Returns nullptr when the id is unknown.
const ObjectiveDescriptor* find_objective(std::string_view id);

/// Registers a custom objective under desc.id. Throws std::invalid_argument
/// if the id collides with a built-in or an earlier registration.
void register_objective(ObjectiveDescriptor desc);

/// Internal score maximized by the engine: minimization problems are wrapped
/// as score = -f so the update formulas read as ascent everywhere.
inline double score_of(const ObjectiveDescriptor& desc, double raw) {
    return desc.sense == Sense::minimize ? -raw : raw;
}

/// True when raw objective value a beats b in the descriptor's sense.
inline bool better(const ObjectiveDescriptor& desc, double a, double b) {
    return score_of(desc, a) > score_of(desc, b);
}

} // namespace pmsam
