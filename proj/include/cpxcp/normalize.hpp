#pragma once

#include "cpxcp/engine.hpp"

#include <random>
#include <variant>

namespace cpxcp {

/// Generator changes used by the classification; every move is invertible and
/// preserves the underlying group.
struct GeneratorMove {
    enum class Kind {
        XTimesCentral,  // x -> x * v
        YTimesCentral,  // y -> y * v
        XTimesYPow,     // x -> x * y^n
        YTimesXPow,     // y -> x^m * y
        XPow,           // x -> x^c, gcd(c, p) = 1
        YPow,           // y -> y^c, gcd(c, p) = 1
        Swap,           // x <-> y
    };
    Kind kind;
    Int n;             // exponent for the power/mixing moves
    CentralVector v;   // for the central moves

    static GeneratorMove x_times_central(CentralVector v) {
        return {Kind::XTimesCentral, 0, std::move(v)};
    }
    static GeneratorMove y_times_central(CentralVector v) {
        return {Kind::YTimesCentral, 0, std::move(v)};
    }
    static GeneratorMove x_times_y_pow(Int n) { return {Kind::XTimesYPow, std::move(n), {}}; }
    static GeneratorMove y_times_x_pow(Int m) { return {Kind::YTimesXPow, std::move(m), {}}; }
    static GeneratorMove x_pow(Int c) { return {Kind::XPow, std::move(c), {}}; }
    static GeneratorMove y_pow(Int c) { return {Kind::YPow, std::move(c), {}}; }
    static GeneratorMove swap() { return {Kind::Swap, 0, {}}; }
};

struct InvalidMove : std::invalid_argument {
    explicit InvalidMove(const std::string& w) : std::invalid_argument(w) {}
};

/// One step of a normalization transcript: either a generator change or a
/// change of basis of the center (new generators in old coordinates).
struct RebaseStep {
    std::vector<std::pair<std::string, CentralVector>> gens;
};

struct SplitStep {
    std::string factor;  // split-off central factor (by name, pre-split basis)
};

using TranscriptStep = std::variant<GeneratorMove, RebaseStep, SplitStep>;

struct Transcript {
    std::vector<TranscriptStep> steps;

    void append(const Transcript& o) {
        steps.insert(steps.end(), o.steps.begin(), o.steps.end());
    }
};

/// Rebases the center so every factor is a p-power, coprime to p, or
/// infinite (mixed finite orders are split), and the first factor t_1
/// satisfies s = t_1^{p^{m1-1}} with o(t_1) = p^{m1}.
GroupPresentation locate_t1(const GroupPresentation& pres, Transcript* transcript = nullptr);

/// Multiplies x and y by central elements so that the p-part and free
/// coordinates of x^p and y^p lie in {0..p-1} and the coprime-torsion
/// coordinates vanish. Requires locate_t1 form; idempotent; s unchanged.
GroupPresentation reduce_pth_powers(const GroupPresentation& pres,
                                    Transcript* transcript = nullptr);

/// Applies a generator move, recomputing s, x^p, y^p through the engine, then
/// re-runs locate_t1 so the commutator stays in t_1-power form.
GroupPresentation apply_move(const GroupPresentation& pres, const GeneratorMove& move,
                             Transcript* transcript = nullptr);

/// The move alone, without the locate_t1 renormalization; transcripts replay
/// through this primitive.
GroupPresentation apply_move_raw(const GroupPresentation& pres, const GeneratorMove& move,
                                 Transcript* transcript = nullptr);

/// Applies a verified center rebase to the presentation's words.
GroupPresentation apply_rebase(const GroupPresentation& pres, const Rebase& rb,
                               Transcript* transcript = nullptr);

/// Replays a transcript (moves and rebases) against a presentation.
GroupPresentation replay(const GroupPresentation& pres, const Transcript& t);

/// Random valid generator move / center basis change, for scramble testing.
GeneratorMove random_move(const GroupPresentation& pres, std::mt19937_64& rng);
GroupPresentation random_center_change(const GroupPresentation& pres, std::mt19937_64& rng);
GroupPresentation scramble(const GroupPresentation& pres, std::mt19937_64& rng, int steps);

}  // namespace cpxcp
