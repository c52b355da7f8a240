#include "clipcone/sampling.hpp"

#include <random>

#include "clipcone/errors.hpp"

namespace clipcone {

std::vector<IntVec> box_samples(long dim, long count, long box, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-box, box);
    std::vector<IntVec> out;
    out.reserve(static_cast<size_t>(count));
    for (long k = 0; k < count; ++k) {
        IntVec v(dim);
        for (long i = 0; i < dim; ++i) v[i] = Int(coord(rng));
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<RatVec> predicate_samples(const std::function<bool(const RatVec&)>& inside,
                                      const RatVec& base, long count, long box,
                                      unsigned long seed) {
    if (!inside(base))
        throw PreconditionFailure("sampling base point does not satisfy the predicate");
    const long dim = base.size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-box, box);
    std::vector<RatVec> out;
    out.reserve(static_cast<size_t>(count));
    for (long k = 0; k < count; ++k) {
        RatVec delta(dim);
        for (long i = 0; i < dim; ++i) delta[i] = Rat(coord(rng));
        Rat m(1);
        for (int doubling = 0;; ++doubling) {
            if (doubling > 40)
                throw IterationCap("sample multiplier exceeded 2^40; base point is not stably interior");
            RatVec x = (m * base + delta).eval();
            if (inside(x)) {
                out.push_back(std::move(x));
                break;
            }
            m *= 2;
        }
    }
    return out;
}

}  // namespace clipcone
