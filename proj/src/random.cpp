#include "gridlab/random.hpp"

#include <cmath>

namespace gridlab {

Representation random_unit_arrangement(int n, std::mt19937_64& rng, int denominator) {
    Representation rep;
    const int span = denominator * (1 + static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
    std::uniform_int_distribution<int> pos(0, span);
    std::bernoulli_distribution horizontal(0.5);
    while (rep.size() < n) {
        Rational x(pos(rng), denominator);
        Rational y(pos(rng), denominator);
        rep.segments.push_back(horizontal(rng) ? Segment::horizontal(x, y) : Segment::vertical(x, y));
        if (!validate(rep).empty()) rep.segments.pop_back();
    }
    return rep;
}

}  // namespace gridlab
