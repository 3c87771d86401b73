#pragma once

#include <string>
#include <vector>

#include "fsq/digit_set.hpp"

namespace fsq {

// Eventually periodic address: preperiod followed by period repeated forever.
// Produced addresses are in minimal form (shortest period, shortest preperiod).
struct Address {
    std::vector<Cell> preperiod;
    std::vector<Cell> period;

    friend bool operator==(const Address&, const Address&) = default;
    friend auto operator<=>(const Address& a, const Address& b) {
        if (auto c = a.preperiod <=> b.preperiod; c != 0) {
            return c;
        }
        return a.period <=> b.period;
    }

    // "(1,0)(0,1)[(2,1)]": preperiod, then the period in brackets.
    std::string str() const;
};

// All addresses of p under the digit set, via the residual automaton
// r -> n r - d. Empty when p is not in K. Throws Unbounded when p has
// infinitely many addresses.
std::vector<Address> point_addresses(const Point& p, const DigitSet& d);

// Exact point with the given address.
Point address_point(const Address& a, const DigitSet& d);

}  // namespace fsq
