// Certified bounds for a few pairs built from the pentagon, with their certificates replayed.
#include <iostream>

#include "irkit/ratio.hpp"
#include "irkit/verify.hpp"

int main()
{
    irkit::Engine eng;
    const char* pairs[][2] = {
        {"C(5)", "C(5)"},      // identity code meets the fractional clique cover bound
        {"Kbar(2)", "C(5)"},   // bits over the pentagon: log of its capacity
        {"C(5)", "C(5)^2"},    // powers of one graph
        {"C(5)", "C(5)+C(5)"}, // two copies of the channel
    };
    for (auto& p : pairs) {
        auto rb = eng.bounds(p[0], p[1]);
        auto check = irkit::verify_bounds(rb);
        std::cout << "Ir(" << rb.channel << " / " << rb.source << ") in [" << rb.lower->value.str() << ", "
                  << rb.upper->value.str() << "]  ~ " << rb.lower->value.approx()
                  << (check.ok ? "  (certificates verified)" : "  (verification failed: " + check.error + ")") << "\n";
    }
}
