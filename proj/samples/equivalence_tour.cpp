// Equivalence, order and criticality on small examples.
#include <iostream>

#include "irkit/equivalence.hpp"

int main()
{
    using namespace irkit;
    Engine eng;
    for (auto [a, b] : {std::pair{"~KG(6,2)", "Kbar(3)"}, std::pair{"C(5)*C(5)", "Kbar(6)"}, std::pair{"C(5)", "C(5)^2"}}) {
        auto r = equivalence_check(eng, a, b);
        auto m = metric_eval(r.ab, r.ba);
        std::cout << a << " vs " << b << ": " << to_string(r.information) << ", weak " << to_string(r.weak)
                  << (r.incomparable() ? ", incomparable" : "") << ", d in [" << m.d.lo << ", " << m.d.hi << "]\n";
    }
    for (const char* f : {"~C(7)", "~W(9)", "C(4)"}) {
        auto r = criticality_check(eng, f);
        std::cout << f << ": " << (r.critical ? "critical" : "unknown");
        if (r.edge) std::cout << " (edge " << r.edge->first << "-" << r.edge->second << ")";
        std::cout << "\n";
    }
}
