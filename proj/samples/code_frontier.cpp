// Explicit (k,n) codes from the pentagon's square into bits and back.
#include <iostream>

#include "irkit/code.hpp"
#include "irkit/expr.hpp"

int main()
{
    using namespace irkit;
    Graph c5 = parse_graph("C(5)");
    Graph bits = parse_graph("Kbar(2)");

    // C5^2 has 5 pairwise distinguishable words, enough for 2 bits: a (2,2) code.
    auto fr = ratio_frontier(bits, c5, 3, 2);
    for (const auto& cell : fr.cells)
        std::cout << "(" << cell.k << "," << cell.n << ") " << to_string(cell.status) << (cell.inferred ? " inferred" : "")
                  << "\n";
    if (fr.best) std::cout << "best certified rate " << fr.best->get_str() << "\n";

    auto code = find_code(bits, c5, 2, 2);
    if (code.code) {
        std::cout << "code Kbar(2)^2 -> C(5)^2:";
        for (auto y : code.code->map) std::cout << ' ' << y;
        std::cout << (verify_code(*code.code) ? "  verified" : "  rejected") << "\n";
    }
}
