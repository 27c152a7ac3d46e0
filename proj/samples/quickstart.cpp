// Minimal library usage: build a state, compute its discriminating strength two ways,
// and look at the Chernoff overlap against its worst-case rotation.
#include <iostream>
#include <numbers>

#include "dstrength/dstrength.hpp"

int main() {
    using namespace dstrength;
    const double lambda = std::numbers::pi / 3;
    const BipartiteState rho = gb92_state(1.0 / 3, 1.0 / 3, 1.0 / 3);

    const DsResult closed = ds_qubit_qudit(rho, lambda);
    OptimizerOptions opts;
    opts.force_general = true;
    opts.seed = 1;
    const DsResult searched = ds_general(rho, Spectrum::symmetric(2, lambda), opts);

    const ChernoffResult q = rotated_overlap(rho, closed.optimal_hamiltonian);
    std::cout << "closed form DS     " << closed.value << '\n'
              << "optimizer DS       " << searched.value << '\n'
              << "Q at optimal H     " << q.q << " (s* = " << q.s_star << ")\n";
}
