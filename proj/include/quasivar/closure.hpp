#pragma once

#include <vector>

#include "quasivar/algebra.hpp"
#include "quasivar/congruence.hpp"

namespace qv {

// Subalgebra of the product of `coords` generated by `seeds`, built without materialising the
// product. Element order: distinct seeds, then constants, then discovery order.
struct GeneratedProduct {
    FiniteAlgebra algebra;
    std::size_t width = 0;
    std::vector<Elem> tuples;      // row-major, width entries per element
    std::vector<Elem> seed_index;  // element index of each seed

    Elem coordinate(Elem x, std::size_t i) const { return tuples[x * width + i]; }
};

GeneratedProduct generate_in_product(Signature const& sig,
                                     std::vector<FiniteAlgebra const*> const& coords,
                                     std::vector<std::vector<Elem>> const& seeds,
                                     std::size_t carrier_guard, Kernel kernel = Kernel::Parallel);

void set_thread_count(int threads);

}  // namespace qv
