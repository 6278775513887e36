#pragma once

#include <functional>
#include <vector>

#include "modec/cyclotomic.hpp"
#include "modec/rat.hpp"

namespace modec {

// Exact kernel of a linear system with coefficients in Q(zeta_N), computed by
// CRT over word-size primes with rational reconstruction. The result is only
// returned once `verify` (an exact check supplied by the caller) accepts it,
// so bad primes and reconstruction misses cannot leak through.
//
// unknowns_rational = true:  kernel over Q      (each row gives phi(N) mod-p rows)
// unknowns_rational = false: kernel over Q(zeta) (columns expand phi(N)-fold;
//                            returned vectors are reassembled cyclotomics)
std::vector<std::vector<Cyclo>> kernel_multimodular_cyclo(
    const std::vector<std::vector<Cyclo>>& rows, long cols, long N, bool unknowns_rational,
    const std::function<bool(const std::vector<std::vector<Cyclo>>&)>& verify, long max_primes = 48);

// Column indices forming a maximal independent subset of the given columns
// (each column a list of cyclotomic entries), certified by mod-p rank: a
// pivot set independent mod p is independent over Q. Columns beyond the
// mod-p rank may in rare cases be independent over Q (bad prime); the caller
// cross-checks the count against its expected dimension.
std::vector<long> independent_columns_modp(const std::vector<std::vector<Cyclo>>& columns, long N,
                                           int attempts = 2);

}  // namespace modec
