#pragma once

// Sign bookkeeping for the alternating conventions of the tower.
// Every formula with a "+-" that depends on the degree goes through here.

namespace coplanar::parity {

// (-1)^n
constexpr int pm(int n) { return (n % 2 == 0) ? 1 : -1; }

// Exponent of the p-th label (1-based) in an alternating loop weight:
// +1, -1, +1, ...
constexpr int position_exponent(int p) { return (p % 2 == 1) ? 1 : -1; }

constexpr bool is_even(int n) { return n % 2 == 0; }

}  // namespace coplanar::parity
