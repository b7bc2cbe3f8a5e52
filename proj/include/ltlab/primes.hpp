#pragma once

#include <cstdint>
#include <vector>

namespace ltlab {

bool is_prime(std::uint64_t n);

/// All primes p with lo <= p <= hi, ascending (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace ltlab
