#include "ltlab/primes.hpp"

#include <limits>
#include <stdexcept>

namespace ltlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f <= n / f; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i <= hi; ++i) {
    if (composite[i]) continue;
    if (i >= lo) out.push_back(i);
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("ipow overflow");
    }
    r *= base;
  }
  return r;
}

}  // namespace ltlab
