#include "lfq/random.hpp"

namespace lfq {

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_index),
                    static_cast<std::uint32_t>(stream_index >> 32),
                    0x9e3779b9u};
  engine_.seed(seq);
}

StreamSeeds StreamSeeds::child(std::string_view label) const {
  // Children are spaced 2^40 apart so replication counters never collide.
  const std::uint64_t slot = fnv1a(label) & 0xffffffULL;
  return StreamSeeds(master_, base_ + ((slot + 1) << 40));
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace lfq
