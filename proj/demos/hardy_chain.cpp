// Walks the Hardy argument for growing N and prints each ingredient.
#include <cstdio>

#include "fockbell/fockbell.hpp"

int main() {
  using namespace fockbell;
  const auto net = build_hardy_network();
  std::printf("N,P(DD event),P(D3'|D2),P(D2'|D3),|C D'D'|,verdict\n");
  for (int n = 2; n <= 12; n += 2) {
    const auto c = impossibility_certificate(net, n);
    std::printf("%d,%.6e,%.12f,%.12f,%.3e,%s\n", n, c.nonzero_event_probability,
                c.certainties.bob_given_alice.value, c.certainties.alice_given_bob.value,
                c.forbidden_event_amplitude, c.verdict ? "true" : "false");
  }
}
