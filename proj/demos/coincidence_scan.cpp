// Two condensates, one particle each: coincidence probability P(0,1,0,1)
// against the phase sum, quantum versus a pre-existing random phase.
#include <cstdio>
#include <numbers>

#include "fockbell/fockbell.hpp"

int main() {
  using namespace fockbell;
  const SourceSpec s{{1, 1}};
  const Counts m{0, 1, 0, 1};
  const auto grid = QuadratureGrid::for_particles(2);
  std::printf("sum,p_quantum,p_classical\n");
  for (int k = 0; k <= 16; ++k) {
    const double sum = 2.0 * std::numbers::pi * k / 16;
    const AngleSettings a{sum / 2, sum / 2, {}};
    const double pq = distribution(two_source_interferometer(a.zeta, a.theta), s).probability(m);
    const double pc = classical_phase_probability(s, a, m, grid);
    std::printf("%.6f,%.12f,%.12f\n", sum, pq, pc);
  }
}
