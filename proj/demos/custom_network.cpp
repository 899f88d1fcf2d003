// Builds a small network element by element, prints its canonical JSON and
// the two-particle output statistics (a Hong-Ou-Mandel dip at zero phase).
#include <cstdio>
#include <iostream>
#include <numbers>

#include "fockbell/fockbell.hpp"

int main(int argc, char** argv) {
  using namespace fockbell;
  const double phase = argc > 1 ? std::atof(argv[1]) : 0.0;
  const double h = std::numbers::sqrt2 / 2;
  const ModeId a{0, "a"}, b{1, "b"};
  const NetworkDescription net{
      {phase_shifter_element(phase, a), beamsplitter_element(h, h, 0.0, a, b)}, {a, b}, {a, b}};
  std::cout << to_json(net).dump(2) << "\n";
  write_csv(std::cout, distribution(compose_network(net), {{1, 1}}));
}
