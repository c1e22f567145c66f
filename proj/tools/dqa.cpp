// Command line entry point; subcommands are wired up in cli.hpp once the
// pipeline layers exist.
#include <iostream>

#include "dqa/quiver.hpp"

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::cout << "dqa\n";
  return 0;
}
