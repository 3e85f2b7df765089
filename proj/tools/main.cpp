#include <string>
#include <vector>

#include "newscov/cli.hpp"

int main(int argc, char** argv) {
  return newscov::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
