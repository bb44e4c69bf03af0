#include <vector>

#include "gaitmatrix/cli.hpp"

int main(int argc, char** argv) {
  return gaitmatrix::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
