#include <foliage/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return foliage::cli::run(args, std::cin, std::cout, std::cerr);
}
