#include "cli_app.hpp"

#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::ostringstream out;
  std::ostringstream err;
  const int code = locglob::cli::run(args, out, err);
  std::cout << out.str();
  std::cerr << err.str();
  return code;
}
