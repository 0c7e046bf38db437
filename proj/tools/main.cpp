#include <string>
#include <vector>

#include "prodplan/cli.hpp"

int main(int argc, char** argv) {
    return prodplan::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
