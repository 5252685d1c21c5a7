#include <iostream>

#include "cbdiscrim/cli.h"

int main(int argc, char **argv) {
    return cbd::run_cli(argc, argv, std::cout, std::cerr);
}
