#include "stewart/cli.hpp"

int main(int argc, char** argv) {
    return stewart::run_cli(argc, argv);
}
