#include <cstdio>

#include "frontlab/frontlab.hpp"

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::puts("frontlab: placeholder");
    return 0;
}
