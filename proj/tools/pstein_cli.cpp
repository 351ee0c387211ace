#include "pstein/version.hpp"

#include <cstdio>

int main() {
    std::printf("pstein %s\n", pstein::kVersion);
    return 0;
}
