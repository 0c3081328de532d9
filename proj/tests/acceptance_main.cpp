#include <iostream>

#include "halfint/acceptance.hpp"

int main() { return halfint::acceptance::run_full(std::cout); }
