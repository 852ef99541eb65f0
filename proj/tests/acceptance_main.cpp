// Runs every acceptance criterion; one line per criterion.

#include <iostream>

#include "transfer/acceptance.hpp"

int main() { return transfer::acceptance::run_suite(transfer::acceptance::criteria_for("full"), std::cout); }
