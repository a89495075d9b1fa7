#include "fracfilt/app.hpp"

#include <iostream>

int main(int argc, char **argv) { return fracfilt::run(argc, argv, std::cout, std::cerr); }
