#include <iostream>

#include "tracecity/scene_service.hpp"

int main(int argc, char** argv) { return tracecity::run_cli(argc, argv, std::cout, std::cerr); }
