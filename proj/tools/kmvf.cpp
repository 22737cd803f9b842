#include "kmvf/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
	return kmvf::run_main(argc, argv, std::cout, std::cerr);
}
