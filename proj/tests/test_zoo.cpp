#include <doctest.h>

TEST_SUITE("zoo") {}
