#include <doctest.h>

TEST_SUITE("nuclearity") {}
