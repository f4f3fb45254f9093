#include <doctest.h>

TEST_SUITE("quantize") {}
