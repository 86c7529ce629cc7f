#include "renyi/error.hpp"
