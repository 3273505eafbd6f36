#pragma once

#include "verlagerung/catalog.hpp"
#include "verlagerung/theorems.hpp"
