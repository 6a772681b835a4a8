#pragma once

#include "workbench.hpp"
