#pragma once

#include "sinr/affectance.hpp"
#include "sinr/capacity.hpp"
#include "sinr/errors.hpp"
#include "sinr/generator.hpp"
#include "sinr/independence.hpp"
#include "sinr/json_io.hpp"
#include "sinr/measures.hpp"
#include "sinr/model.hpp"
#include "sinr/power_control.hpp"
