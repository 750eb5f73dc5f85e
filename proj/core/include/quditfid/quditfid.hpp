#pragma once

#include "quditfid/error.hpp"
#include "quditfid/fidelity.hpp"
#include "quditfid/linalg.hpp"
#include "quditfid/properties.hpp"
#include "quditfid/states.hpp"
